#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "sqz/experiment.hpp"
#include "sqz/kernels.hpp"
#include "sqz/scenarios.hpp"

using namespace sqz;
using doctest::Approx;

namespace {

double noise_db_at(const Pipeline& p, double f) { return 10.0 * std::log10(noise_sweep(p, std::vector<double>{f})[0]); }

double oracle_db(const Pipeline& p, double f) { return 10.0 * std::log10(oracle::chain_noise(p, f)); }

}  // namespace

TEST_CASE("sweep config") {
  const std::vector<double> f = SweepConfig{}.frequencies();
  REQUIRE(f.size() == 500);
  CHECK(f.front() == 2e6);
  CHECK(f.back() == 16e6);
  CHECK(std::is_sorted(f.begin(), f.end()));
  CHECK_THROWS_AS((SweepConfig{2e6, 16e6, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SweepConfig{16e6, 2e6, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SweepConfig{0.0, 2e6, 10}.validate()), std::invalid_argument);
}

TEST_CASE("vacuum input reads shot noise everywhere") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Pipeline p = oracle::random_pipeline(rng, false);
    const std::vector<double> f = SweepConfig{1e5, 50e6, 37}.frequencies();
    for (const SpectrumRecord& r : noise_spectrum(p, f)) CHECK(std::abs(r.noise_rel_shot_db) < 1e-9);
  }
  for (const SpectrumRecord& r : noise_spectrum(make_scenario("fig2a").pipeline, SweepConfig{}))
    CHECK(r.noise_rel_shot_db == 0.0);
}

TEST_CASE("batched sweep agrees with the matrix route and the bounce-sum oracle") {
  oracle::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Pipeline p = oracle::random_pipeline(rng, true);
    std::vector<double> f(rng.integer(1, 13));
    for (double& x : f) x = rng.uniform(1e5, 40e6);
    for (const kernels::KernelTable* table : kernels::available_tables()) {
      const std::vector<double> batched = noise_sweep(p, f, *table);
      for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(batched[k] == Approx(detected_noise(p, f[k])).epsilon(1e-12));
        CHECK(batched[k] == Approx(oracle::chain_noise(p, f[k])).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("reference spectra") {
  const Pipeline full = make_scenario("fig2d").pipeline;
  SUBCASE("calibration anchor and the 14 MHz cross-check") {
    CHECK(oracle_db(full, 5e6) == Approx(-2.8).epsilon(1e-4));
    CHECK(oracle_db(full, 14e6) == Approx(-2.0).epsilon(0.2));
  }
  SUBCASE("fig2d stays below shot noise with a hump at 10 MHz") {
    const auto records = noise_spectrum(full, SweepConfig{});
    for (const SpectrumRecord& r : records) CHECK(r.noise_rel_shot_db < 0.0);
    CHECK(noise_db_at(full, 10e6) > noise_db_at(full, 5e6));
    CHECK(noise_db_at(full, 10e6) > noise_db_at(full, 9e6));
    CHECK(noise_db_at(full, 10e6) > noise_db_at(full, 11e6));
  }
  SUBCASE("fig2b rises above shot noise near the SRC detuning") {
    const Pipeline src_only = make_scenario("fig2b").pipeline;
    const std::vector<double> band = SweepConfig{8e6, 12e6, 401}.frequencies();
    const std::vector<double> n = noise_sweep(src_only, band);
    CHECK(*std::max_element(n.begin(), n.end()) > 1.0);
    CHECK(noise_db_at(src_only, 5e6) < 0.0);
    CHECK(oracle_db(src_only, 10e6) > 0.0);
  }
  SUBCASE("fig2c is squeezed far from the detuning") {
    const Pipeline fc_only = make_scenario("fig2c").pipeline;
    CHECK(noise_db_at(fc_only, 3e6) < 0.0);
    CHECK(noise_db_at(fc_only, 10e6) > noise_db_at(fc_only, 3e6));
  }
  SUBCASE("wrong filter cavity sign raises the noise at the SRC detuning") {
    Pipeline flipped = full;
    std::get<CavityStage>(flipped.stages[*flipped.find("fc")]).spec.detuning = +10e6;
    CHECK(noise_db_at(flipped, 10e6) > noise_db_at(full, 10e6));
  }
}

TEST_CASE("signal transfer") {
  const Pipeline p = make_scenario("fig3").pipeline;
  REQUIRE(p.signal);
  const CavitySpec src = std::get<CavityStage>(p.stages[*p.find("src")]).spec;
  const double downstream = 0.95 * 0.93;

  SUBCASE("matches the bounce-sum transmission") {
    for (double f : {2e6, 7.5e6, 10e6, 10.7e6, 15e6}) {
      const double expect =
          downstream * std::norm(oracle::bounce_transmission(src.r_in, src.r_end, src.round_trip_loss, src.length,
                                                             src.detuning, f, 3000)) / 2.0;
      CHECK(signal_transfer(p, f, 1.0) == Approx(expect).epsilon(1e-10));
      CHECK(signal_transfer(p, f, 2.0) == Approx(4.0 * expect).epsilon(1e-10));
    }
  }
  SUBCASE("peak and width") {
    const auto power = [&](double f) { return signal_transfer(p, f, 1.0); };
    CHECK(oracle::scan_argmax(power, 5e6, 15e6, 10001) == Approx(10e6).epsilon(1e-4));
    const double fwhm = oracle::scan_fwhm(power, 5e6, 15e6, 100001);
    CHECK(fwhm == Approx(cavity_linewidth(src)).epsilon(1e-3));
    CHECK(fwhm == Approx(2.1e6).epsilon(0.2));
  }
  SUBCASE("zero amplitude gives zero power") { CHECK(signal_transfer(p, 10e6, 0.0) == 0.0); }
  SUBCASE("batched sweep") {
    const std::vector<double> f = SweepConfig{5e6, 15e6, 101}.frequencies();
    for (const kernels::KernelTable* table : kernels::available_tables()) {
      const std::vector<double> s = signal_sweep(p, f, *table);
      for (std::size_t k = 0; k < f.size(); ++k) CHECK(s[k] == Approx(signal_transfer(p, f[k], 1.0)).epsilon(1e-12));
    }
  }
  SUBCASE("independent of the squeezer") {
    const std::vector<double> f = SweepConfig{}.frequencies();
    const std::vector<double> base = signal_sweep(p, f);
    CHECK(signal_sweep(with_pump(p, 0.0), f) == base);
    CHECK(signal_sweep(with_pump(p, 0.9), f) == base);
    CHECK(signal_sweep(with_vacuum_input(p), f) == base);
  }
  SUBCASE("no signal node is a usage error") {
    CHECK_THROWS_AS(signal_transfer(make_scenario("fig2d").pipeline, 10e6, 1.0), UsageError);
    CHECK_THROWS_AS(signal_sweep(make_scenario("fig2d").pipeline, std::vector<double>{1e6}), UsageError);
  }
}

TEST_CASE("SNR") {
  const Pipeline p = make_scenario("fig3").pipeline;
  const std::vector<double> f = SweepConfig{}.frequencies();
  for (const SnrPoint& s : snr_points(p, f)) {
    CHECK(s.improvement_db == Approx(-s.noise_rel_shot_db).epsilon(1e-9));
    CHECK(s.snr_db - s.snr_vacuum_db == Approx(s.improvement_db).epsilon(1e-9));
  }
  const std::vector<double> anchors{5e6, 14e6};
  const auto pts = snr_points(p, anchors);
  CHECK(pts[0].improvement_db == Approx(2.8).epsilon(1e-4));
  CHECK(pts[1].improvement_db == Approx(2.0).epsilon(0.2));
  for (const SnrPoint& s : snr_points(with_pump(p, 0.0), f)) CHECK(std::abs(s.improvement_db) < 1e-12);

  const auto records = snr_spectrum(p, f);
  REQUIRE(records.size() == f.size());
  for (const SpectrumRecord& r : records) {
    REQUIRE(r.signal_power);
    REQUIRE(r.snr_db);
  }
  Pipeline silent = p;
  silent.signal->amplitude = 0.0;
  for (const SpectrumRecord& r : snr_spectrum(silent, anchors)) {
    CHECK(*r.signal_power == 0.0);
    CHECK_FALSE(r.snr_db);
  }
}

TEST_CASE("pump calibration") {
  const Pipeline p = without_stages(reference_pipeline(), {});
  Pipeline unsignalled = p;
  unsignalled.signal.reset();

  SUBCASE("matches an independent scan over the pump") {
    const double x = calibrate_pump(unsignalled, -2.8, 5e6);
    const double scanned = oracle::scan_crossing(
        [&](double pump) { return oracle_db(with_pump(unsignalled, pump), 5e6); }, -2.8, 0.0, 0.9, 901);
    CHECK(x == Approx(scanned).epsilon(1e-3));
    CHECK(x == Approx(0.316).epsilon(0.01));
    CHECK(noise_db_at(with_pump(unsignalled, x), 5e6) == Approx(-2.8).epsilon(1e-4 / 2.8));
    CHECK(x == Approx(calibrated_pump()).epsilon(1e-12));
  }
  SUBCASE("bundled netlist carries the calibrated pump") {
    CHECK(p.source()->spec.pump_x == Approx(calibrated_pump()).epsilon(1e-5));
  }
  SUBCASE("zero target needs no pump") { CHECK(calibrate_pump(unsignalled, 0.0, 5e6) == 0.0); }
  SUBCASE("unreachable target reports the bound") {
    Pipeline lossy;
    lossy.stages = {OpaStage{"opa", {0.1, 1e15, 1.0}}, LossStage{"l", {0.65, ""}}, HomodyneStage{"hd", {0.0, 1.0}}};
    try {
      calibrate_pump(lossy, -10.0, 5e6);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(e.bound() == Approx(10.0 * std::log10(0.35)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(calibrate_pump(unsignalled, -10.0, 5e6), InfeasibleError);
    CHECK_THROWS_AS(calibrate_pump(unsignalled, 1.0, 5e6), InfeasibleError);
  }
  SUBCASE("squeezing grows strictly with the pump where the rotation is compensated") {
    for (double f : {2e6, 5e6, 14e6}) {
      double previous = noise_db_at(with_pump(unsignalled, 0.0), f);
      for (int i = 1; i < 100; ++i) {
        const double current = noise_db_at(with_pump(unsignalled, 0.99 * i / 99.0), f);
        CHECK(current < previous);
        previous = current;
      }
    }
    oracle::Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      Pipeline flat;
      flat.stages = {OpaStage{"opa", {0.0, rng.uniform(1e6, 1e8), rng.uniform(0.05, 1.0)}},
                     LossStage{"l", {rng.uniform(0.05, 1.0), ""}}, HomodyneStage{"hd", {0.0, rng.uniform(0.05, 1.0)}}};
      const double f = rng.uniform(1e5, 5e7);
      double previous = 0.0;
      for (int i = 1; i < 100; ++i) {
        const double current = noise_db_at(with_pump(flat, 0.999 * i / 99.0), f);
        CHECK(current < previous);
        previous = current;
      }
    }
  }
  SUBCASE("near the hump anti-squeezing takes over at high pump") {
    const double shallow = noise_db_at(with_pump(unsignalled, 0.99), 10e6);
    double deepest = 0.0;
    for (int i = 0; i <= 990; ++i) deepest = std::min(deepest, noise_db_at(with_pump(unsignalled, i / 1000.0), 10e6));
    CHECK(deepest < shallow);
    const double x = calibrate_pump(unsignalled, deepest + 0.05, 10e6);
    CHECK(noise_db_at(with_pump(unsignalled, x), 10e6) == Approx(deepest + 0.05).epsilon(1e-4));
    try {
      calibrate_pump(unsignalled, deepest - 0.05, 10e6);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(e.bound() == Approx(deepest).epsilon(1e-4));
    }
  }
  SUBCASE("needs a source") {
    CHECK_THROWS_AS(calibrate_pump(with_vacuum_input(unsignalled), -2.8, 5e6), UsageError);
  }
}

TEST_CASE("loss budget") {
  CHECK(loss_budget(10.0, 6.0) == Approx(0.167987).epsilon(1e-5));
  CHECK(loss_budget(10.0, 3.0) == Approx(0.445764).epsilon(1e-5));
  CHECK(loss_budget(6.0, 6.0) == 0.0);
  CHECK_THROWS_AS(loss_budget(3.0, 6.0), InfeasibleError);
  CHECK_THROWS_AS(loss_budget(10.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(loss_budget(-1.0, -2.0), std::domain_error);
  // The budget loss turns the input squeezing into exactly the target.
  oracle::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const double in = rng.uniform(0.5, 20.0), target = rng.uniform(0.1, in);
    const double eta = 1.0 - loss_budget(in, target);
    CHECK(10.0 * std::log10(eta * std::pow(10.0, -in / 10.0) + 1.0 - eta) == Approx(-target).epsilon(1e-9));
  }
}

TEST_CASE("efficiency chain") {
  CHECK(efficiency_product(reference_efficiency_chain()) == Approx(0.68144).epsilon(1e-5));
  CHECK(efficiency_product({{{"a", 1.0}, {"b", 1.0}}}) == 1.0);
  CHECK(efficiency_product({{{"a", 0.9}, {"b", 0.0}, {"c", 0.5}}}) == 0.0);
  const EfficiencyChain from_netlist = efficiency_chain(reference_pipeline());
  CHECK(from_netlist.factors.size() == 6);
  CHECK(efficiency_product(from_netlist) == Approx(efficiency_product(reference_efficiency_chain())).epsilon(1e-12));
}

TEST_CASE("scenarios") {
  CHECK(scenario_names() == std::vector<std::string>{"fig2a", "fig2b", "fig2c", "fig2d", "fig3"});
  CHECK_THROWS_AS(make_scenario("fig4"), UsageError);
  CHECK(make_scenario("fig2a").pipeline.source() == nullptr);
  CHECK_FALSE(make_scenario("fig2b").pipeline.find("fc"));
  CHECK(make_scenario("fig2b").pipeline.find("src"));
  CHECK_FALSE(make_scenario("fig2c").pipeline.find("src"));
  CHECK(make_scenario("fig2c").pipeline.find("fc"));
  CHECK(make_scenario("fig3").with_signal);
  CHECK_FALSE(make_scenario("fig2d").with_signal);
}
