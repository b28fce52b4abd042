#include "sqz/experiment.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

namespace sqz {

namespace {

constexpr double kMaxPump = 1.0 - 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

kernels::CavityCoefficients coefficients(const CavitySpec& spec) {
  return {spec.r1(), spec.r2(), spec.t1() * spec.t2()};
}

/// e^{i·phi/2} for every frequency, phi the round-trip phase at sign·omega.
void half_phasors(const CavitySpec& spec, std::span<const double> omega, double sign, std::vector<double>& hc,
                  std::vector<double>& hs) {
  hc.resize(omega.size());
  hs.resize(omega.size());
  const double k = 2.0 * kPi * spec.length / kSpeedOfLight;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double half = k * (sign * omega[i] - spec.detuning);
    hc[i] = std::cos(half);
    hs[i] = std::sin(half);
  }
}

/// Product of scalar efficiencies after the named stage, detector included.
double downstream_efficiency(const Pipeline& pipeline, std::size_t from) {
  double eta = 1.0;
  for (std::size_t i = from + 1; i < pipeline.stages.size(); ++i) {
    if (const auto* loss = std::get_if<LossStage>(&pipeline.stages[i])) eta *= loss->spec.eta;
    if (const auto* hd = std::get_if<HomodyneStage>(&pipeline.stages[i])) eta *= hd->spec.quantum_efficiency;
  }
  return eta;
}

const CavityStage& signal_cavity(const Pipeline& pipeline, std::size_t& index) {
  if (!pipeline.signal) throw UsageError("pipeline declares no signal injection");
  const auto at = pipeline.find(pipeline.signal->node);
  if (!at || !std::holds_alternative<CavityStage>(pipeline.stages[*at])) {
    throw UsageError("signal node '" + pipeline.signal->node + "' is not a cavity in the chain");
  }
  index = *at;
  return std::get<CavityStage>(pipeline.stages[*at]);
}

double noise_db_at(const Pipeline& pipeline, double omega) {
  const double f[] = {omega};
  return to_decibel(noise_sweep(pipeline, f).front());
}

}  // namespace

void SweepConfig::validate() const {
  if (!(std::isfinite(f_min) && std::isfinite(f_max) && f_min > 0.0 && f_min < f_max)) {
    throw std::invalid_argument("sweep needs 0 < f_min < f_max");
  }
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
}

std::vector<double> SweepConfig::frequencies() const {
  validate();
  std::vector<double> f(static_cast<std::size_t>(points));
  const double span = f_max - f_min;
  for (int i = 0; i < points; ++i) f[i] = f_min + span * (static_cast<double>(i) / (points - 1));
  f.back() = f_max;
  return f;
}

SpectralCovariance propagate(const Pipeline& pipeline, double omega) {
  SpectralCovariance s = SpectralCovariance::vacuum();
  for (const Stage& stage : pipeline.stages) {
    std::visit(overloaded{
                   [&](const OpaStage& st) { s = opa_output_covariance(st.spec, omega); },
                   [&](const LossStage& st) { s = apply_scalar_loss(s, st.spec.eta); },
                   [&](const CavityStage& st) { s = apply_transfer(s, cavity_quadrature_transfer(st.spec, omega)); },
                   [&](const HomodyneStage&) {},
               },
               stage);
  }
  return s;
}

double detected_noise(const Pipeline& pipeline, double omega) {
  return homodyne_noise(propagate(pipeline, omega), pipeline.detector().spec);
}

std::vector<double> noise_sweep(const Pipeline& pipeline, std::span<const double> frequencies,
                                const kernels::KernelTable& table) {
  pipeline.check();
  const std::size_t n = frequencies.size();
  kernels::CovarianceBatch cov(n);
  std::vector<double> out(n, 1.0);
  std::vector<double> hc, hs, rp_re(n), rp_im(n), rm_re(n), rm_im(n), t_re(n), t_im(n);

  for (const Stage& stage : pipeline.stages) {
    std::visit(overloaded{
                   [&](const OpaStage& st) {
                     const kernels::OpaCoefficients c{st.spec.pump_x, 1.0 / st.spec.bandwidth,
                                                      st.spec.escape_efficiency};
                     table.opa_spectrum(c, frequencies, cov.s11, cov.s22);
                     std::fill(cov.s12_re.begin(), cov.s12_re.end(), 0.0);
                     std::fill(cov.s12_im.begin(), cov.s12_im.end(), 0.0);
                   },
                   [&](const LossStage& st) { table.scalar_loss(st.spec.eta, cov.view()); },
                   [&](const CavityStage& st) {
                     const auto c = coefficients(st.spec);
                     half_phasors(st.spec, frequencies, +1.0, hc, hs);
                     table.cavity_response(c, hc, hs, {rp_re, rp_im}, {t_re, t_im});
                     half_phasors(st.spec, frequencies, -1.0, hc, hs);
                     table.cavity_response(c, hc, hs, {rm_re, rm_im}, {t_re, t_im});
                     table.sideband_transfer({rp_re, rp_im}, {rm_re, rm_im}, cov.view());
                   },
                   [&](const HomodyneStage& st) {
                     const kernels::HomodyneCoefficients c{std::cos(st.spec.angle), std::sin(st.spec.angle),
                                                           st.spec.quantum_efficiency};
                     table.homodyne_project(c, cov.view(), out);
                   },
               },
               stage);
  }
  return out;
}

std::vector<SpectrumRecord> noise_spectrum(const Pipeline& pipeline, const SweepConfig& sweep) {
  const std::vector<double> f = sweep.frequencies();
  return noise_spectrum(pipeline, f);
}

std::vector<SpectrumRecord> noise_spectrum(const Pipeline& pipeline, std::span<const double> frequencies) {
  const std::vector<double> noise = noise_sweep(pipeline, frequencies);
  std::vector<SpectrumRecord> records(frequencies.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].frequency = frequencies[i];
    records[i].noise_rel_shot_db = to_decibel(noise[i]);
  }
  return records;
}

double signal_transfer(const Pipeline& pipeline, double omega, double amplitude) {
  std::size_t index = 0;
  const CavityStage& src = signal_cavity(pipeline, index);
  const double eta = downstream_efficiency(pipeline, index);
  return eta * std::norm(amplitude * cavity_transmission(src.spec, omega)) / 2.0;
}

std::vector<double> signal_sweep(const Pipeline& pipeline, std::span<const double> frequencies,
                                 const kernels::KernelTable& table) {
  std::size_t index = 0;
  const CavityStage& src = signal_cavity(pipeline, index);
  const double eta = downstream_efficiency(pipeline, index);
  const double amplitude = pipeline.signal->amplitude;

  const std::size_t n = frequencies.size();
  std::vector<double> hc, hs, r_re(n), r_im(n), t_re(n), t_im(n);
  half_phasors(src.spec, frequencies, +1.0, hc, hs);
  table.cavity_response(coefficients(src.spec), hc, hs, {r_re, r_im}, {t_re, t_im});

  std::vector<double> power(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = amplitude * t_re[i];
    const double im = amplitude * t_im[i];
    power[i] = eta * (re * re + im * im) / 2.0;
  }
  return power;
}

std::vector<SnrPoint> snr_points(const Pipeline& pipeline, std::span<const double> frequencies) {
  const std::vector<double> signal = signal_sweep(pipeline, frequencies);
  const std::vector<double> noise = noise_sweep(pipeline, frequencies);
  const std::vector<double> shot = noise_sweep(with_vacuum_input(pipeline), frequencies);
  std::vector<SnrPoint> out(frequencies.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    SnrPoint& p = out[i];
    p.frequency = frequencies[i];
    p.noise_rel_shot_db = to_decibel(noise[i]);
    p.signal_power = signal[i];
    if (signal[i] > 0.0) {
      p.snr_db = to_decibel(signal[i] / noise[i]);
      p.snr_vacuum_db = to_decibel(signal[i] / shot[i]);
      p.improvement_db = p.snr_db - p.snr_vacuum_db;
    }
  }
  return out;
}

std::vector<SpectrumRecord> snr_spectrum(const Pipeline& pipeline, std::span<const double> frequencies) {
  std::vector<SpectrumRecord> records;
  records.reserve(frequencies.size());
  for (const SnrPoint& p : snr_points(pipeline, frequencies)) {
    SpectrumRecord r{p.frequency, p.noise_rel_shot_db, p.signal_power, std::nullopt};
    if (p.signal_power > 0.0) r.snr_db = p.snr_db;
    records.push_back(r);
  }
  return records;
}

double calibrate_pump(const Pipeline& pipeline, double target_db, double at_frequency) {
  if (pipeline.source() == nullptr) throw UsageError("pump calibration needs an OPA at the chain head");
  constexpr double kTolDb = 1e-4;
  if (std::abs(target_db) <= kTolDb * 1e-3) return 0.0;
  if (target_db > 0.0) {
    throw InfeasibleError("calibration target must be a noise reduction (negative dB)", 0.0);
  }

  auto noise_at = [&](double x) { return noise_db_at(with_pump(pipeline, x), at_frequency); };

  // Detected squeezing usually deepens all the way to threshold, but an
  // uncompensated rotation lets anti-squeezing take over at high pump. Find
  // the deepest point first; bisection then runs on the monotone branch.
  constexpr int kGrid = 200;
  int best_index = kGrid;
  double bound = noise_at(kMaxPump);
  for (int i = 1; i < kGrid; ++i) {
    const double value = noise_at(kMaxPump * i / kGrid);
    if (value < bound) {
      bound = value;
      best_index = i;
    }
  }
  double x_best = kMaxPump;
  if (best_index < kGrid) {
    double a = kMaxPump * (best_index - 1) / kGrid;
    double b = kMaxPump * (best_index + 1) / kGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    while (b - a > 1e-12) {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if (noise_at(c) < noise_at(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    x_best = 0.5 * (a + b);
    bound = std::min(bound, noise_at(x_best));
  }
  if (target_db < bound) {
    std::ostringstream msg;
    msg << "target " << target_db << " dB at " << at_frequency << " Hz is below the reachable limit " << bound
        << " dB";
    throw InfeasibleError(msg.str(), bound);
  }

  double lo = 0.0;
  double hi = x_best;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = noise_at(mid);
    if (std::abs(value - target_db) < kTolDb * 1e-3) break;
    if (value > target_db) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return mid;
}

double loss_budget(double input_db, double target_db) {
  if (!(input_db > 0.0 && target_db > 0.0 && std::isfinite(input_db) && std::isfinite(target_db))) {
    throw std::domain_error("loss budget needs positive squeezing levels in dB");
  }
  if (target_db > input_db) {
    throw InfeasibleError("target squeezing exceeds the generated squeezing; no loss can be tolerated", 0.0);
  }
  const double generated = from_decibel(-input_db);
  const double wanted = from_decibel(-target_db);
  const double eta = (1.0 - wanted) / (1.0 - generated);
  return 1.0 - eta;
}

double efficiency_product(const EfficiencyChain& chain) {
  double product = 1.0;
  for (const auto& [label, eta] : chain.factors) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("efficiency '" + label + "' outside [0, 1]");
    product *= eta;
  }
  return product;
}

EfficiencyChain efficiency_chain(const Pipeline& pipeline) {
  EfficiencyChain chain;
  for (const Stage& stage : pipeline.stages) {
    std::visit(overloaded{
                   [&](const OpaStage& st) { chain.factors.emplace_back(st.name, st.spec.escape_efficiency); },
                   [&](const LossStage& st) { chain.factors.emplace_back(st.name, st.spec.eta); },
                   [&](const CavityStage&) {},
                   [&](const HomodyneStage& st) { chain.factors.emplace_back(st.name, st.spec.quantum_efficiency); },
               },
               stage);
  }
  return chain;
}

EfficiencyChain reference_efficiency_chain() {
  return {{{"escape", 0.90},
           {"isolator", 0.93},
           {"fc_modematch", 0.95},
           {"src_modematch", 0.97},
           {"homodyne_modematch", 0.95},
           {"quantum_efficiency", 0.93}}};
}

}  // namespace sqz
