#include "sqz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "sqz/netlist.hpp"
#include "sqz/scenarios.hpp"

namespace sqz::cli {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct SweepOptions {
  double f_min = 2e6;
  double f_max = 16e6;
  int points = 500;
  std::string format = "csv";
  std::string out_path;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--fmin", o.f_min, "first sweep frequency in Hz")->capture_default_str();
  cmd->add_option("--fmax", o.f_max, "last sweep frequency in Hz")->capture_default_str();
  cmd->add_option("--points", o.points, "number of sweep points")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()))
      ->capture_default_str();
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", o.out_path, "output file (default: standard output)");
}

class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SweepConfig sweep_of(const SweepOptions& o) {
  SweepConfig sweep{o.f_min, o.f_max, o.points};
  try {
    sweep.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(e.what());
  }
  return sweep;
}

int emit(const std::vector<SpectrumRecord>& records, const SweepOptions& o, std::ostream& out, std::ostream& err) {
  std::ostringstream text;
  if (o.format == "json") {
    write_json(records, text);
  } else {
    write_csv(records, text);
  }
  if (o.out_path.empty()) {
    out << text.str();
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot write '" << o.out_path << "'\n";
    return kExitInput;
  }
  file << text.str();
  return kExitOk;
}

int cmd_run(const std::string& netlist_path, const SweepOptions& o, const std::vector<double>& signal_at,
            std::ostream& out, std::ostream& err) {
  const SweepConfig sweep = sweep_of(o);
  std::ifstream file(netlist_path, std::ios::binary);
  if (!file) {
    err << "error: cannot read netlist '" << netlist_path << "'\n";
    return kExitInput;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();

  const netlist::ValidationResult loaded = netlist::load(buffer.str());
  for (const auto& d : loaded.diagnostics) err << netlist_path << ':' << d.format() << '\n';
  if (!loaded.pipeline) return kExitInput;
  const Pipeline& pipeline = *loaded.pipeline;

  if (!signal_at.empty()) {
    if (!pipeline.signal) {
      err << netlist_path << ": error: --signal-at needs a 'signal' declaration in the netlist\n";
      return kExitInput;
    }
    for (double f : signal_at) {
      if (!(f > 0.0)) throw UsageFailure("--signal-at frequencies must be positive");
    }
    return emit(snr_spectrum(pipeline, signal_at), o, out, err);
  }
  const std::vector<double> f = sweep.frequencies();
  return emit(pipeline.signal ? snr_spectrum(pipeline, f) : noise_spectrum(pipeline, f), o, out, err);
}

int cmd_scenario(const std::string& name, const SweepOptions& o, std::ostream& out, std::ostream& err) {
  const SweepConfig sweep = sweep_of(o);
  Scenario sc;
  try {
    sc = make_scenario(name);
  } catch (const UsageError& e) {
    throw UsageFailure(e.what());
  }
  const std::vector<double> f = sweep.frequencies();
  return emit(sc.with_signal ? snr_spectrum(sc.pipeline, f) : noise_spectrum(sc.pipeline, f), o, out, err);
}

int cmd_budget(double input_db, double target_db, std::ostream& out, std::ostream& err) {
  if (!(input_db > 0.0 && target_db > 0.0)) throw UsageFailure("--input-db and --target-db must be positive");
  try {
    const double loss = loss_budget(input_db, target_db);
    // One decimal, without a trailing ".0".
    const auto percent = [](double fraction) { return std::round(1000.0 * fraction) / 10.0; };
    char line[128];
    std::snprintf(line, sizeof line, "max loss %g %%\nmin efficiency %g %%\n", percent(loss), percent(1.0 - loss));
    out << line;
    return kExitOk;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << " (target " << target_db << " dB > input " << input_db << " dB)\n";
    return kExitInfeasible;
  }
}

int cmd_calibrate(const std::string& netlist_path, double target_db, double at, std::ostream& out,
                  std::ostream& err) {
  std::ifstream file(netlist_path, std::ios::binary);
  if (!file) {
    err << "error: cannot read netlist '" << netlist_path << "'\n";
    return kExitInput;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const netlist::ValidationResult loaded = netlist::load(buffer.str());
  for (const auto& d : loaded.diagnostics) err << netlist_path << ':' << d.format() << '\n';
  if (!loaded.pipeline) return kExitInput;
  if (loaded.pipeline->source() == nullptr) {
    err << netlist_path << ": error: calibration needs an opa at the head of the chain\n";
    return kExitInput;
  }
  try {
    const double x = calibrate_pump(*loaded.pipeline, target_db, at);
    out << "pump_x " << fmt9(x) << '\n';
    out << "efficiency " << fmt9(efficiency_product(efficiency_chain(*loaded.pipeline))) << '\n';
    return kExitOk;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

}  // namespace

void write_csv(std::span<const SpectrumRecord> records, std::ostream& out) {
  out << "frequency_hz,noise_rel_shot_db,signal_power,snr_db\n";
  for (const SpectrumRecord& r : records) {
    out << fmt9(r.frequency) << ',' << fmt9(r.noise_rel_shot_db) << ','
        << (r.signal_power ? fmt9(*r.signal_power) : "") << ',' << (r.snr_db ? fmt9(*r.snr_db) : "") << '\n';
  }
}

void write_json(std::span<const SpectrumRecord> records, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SpectrumRecord& r : records) {
    nlohmann::ordered_json j;
    j["frequency_hz"] = r.frequency;
    j["noise_rel_shot_db"] = r.noise_rel_shot_db;
    j["signal_power"] = r.signal_power ? nlohmann::ordered_json(*r.signal_power) : nlohmann::ordered_json(nullptr);
    j["snr_db"] = r.snr_db ? nlohmann::ordered_json(*r.snr_db) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum noise and signal transfer of a squeezed-light dual-recycled interferometer"};
  app.name(args.empty() ? "sqzifo" : args.front());
  app.require_subcommand(1);

  SweepOptions run_opts;
  std::string netlist_path;
  std::vector<double> signal_at;
  CLI::App* run_cmd = app.add_subcommand("run", "sweep a netlist and emit noise/SNR records");
  run_cmd->add_option("--netlist", netlist_path, "netlist file")->required();
  run_cmd->add_option("--signal-at", signal_at, "emit SNR records only at these signal frequencies (Hz)");
  add_sweep_options(run_cmd, run_opts);

  SweepOptions sc_opts;
  std::string scenario_name;
  CLI::App* sc_cmd = app.add_subcommand("scenario", "run a built-in scenario (fig2a fig2b fig2c fig2d fig3)");
  sc_cmd->add_option("name", scenario_name, "scenario name")->required();
  add_sweep_options(sc_cmd, sc_opts);

  double input_db = 0.0;
  double target_db = 0.0;
  CLI::App* budget_cmd = app.add_subcommand("budget", "largest tolerable loss for a squeezing goal");
  budget_cmd->add_option("--input-db", input_db, "generated squeezing in dB")->required();
  budget_cmd->add_option("--target-db", target_db, "squeezing to detect in dB")->required();

  std::string cal_netlist;
  double cal_target = kCalibrationTargetDb;
  double cal_at = kCalibrationFrequency;
  CLI::App* cal_cmd = app.add_subcommand("calibrate", "find the OPA pump for a detected noise level");
  cal_cmd->add_option("--netlist", cal_netlist, "netlist file")->required();
  cal_cmd->add_option("--target-db", cal_target, "detected noise relative to shot noise (dB)")->capture_default_str();
  cal_cmd->add_option("--at", cal_at, "frequency in Hz")->capture_default_str();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(netlist_path, run_opts, signal_at, out, err);
    if (*sc_cmd) return cmd_scenario(scenario_name, sc_opts, out, err);
    if (*budget_cmd) return cmd_budget(input_db, target_db, out, err);
    if (*cal_cmd) return cmd_calibrate(cal_netlist, cal_target, cal_at, out, err);
  } catch (const UsageFailure& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sqz::cli
