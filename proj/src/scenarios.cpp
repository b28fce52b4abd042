#include "sqz/scenarios.hpp"

#include <algorithm>
#include <stdexcept>

#include "sqz/experiment.hpp"
#include "sqz/netlist.hpp"

namespace sqz {

namespace detail {
extern const std::string_view kReferenceNetlist;
}

std::string_view reference_netlist_text() { return detail::kReferenceNetlist; }

const Pipeline& reference_pipeline() {
  static const Pipeline pipeline = [] {
    netlist::ValidationResult r = netlist::load(reference_netlist_text());
    if (!r.pipeline) {
      std::string msg = "bundled reference netlist is invalid:";
      for (const auto& d : r.diagnostics) msg += "\n  " + d.format();
      throw std::logic_error(msg);
    }
    return *r.pipeline;
  }();
  return pipeline;
}

double calibrated_pump() {
  static const double x = [] {
    Pipeline full = reference_pipeline();
    full.signal.reset();
    return calibrate_pump(full, kCalibrationTargetDb, kCalibrationFrequency);
  }();
  return x;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig2a", "fig2b", "fig2c", "fig2d", "fig3"};
  return names;
}

Scenario make_scenario(std::string_view name) {
  Pipeline base = with_pump(reference_pipeline(), calibrated_pump());
  Pipeline noise_only = base;
  noise_only.signal.reset();

  if (name == "fig2a") return {"fig2a", with_vacuum_input(noise_only), false};
  if (name == "fig2b") return {"fig2b", without_stages(noise_only, {"fc", "fc_mm"}), false};
  if (name == "fig2c") return {"fig2c", without_stages(noise_only, {"src", "src_mm"}), false};
  if (name == "fig2d") return {"fig2d", noise_only, false};
  if (name == "fig3") return {"fig3", base, true};

  std::string valid;
  for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw UsageError("unknown scenario '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace sqz
