#pragma once

// Built-in pipelines for the reference setup.
//
//   fig2a  shot noise (vacuum into the chain)
//   fig2b  squeezing reflected off the SRC only
//   fig2c  squeezing reflected off the filter cavity only
//   fig2d  filter cavity followed by the SRC
//   fig3   fig2d plus the single-sideband signal sweep
//
// In every scenario the OPA pump is calibrated on fig2d so that -2.8 dB is
// detected at 5 MHz.

#include <string>
#include <string_view>
#include <vector>

#include "sqz/pipeline.hpp"

namespace sqz {

inline constexpr double kCalibrationTargetDb = -2.8;
inline constexpr double kCalibrationFrequency = 5e6;

/// Text of the bundled reference netlist.
std::string_view reference_netlist_text();

/// Reference netlist parsed and validated.
const Pipeline& reference_pipeline();

/// Pump that gives the calibration target on the full (fig2d) pipeline.
double calibrated_pump();

const std::vector<std::string>& scenario_names();

struct Scenario {
  std::string name;
  Pipeline pipeline;
  bool with_signal = false;
};

/// Throws UsageError for an unknown name.
Scenario make_scenario(std::string_view name);

}  // namespace sqz
