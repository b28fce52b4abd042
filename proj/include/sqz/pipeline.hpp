#pragma once

// Executable optical chain: an optional OPA source, scalar losses and
// cavities in propagation order, terminated by one homodyne detector.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqz/optics.hpp"
#include "sqz/twophoton.hpp"

namespace sqz {

struct OpaStage {
  std::string name;
  OpaSpec spec;
};

struct LossStage {
  std::string name;
  LossSpec spec;
};

struct CavityStage {
  std::string name;
  CavitySpec spec;
};

struct HomodyneStage {
  std::string name;
  HomodyneSpec spec;
};

using Stage = std::variant<OpaStage, LossStage, CavityStage, HomodyneStage>;

std::string_view stage_name(const Stage& stage);

/// Single-sideband signal entering through the end mirror of a cavity.
struct SignalInjection {
  std::string node;
  double amplitude = 1.0;

  friend bool operator==(const SignalInjection&, const SignalInjection&) = default;
};

struct Pipeline {
  std::vector<Stage> stages;
  std::optional<SignalInjection> signal;

  /// The OPA at the chain head, or nullptr for a vacuum input.
  const OpaStage* source() const;
  OpaStage* source();
  const HomodyneStage& detector() const;

  /// Position of the named stage; std::nullopt when absent.
  std::optional<std::size_t> find(std::string_view name) const;

  /// Throws std::invalid_argument when the chain shape is wrong (OPA not at
  /// the head, detector missing or not last) and std::domain_error on
  /// out-of-range component parameters.
  void check() const;
};

/// Copy with the OPA pump replaced. Throws if there is no OPA.
Pipeline with_pump(Pipeline pipeline, double pump_x);

/// Copy with the OPA removed, i.e. vacuum entering the chain.
Pipeline with_vacuum_input(Pipeline pipeline);

/// Copy without the named stages (unknown names are ignored).
Pipeline without_stages(Pipeline pipeline, const std::vector<std::string>& names);

}  // namespace sqz
