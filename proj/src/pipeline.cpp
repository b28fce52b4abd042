#include "sqz/pipeline.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

namespace sqz {

std::string_view stage_name(const Stage& stage) {
  return std::visit([](const auto& s) -> std::string_view { return s.name; }, stage);
}

const OpaStage* Pipeline::source() const {
  if (stages.empty()) return nullptr;
  return std::get_if<OpaStage>(&stages.front());
}

OpaStage* Pipeline::source() {
  if (stages.empty()) return nullptr;
  return std::get_if<OpaStage>(&stages.front());
}

const HomodyneStage& Pipeline::detector() const {
  if (stages.empty() || !std::holds_alternative<HomodyneStage>(stages.back())) {
    throw std::invalid_argument("pipeline does not end in a homodyne detector");
  }
  return std::get<HomodyneStage>(stages.back());
}

std::optional<std::size_t> Pipeline::find(std::string_view name) const {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stage_name(stages[i]) == name) return i;
  }
  return std::nullopt;
}

void Pipeline::check() const {
  detector();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const Stage& st = stages[i];
    if (std::holds_alternative<OpaStage>(st) && i != 0) {
      throw std::invalid_argument("OPA must be the head of the chain");
    }
    if (std::holds_alternative<HomodyneStage>(st) && i + 1 != stages.size()) {
      throw std::invalid_argument("homodyne detector must be the last stage");
    }
    std::visit(
        [](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, HomodyneStage>) {
            if (!(s.spec.quantum_efficiency >= 0.0 && s.spec.quantum_efficiency <= 1.0)) {
              throw std::domain_error("homodyne quantum efficiency must lie in [0, 1]");
            }
          } else {
            s.spec.validate();
          }
        },
        st);
  }
  if (signal) {
    const auto at = find(signal->node);
    if (!at || !std::holds_alternative<CavityStage>(stages[*at])) {
      throw std::invalid_argument("signal node '" + signal->node + "' is not a cavity in the chain");
    }
  }
}

Pipeline with_pump(Pipeline pipeline, double pump_x) {
  OpaStage* opa = pipeline.source();
  if (opa == nullptr) throw std::invalid_argument("pipeline has no OPA to pump");
  opa->spec.pump_x = pump_x;
  return pipeline;
}

Pipeline with_vacuum_input(Pipeline pipeline) {
  if (pipeline.source() != nullptr) pipeline.stages.erase(pipeline.stages.begin());
  return pipeline;
}

Pipeline without_stages(Pipeline pipeline, const std::vector<std::string>& names) {
  std::erase_if(pipeline.stages, [&](const Stage& s) {
    return std::find(names.begin(), names.end(), stage_name(s)) != names.end();
  });
  return pipeline;
}

}  // namespace sqz
