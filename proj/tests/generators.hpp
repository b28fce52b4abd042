#pragma once

// Random valid inputs for property tests.

#include <algorithm>
#include <map>
#include <string>
#include <string_view>

#include "oracles.hpp"
#include "sqz/netlist.hpp"
#include "sqz/pipeline.hpp"

namespace sqz::oracle {

inline std::string random_identifier(Rng& rng, int index) {
  static constexpr std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz_";
  std::string s;
  const int len = rng.integer(1, 6);
  for (int i = 0; i < len; ++i) s += alphabet[rng.integer(0, static_cast<int>(alphabet.size()) - 1)];
  return s + std::to_string(index);
}

/// Random valid document: optional OPA head, losses and cavities, homodyne tail.
inline netlist::NetlistDocument random_document(Rng& rng) {
  using namespace netlist;
  NetlistDocument doc;
  int index = 0;
  auto add = [&](ComponentKind kind, std::map<std::string, double> attrs) {
    ComponentDecl c;
    c.kind = kind;
    c.name = random_identifier(rng, index++);
    c.attributes = std::move(attrs);
    doc.components.push_back(c);
    doc.chain.push_back(c.name);
  };
  if (rng.coin()) {
    add(ComponentKind::opa, {{"pump_x", rng.uniform(0.0, 0.99)},
                             {"bandwidth", rng.uniform(1e5, 1e9)},
                             {"escape", rng.uniform(0.0, 1.0)}});
  }
  std::string cavity_name;
  const int middle = rng.integer(0, 6);
  for (int i = 0; i < middle; ++i) {
    if (rng.coin()) {
      add(ComponentKind::loss, {{"eta", rng.uniform(0.0, 1.0)}});
    } else {
      std::map<std::string, double> a{{"length", rng.uniform(1e-3, 10.0)},
                                      {"r_in", rng.uniform(0.0, 1.0)},
                                      {"r_end", rng.uniform(0.0, 1.0)},
                                      {"detuning", rng.uniform(-1e8, 1e8)}};
      if (rng.coin()) a["loss_rt"] = rng.uniform(0.0, 0.1);
      add(ComponentKind::cavity, a);
      cavity_name = doc.chain.back();
    }
  }
  add(ComponentKind::homodyne, {{"angle", rng.uniform(-3.0, 3.0)}, {"qe", rng.uniform(0.0, 1.0)}});
  if (!cavity_name.empty() && rng.coin()) doc.signal = SignalInjection{cavity_name, rng.uniform(0.0, 10.0)};
  // Shuffle declaration order; the chain keeps propagation order.
  std::shuffle(doc.components.begin(), doc.components.end(), rng.engine);
  return doc;
}

/// Optional OPA head, random losses and cavities, homodyne tail; sometimes a
/// signal on one of the cavities.
inline Pipeline random_pipeline(Rng& rng, bool with_opa) {
  Pipeline p;
  if (with_opa) p.stages.push_back(OpaStage{"opa", {rng.uniform(0.0, 0.95), rng.uniform(1e6, 100e6), rng.uniform(0.0, 1.0)}});
  const int middle = rng.integer(0, 5);
  for (int i = 0; i < middle; ++i) {
    const std::string name = "s" + std::to_string(i);
    if (rng.coin()) {
      p.stages.push_back(LossStage{name, {rng.uniform(0.0, 1.0), ""}});
    } else {
      p.stages.push_back(CavityStage{name,
                                     {rng.uniform(0.3, 3.0), rng.uniform(0.3, 0.98), rng.uniform(0.9, 1.0),
                                      rng.uniform(0.0, 0.05), rng.uniform(-30e6, 30e6)}});
      if (rng.coin()) p.signal = SignalInjection{name, rng.uniform(0.1, 3.0)};
    }
  }
  p.stages.push_back(HomodyneStage{"hd", {rng.uniform(-kPi, kPi), rng.uniform(0.5, 1.0)}});
  return p;
}

}  // namespace sqz::oracle
