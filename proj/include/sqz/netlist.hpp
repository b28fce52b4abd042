#pragma once

// Line-oriented description of the optical chain.
//
//   # comment
//   opa      sq  pump_x=0.3 bandwidth=20MHz escape=0.9
//   loss     iso eta=0.93
//   cavity   fc  length=1.21m r_in=0.90 r_end=0.9992 detuning=-10MHz [loss_rt=0]
//   homodyne hd  angle=0deg qe=0.93
//   chain sq -> iso -> fc -> hd
//   signal node=fc amplitude=1
//
// Units: Hz kHz MHz GHz for frequencies, m mm for lengths, deg for angles
// (plain numbers are SI: Hz, m, rad). Fractions take no unit. Positive
// detuning means the cavity resonates at the upper sideband.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqz/pipeline.hpp"

namespace sqz::netlist {

enum class ComponentKind { opa, cavity, loss, homodyne };

std::string_view kind_name(ComponentKind kind);

struct SourceLocation {
  int line = 0;  ///< 1-based; 0 for documents built in code
  int column = 0;
};

struct ComponentDecl {
  ComponentKind kind = ComponentKind::loss;
  std::string name;
  std::map<std::string, double> attributes;  ///< SI values

  SourceLocation where;
  std::map<std::string, SourceLocation> attribute_where;

  /// Structural equality; source locations are ignored.
  friend bool operator==(const ComponentDecl& a, const ComponentDecl& b) {
    return a.kind == b.kind && a.name == b.name && a.attributes == b.attributes;
  }
};

struct NetlistDocument {
  std::vector<ComponentDecl> components;
  std::vector<std::string> chain;
  std::optional<SignalInjection> signal;

  SourceLocation chain_where;
  std::vector<SourceLocation> chain_item_where;
  SourceLocation signal_where;
  int line_count = 0;

  const ComponentDecl* find(std::string_view name) const;

  friend bool operator==(const NetlistDocument& a, const NetlistDocument& b) {
    return a.components == b.components && a.chain == b.chain && a.signal == b.signal;
  }
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  int line = 0;
  int column = 0;
  Severity severity = Severity::error;
  std::string message;

  /// "line:column: error: message"
  std::string format() const;
};

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics);

struct ParseResult {
  std::optional<NetlistDocument> document;  ///< empty iff an error was reported
  std::vector<ParseDiagnostic> diagnostics;
};

struct ValidationResult {
  std::optional<Pipeline> pipeline;
  std::vector<ParseDiagnostic> diagnostics;
};

/// Never throws on malformed input; problems come back as diagnostics.
ParseResult parse(std::string_view text);

/// Checks ranges and topology and builds the executable pipeline.
ValidationResult validate(const NetlistDocument& doc);

/// Canonical text: declaration order kept, attributes sorted by key, values
/// in shortest round-trip form with SI units.
std::string serialize(const NetlistDocument& doc);

/// parse + validate.
ValidationResult load(std::string_view text);

}  // namespace sqz::netlist
