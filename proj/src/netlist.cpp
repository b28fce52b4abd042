#include "sqz/netlist.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <span>
#include <sstream>

namespace sqz::netlist {

namespace {

enum class Dimension { fraction, frequency, length, angle };

enum class Range {
  unit_interval,   // [0, 1]
  below_one,       // [0, 1)
  positive,        // (0, inf)
  finite,
};

struct AttributeRule {
  std::string_view key;
  Dimension dimension;
  Range range;
  bool required;
};

constexpr std::array kOpaRules{
    AttributeRule{"pump_x", Dimension::fraction, Range::below_one, true},
    AttributeRule{"bandwidth", Dimension::frequency, Range::positive, true},
    AttributeRule{"escape", Dimension::fraction, Range::unit_interval, true},
};

constexpr std::array kCavityRules{
    AttributeRule{"length", Dimension::length, Range::positive, true},
    AttributeRule{"r_in", Dimension::fraction, Range::unit_interval, true},
    AttributeRule{"r_end", Dimension::fraction, Range::unit_interval, true},
    AttributeRule{"detuning", Dimension::frequency, Range::finite, true},
    AttributeRule{"loss_rt", Dimension::fraction, Range::unit_interval, false},
};

constexpr std::array kLossRules{
    AttributeRule{"eta", Dimension::fraction, Range::unit_interval, true},
};

constexpr std::array kHomodyneRules{
    AttributeRule{"angle", Dimension::angle, Range::finite, true},
    AttributeRule{"qe", Dimension::fraction, Range::unit_interval, true},
};

std::span<const AttributeRule> rules_for(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::opa:
      return kOpaRules;
    case ComponentKind::cavity:
      return kCavityRules;
    case ComponentKind::loss:
      return kLossRules;
    case ComponentKind::homodyne:
      return kHomodyneRules;
  }
  return {};
}

const AttributeRule* find_rule(ComponentKind kind, std::string_view key) {
  for (const AttributeRule& r : rules_for(kind)) {
    if (r.key == key) return &r;
  }
  return nullptr;
}

std::optional<ComponentKind> kind_from(std::string_view word) {
  if (word == "opa") return ComponentKind::opa;
  if (word == "cavity") return ComponentKind::cavity;
  if (word == "loss") return ComponentKind::loss;
  if (word == "homodyne") return ComponentKind::homodyne;
  return std::nullopt;
}

bool in_range(Range range, double v) {
  switch (range) {
    case Range::unit_interval:
      return v >= 0.0 && v <= 1.0;
    case Range::below_one:
      return v >= 0.0 && v < 1.0;
    case Range::positive:
      return std::isfinite(v) && v > 0.0;
    case Range::finite:
      return std::isfinite(v);
  }
  return false;
}

std::string_view range_text(Range range) {
  switch (range) {
    case Range::unit_interval:
      return "[0, 1]";
    case Range::below_one:
      return "[0, 1)";
    case Range::positive:
      return "(0, inf)";
    case Range::finite:
      return "finite values";
  }
  return "";
}

/// Scale to SI for a unit suffix; nullopt when the unit does not fit.
std::optional<double> unit_scale(Dimension dim, std::string_view unit) {
  if (unit.empty()) return 1.0;
  switch (dim) {
    case Dimension::fraction:
      return std::nullopt;
    case Dimension::frequency:
      if (unit == "Hz") return 1.0;
      if (unit == "kHz") return 1e3;
      if (unit == "MHz") return 1e6;
      if (unit == "GHz") return 1e9;
      return std::nullopt;
    case Dimension::length:
      if (unit == "m") return 1.0;
      if (unit == "mm") return 1e-3;
      return std::nullopt;
    case Dimension::angle:
      if (unit == "deg") return kPi / 180.0;
      return std::nullopt;
  }
  return std::nullopt;
}

std::string_view si_unit(Dimension dim) {
  switch (dim) {
    case Dimension::frequency:
      return "Hz";
    case Dimension::length:
      return "m";
    default:
      return "";
  }
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

struct Number {
  double value;
  std::string_view unit;
};

/// Leading number followed by an optional unit suffix.
std::optional<Number> split_number(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || !std::isfinite(value)) return std::nullopt;
  return Number{value, std::string_view(ptr, static_cast<std::size_t>(body.data() + body.size() - ptr))};
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      ++line_no;
      parse_line(text.substr(pos, end - pos), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    // A trailing newline does not start a new line.
    if (!text.empty() && text.back() == '\n') --line_no;
    doc_.line_count = text.empty() ? 0 : line_no;

    check_document(doc_, diags_);
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) result.document = std::move(doc_);
    return result;
  }

  static void check_document(const NetlistDocument& doc, std::vector<ParseDiagnostic>& diags);

 private:
  void error(int line, int column, std::string message) {
    diags_.push_back({line, column, Severity::error, std::move(message)});
  }

  void parse_line(std::string_view line, int line_no) {
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) return;

    const Token& head = tokens.front();
    if (head.text == "chain") {
      parse_chain(tokens, line_no);
    } else if (head.text == "signal") {
      parse_signal(tokens, line_no);
    } else if (const auto kind = kind_from(head.text)) {
      parse_decl(*kind, tokens, line_no);
    } else {
      error(line_no, head.column,
            "unknown component kind '" + std::string(head.text) + "' (expected opa, cavity, loss, homodyne)");
    }
  }

  void parse_decl(ComponentKind kind, const std::vector<Token>& tokens, int line_no) {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column + static_cast<int>(tokens[0].text.size()),
            "missing component name after '" + std::string(tokens[0].text) + "'");
      return;
    }
    const Token& name = tokens[1];
    if (!is_identifier(name.text)) {
      error(line_no, name.column, "invalid component name '" + std::string(name.text) + "'");
      return;
    }
    ComponentDecl decl;
    decl.kind = kind;
    decl.name = std::string(name.text);
    decl.where = {line_no, tokens[0].column};

    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const Token& tok = tokens[i];
      const std::size_t eq = tok.text.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        error(line_no, tok.column, "expected key=value, got '" + std::string(tok.text) + "'");
        continue;
      }
      const std::string key(tok.text.substr(0, eq));
      const std::string_view value = tok.text.substr(eq + 1);
      const int value_column = tok.column + static_cast<int>(eq) + 1;
      const AttributeRule* rule = find_rule(kind, key);
      if (rule == nullptr) {
        error(line_no, tok.column,
              "unknown attribute '" + key + "' for " + std::string(kind_name(kind)) + " '" + decl.name + "'");
        continue;
      }
      if (decl.attributes.contains(key)) {
        error(line_no, tok.column, "attribute '" + key + "' given twice");
        continue;
      }
      const auto number = split_number(value);
      if (!number) {
        error(line_no, value_column, "malformed number '" + std::string(value) + "' for attribute '" + key + "'");
        continue;
      }
      const auto scale = unit_scale(rule->dimension, number->unit);
      if (!scale) {
        error(line_no, value_column,
              "unit '" + std::string(number->unit) + "' not accepted for attribute '" + key + "'");
        continue;
      }
      decl.attributes[key] = number->value * *scale;
      decl.attribute_where[key] = {line_no, tok.column};
    }
    doc_.components.push_back(std::move(decl));
  }

  void parse_chain(const std::vector<Token>& tokens, int line_no) {
    if (seen_chain_) {
      error(line_no, tokens[0].column, "second chain declaration (first on line " +
                                           std::to_string(doc_.chain_where.line) + ")");
      return;
    }
    seen_chain_ = true;
    doc_.chain_where = {line_no, tokens[0].column};

    // Split "a->b" as well as "a -> b".
    std::vector<Token> parts;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      std::string_view rest = tokens[i].text;
      int col = tokens[i].column;
      while (!rest.empty()) {
        const std::size_t arrow = rest.find("->");
        if (arrow == std::string_view::npos) {
          parts.push_back({rest, col});
          break;
        }
        if (arrow > 0) parts.push_back({rest.substr(0, arrow), col});
        parts.push_back({rest.substr(arrow, 2), col + static_cast<int>(arrow)});
        rest.remove_prefix(arrow + 2);
        col += static_cast<int>(arrow) + 2;
      }
    }

    bool expect_name = true;
    for (const Token& p : parts) {
      if (expect_name) {
        if (!is_identifier(p.text)) {
          error(line_no, p.column, "expected component name in chain, got '" + std::string(p.text) + "'");
          return;
        }
        doc_.chain.emplace_back(p.text);
        doc_.chain_item_where.push_back({line_no, p.column});
      } else if (p.text != "->") {
        error(line_no, p.column, "expected '->' in chain, got '" + std::string(p.text) + "'");
        return;
      }
      expect_name = !expect_name;
    }
    if (parts.empty()) {
      error(line_no, tokens[0].column, "empty chain");
    } else if (expect_name) {
      error(line_no, parts.back().column, "chain ends with '->'");
    }
  }

  void parse_signal(const std::vector<Token>& tokens, int line_no) {
    if (seen_signal_) {
      error(line_no, tokens[0].column, "second signal declaration");
      return;
    }
    seen_signal_ = true;
    doc_.signal_where = {line_no, tokens[0].column};
    std::optional<std::string> node;
    std::optional<double> amplitude;
    bool ok = true;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const Token& tok = tokens[i];
      const std::size_t eq = tok.text.find('=');
      const std::string_view key = eq == std::string_view::npos ? tok.text : tok.text.substr(0, eq);
      const std::string_view value = eq == std::string_view::npos ? std::string_view{} : tok.text.substr(eq + 1);
      if (eq == std::string_view::npos) {
        error(line_no, tok.column, "expected key=value, got '" + std::string(tok.text) + "'");
        ok = false;
      } else if (key == "node" && !node) {
        if (!is_identifier(value)) {
          error(line_no, tok.column, "invalid signal node '" + std::string(value) + "'");
          ok = false;
        } else {
          node = std::string(value);
        }
      } else if (key == "amplitude" && !amplitude) {
        const auto number = split_number(value);
        if (!number || !number->unit.empty() || number->value < 0.0) {
          error(line_no, tok.column + static_cast<int>(eq) + 1,
                "signal amplitude must be a non-negative plain number, got '" + std::string(value) + "'");
          ok = false;
        } else {
          amplitude = number->value;
        }
      } else {
        error(line_no, tok.column, "unexpected signal attribute '" + std::string(key) + "'");
        ok = false;
      }
    }
    if (!node || !amplitude) {
      error(line_no, tokens[0].column, "signal needs node=NAME and amplitude=NUMBER");
      ok = false;
    }
    if (ok) doc_.signal = SignalInjection{*node, *amplitude};
  }

  NetlistDocument doc_;
  std::vector<ParseDiagnostic> diags_;
  bool seen_chain_ = false;
  bool seen_signal_ = false;
};

int line_or_eof(const NetlistDocument& doc, SourceLocation where) {
  if (where.line > 0) return where.line;
  return std::max(1, doc.line_count);
}

void Parser::check_document(const NetlistDocument& doc, std::vector<ParseDiagnostic>& diags) {
  auto emit = [&](SourceLocation where, Severity sev, std::string message) {
    diags.push_back({line_or_eof(doc, where), std::max(1, where.column), sev, std::move(message)});
  };

  std::set<std::string> names;
  for (const ComponentDecl& c : doc.components) {
    const std::string label = std::string(kind_name(c.kind)) + " '" + c.name + "'";
    if (!names.insert(c.name).second) emit(c.where, Severity::error, "duplicate component name '" + c.name + "'");

    for (const auto& [key, value] : c.attributes) {
      const auto where = c.attribute_where.contains(key) ? c.attribute_where.at(key) : c.where;
      const AttributeRule* rule = find_rule(c.kind, key);
      if (rule == nullptr) {
        emit(where, Severity::error, "unknown attribute '" + key + "' for " + label);
      } else if (!in_range(rule->range, value)) {
        emit(where, Severity::error,
             "attribute '" + key + "' of " + label + " out of range: " + format_number(value) + " not in " +
                 std::string(range_text(rule->range)));
      }
    }
    std::string missing;
    for (const AttributeRule& rule : rules_for(c.kind)) {
      if (rule.required && !c.attributes.contains(std::string(rule.key))) {
        missing += (missing.empty() ? "" : ", ") + std::string(rule.key);
      }
    }
    if (!missing.empty()) emit(c.where, Severity::error, "missing required attributes for " + label + ": " + missing);
  }

  if (doc.chain.empty()) {
    emit(doc.chain_where, Severity::error, "missing chain declaration");
  } else {
    std::set<std::string> used;
    int homodynes = 0;
    for (std::size_t i = 0; i < doc.chain.size(); ++i) {
      const std::string& name = doc.chain[i];
      const SourceLocation where = i < doc.chain_item_where.size() ? doc.chain_item_where[i] : doc.chain_where;
      if (!used.insert(name).second) emit(where, Severity::error, "component '" + name + "' appears twice in chain");
      const ComponentDecl* c = doc.find(name);
      if (c == nullptr) {
        emit(where, Severity::error, "chain references undeclared component '" + name + "'");
        continue;
      }
      if (c->kind == ComponentKind::opa && i != 0) {
        emit(where, Severity::error, "opa '" + name + "' must be the head of the chain");
      }
      if (c->kind == ComponentKind::homodyne) {
        ++homodynes;
        if (i + 1 != doc.chain.size()) {
          emit(where, Severity::error, "homodyne '" + name + "' must be the last element of the chain");
        }
      }
    }
    if (homodynes == 0) emit(doc.chain_where, Severity::error, "chain does not end in a homodyne detector");
    if (homodynes > 1) emit(doc.chain_where, Severity::error, "chain contains more than one homodyne detector");
    for (const ComponentDecl& c : doc.components) {
      if (!used.contains(c.name)) {
        emit(c.where, Severity::warning, "component '" + c.name + "' is declared but not in the chain");
      }
    }
  }

  const auto opas = std::count_if(doc.components.begin(), doc.components.end(),
                                  [](const ComponentDecl& c) { return c.kind == ComponentKind::opa; });
  if (opas > 1) emit(doc.chain_where, Severity::error, "more than one opa declared");

  if (doc.signal) {
    const ComponentDecl* c = doc.find(doc.signal->node);
    const bool in_chain = std::find(doc.chain.begin(), doc.chain.end(), doc.signal->node) != doc.chain.end();
    if (c == nullptr || c->kind != ComponentKind::cavity || !in_chain) {
      emit(doc.signal_where, Severity::error, "signal node '" + doc.signal->node + "' is not a cavity in the chain");
    }
    if (!(std::isfinite(doc.signal->amplitude) && doc.signal->amplitude >= 0.0)) {
      emit(doc.signal_where, Severity::error, "signal amplitude must be finite and non-negative");
    }
  }
}

Stage build_stage(const ComponentDecl& c) {
  const auto& a = c.attributes;
  auto get = [&](const char* key, double fallback = 0.0) {
    const auto it = a.find(key);
    return it == a.end() ? fallback : it->second;
  };
  switch (c.kind) {
    case ComponentKind::opa:
      return OpaStage{c.name, OpaSpec{get("pump_x"), get("bandwidth"), get("escape")}};
    case ComponentKind::cavity:
      return CavityStage{c.name,
                         CavitySpec{get("length"), get("r_in"), get("r_end"), get("loss_rt"), get("detuning")}};
    case ComponentKind::loss:
      return LossStage{c.name, LossSpec{get("eta"), c.name}};
    case ComponentKind::homodyne:
      return HomodyneStage{c.name, HomodyneSpec{get("angle"), get("qe")}};
  }
  return LossStage{};
}

}  // namespace

std::string_view kind_name(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::opa:
      return "opa";
    case ComponentKind::cavity:
      return "cavity";
    case ComponentKind::loss:
      return "loss";
    case ComponentKind::homodyne:
      return "homodyne";
  }
  return "?";
}

const ComponentDecl* NetlistDocument::find(std::string_view name) const {
  for (const ComponentDecl& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ParseDiagnostic::format() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " +
         (severity == Severity::error ? "error" : "warning") + ": " + message;
}

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
}

ParseResult parse(std::string_view text) { return Parser{}.run(text); }

ValidationResult validate(const NetlistDocument& doc) {
  ValidationResult result;
  Parser::check_document(doc, result.diagnostics);
  if (has_errors(result.diagnostics)) return result;

  Pipeline pipeline;
  for (const std::string& name : doc.chain) pipeline.stages.push_back(build_stage(*doc.find(name)));
  pipeline.signal = doc.signal;
  result.pipeline = std::move(pipeline);
  return result;
}

std::string serialize(const NetlistDocument& doc) {
  std::ostringstream out;
  for (const ComponentDecl& c : doc.components) {
    out << kind_name(c.kind) << ' ' << c.name;
    for (const auto& [key, value] : c.attributes) {
      const AttributeRule* rule = find_rule(c.kind, key);
      out << ' ' << key << '=' << format_number(value) << (rule ? si_unit(rule->dimension) : "");
    }
    out << '\n';
  }
  if (!doc.chain.empty()) {
    out << "chain";
    for (std::size_t i = 0; i < doc.chain.size(); ++i) out << (i == 0 ? " " : " -> ") << doc.chain[i];
    out << '\n';
  }
  if (doc.signal) {
    out << "signal node=" << doc.signal->node << " amplitude=" << format_number(doc.signal->amplitude) << '\n';
  }
  return out.str();
}

ValidationResult load(std::string_view text) {
  ParseResult parsed = parse(text);
  if (!parsed.document) return {std::nullopt, std::move(parsed.diagnostics)};
  ValidationResult result = validate(*parsed.document);
  // Warnings from parse already cover the document; keep only new errors.
  std::vector<ParseDiagnostic> merged = std::move(parsed.diagnostics);
  for (ParseDiagnostic& d : result.diagnostics) {
    if (d.severity == Severity::error) merged.push_back(std::move(d));
  }
  result.diagnostics = std::move(merged);
  return result;
}

}  // namespace sqz::netlist
