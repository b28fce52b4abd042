#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sqz/experiment.hpp"

namespace sqz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInput = 2;  ///< unreadable or invalid netlist
inline constexpr int kExitUsage = 64;

/// CSV header, one line per record, 9 significant digits; signal columns
/// left empty when absent.
void write_csv(std::span<const SpectrumRecord> records, std::ostream& out);

/// Array of objects with the CSV columns as keys (null when absent).
void write_json(std::span<const SpectrumRecord> records, std::ostream& out);

/// Entry point; args[0] is the program name. Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqz::cli
