#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbsolve/report.hpp"

namespace dbsolve {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct RunFlags {
  std::size_t max_interleavings = 10000;
  bool all_traces = false;
  std::optional<std::string> dot_dir;
  bool unrestricted = false;
};

// Parses both inputs, runs the scenario check and writes the report to
// `out`. Returns 0 (no violation), 2 (violation) or 1 (bad input).
int run_analysis(std::string_view protocol_text, std::string_view scenario_text, const RunFlags& flags, std::ostream& out,
                 std::ostream& err, TraceReport* report = nullptr);

// Reads the files first; a missing file is an input error.
int run_analysis_files(const std::string& protocol_path, const std::string& scenario_path, const RunFlags& flags,
                       std::ostream& out, std::ostream& err, TraceReport* report = nullptr);

}  // namespace dbsolve
