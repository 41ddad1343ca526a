#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbsolve/corpus.hpp"
#include "dbsolve/run.hpp"

namespace {

// "corpus:p1.proto" reads the built-in copy; anything else is a path.
std::optional<std::string> load(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0) {
    auto f = dbsolve::corpus_file(spec.substr(7));
    if (!f) return std::nullopt;
    return std::string(*f);
  }
  std::ifstream in(spec, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cases(const std::vector<std::string>& only, bool verbose) {
  int failures = 0;
  for (const auto& c : dbsolve::corpus_cases()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    dbsolve::RunFlags flags;
    flags.all_traces = c.all_traces;
    std::ostringstream out, err;
    dbsolve::TraceReport report;
    int code = dbsolve::run_analysis(*dbsolve::corpus_file(c.protocol), *dbsolve::corpus_file(c.scenario), flags, out, err, &report);
    bool ok = code != dbsolve::kExitError && report.verdict.status == c.expected &&
              (!c.traces || report.verdict.trace_count == *c.traces);
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << c.name << ": " << dbsolve::to_string(report.verdict.status) << " (expected "
              << dbsolve::to_string(c.expected) << "), traces " << report.verdict.trace_count << "\n";
    if (verbose || !ok) std::cout << out.str() << err.str();
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic distance-bounding protocol analyzer"};
  app.require_subcommand(1);

  dbsolve::RunFlags flags;
  std::string protocol_path, scenario_path;
  bool seedless = true;
  auto* analyze = app.add_subcommand("analyze", "Check a protocol under a scenario");
  analyze->add_option("protocol", protocol_path, "Protocol file (or corpus:<name>)")->required();
  analyze->add_option("scenario", scenario_path, "Scenario file (or corpus:<name>)")->required();
  analyze->add_option("--max-interleavings", flags.max_interleavings, "Interleavings to try before giving up")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--all-traces", flags.all_traces, "Report one witness per violating interleaving");
  analyze->add_option("--dot", flags.dot_dir, "Write the ideal and witness bundles as DOT files here");
  analyze->add_flag("--seedless", seedless, "Deterministic search (the only mode)");
  analyze->add_flag("--unrestricted", flags.unrestricted, "Do not keep request and response together");

  auto* corpus = app.add_subcommand("corpus", "Built-in protocols and scenarios");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "List corpus files and cases");
  std::vector<std::string> only;
  bool verbose = false;
  auto* run = corpus->add_subcommand("run", "Run corpus cases against their expected verdicts");
  run->add_option("cases", only, "Case names (default: all)");
  run->add_flag("-v,--verbose", verbose, "Print every report");
  std::string show_name;
  auto* show = corpus->add_subcommand("show", "Print a corpus file");
  show->add_option("name", show_name)->required();

  std::string print_path;
  auto* print = app.add_subcommand("print", "Parse a protocol file and pretty-print it");
  print->add_option("protocol", print_path, "Protocol file (or corpus:<name>)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dbsolve::kExitError;
  }

  if (*analyze) {
    auto p = load(protocol_path);
    auto s = load(scenario_path);
    if (!p || !s) {
      std::cerr << "error: cannot read " << (!p ? protocol_path : scenario_path) << "\n";
      return dbsolve::kExitError;
    }
    return dbsolve::run_analysis(*p, *s, flags, std::cout, std::cerr);
  }
  if (*list) {
    for (const auto& n : dbsolve::corpus_names()) std::cout << n << "\n";
    std::cout << "\ncases:\n";
    for (const auto& c : dbsolve::corpus_cases())
      std::cout << "  " << c.name << ": " << c.protocol << " + " << c.scenario << " -> " << dbsolve::to_string(c.expected) << "\n";
    return 0;
  }
  if (*run) return run_cases(only, verbose);
  if (*show) {
    auto f = dbsolve::corpus_file(show_name);
    if (!f) {
      std::cerr << "error: no corpus file " << show_name << "\n";
      return dbsolve::kExitError;
    }
    std::cout << *f;
    return 0;
  }
  if (*print) {
    auto p = load(print_path);
    if (!p) {
      std::cerr << "error: cannot read " << print_path << "\n";
      return dbsolve::kExitError;
    }
    try {
      std::cout << dbsolve::print_protocol(dbsolve::parse_protocol(*p));
    } catch (const dbsolve::ParseError& e) {
      std::cerr << print_path << ":" << e.what() << "\n";
      return dbsolve::kExitError;
    }
    return 0;
  }
  return 0;
}
