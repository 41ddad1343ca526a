#include "dbsolve/run.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dbsolve {

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int run_analysis(std::string_view protocol_text, std::string_view scenario_text, const RunFlags& flags, std::ostream& out,
                 std::ostream& err, TraceReport* report) {
  ProtocolSpec protocol;
  ScenarioConfig cfg;
  try {
    protocol = parse_protocol(protocol_text);
  } catch (const ParseError& e) {
    err << "protocol: " << e.what() << "\n";
    return kExitError;
  }
  try {
    cfg = parse_scenario(scenario_text);
  } catch (const ParseError& e) {
    err << "scenario: " << e.what() << "\n";
    return kExitError;
  }

  AnalysisOptions options;
  options.max_interleavings = flags.max_interleavings;
  options.all_traces = flags.all_traces;
  options.restricted = !flags.unrestricted;
  Verdict v;
  try {
    v = check_scenario(protocol, cfg, options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  out << render_report(v, protocol, cfg);
  TraceReport r = make_report(v);

  if (flags.dot_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*flags.dot_dir, ec);
    const std::string stem = protocol.name + "_" + cfg.name;
    bool ok = !ec && write_file(std::filesystem::path(*flags.dot_dir) / (stem + "_ideal.dot"), emit_dot(v.ideal));
    for (std::size_t i = 0; ok && i < v.witnesses.size(); ++i)
      ok = write_file(std::filesystem::path(*flags.dot_dir) / (stem + "_witness" + std::to_string(i + 1) + ".dot"),
                      emit_dot(v.witnesses[i].bundle));
    if (!ok) {
      err << "error: cannot write DOT files to " << *flags.dot_dir << "\n";
      return kExitError;
    }
  }
  if (report) *report = std::move(r);
  return v.status == Status::Violated ? kExitViolation : kExitClean;
}

int run_analysis_files(const std::string& protocol_path, const std::string& scenario_path, const RunFlags& flags,
                       std::ostream& out, std::ostream& err, TraceReport* report) {
  auto p = slurp(protocol_path);
  if (!p) {
    err << "error: cannot read " << protocol_path << "\n";
    return kExitError;
  }
  auto s = slurp(scenario_path);
  if (!s) {
    err << "error: cannot read " << scenario_path << "\n";
    return kExitError;
  }
  return run_analysis(*p, *s, flags, out, err, report);
}

}  // namespace dbsolve
