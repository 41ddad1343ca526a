#include "dbsolve/corpus.hpp"

#include <sstream>
#include <stdexcept>

namespace dbsolve {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& corpus_files();
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::corpus_files()) out.emplace_back(name);
  return out;
}

std::optional<std::string_view> corpus_file(std::string_view name) {
  for (const auto& [n, text] : detail::corpus_files())
    if (n == name) return text;
  return std::nullopt;
}

std::vector<CorpusCase> corpus_cases() {
  auto manifest = corpus_file("cases.txt");
  if (!manifest) return {};
  std::vector<CorpusCase> out;
  std::istringstream in{std::string(*manifest)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kw;
    if (!(words >> kw)) continue;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("cases.txt:" + std::to_string(line_no) + ": " + what);
    };
    if (kw != "case") fail("expected 'case'");
    CorpusCase c;
    std::string status;
    if (!(words >> c.name >> c.protocol >> c.scenario >> status)) fail("expected name, protocol, scenario and verdict");
    if (status == "violated") c.expected = Status::Violated;
    else if (status == "satisfied") c.expected = Status::Satisfied;
    else if (status == "noAttackFound") c.expected = Status::NoAttackFound;
    else fail("unknown verdict " + status);
    for (std::string opt; words >> opt;) {
      if (opt == "all-traces") c.all_traces = true;
      else if (opt.rfind("traces=", 0) == 0) c.traces = std::stoi(opt.substr(7));
      else fail("unknown option " + opt);
    }
    if (!corpus_file(c.protocol)) fail("missing corpus file " + c.protocol);
    if (!corpus_file(c.scenario)) fail("missing corpus file " + c.scenario);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace dbsolve
