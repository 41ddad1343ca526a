#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbsolve/analyzer.hpp"

namespace dbsolve {

// Protocol and scenario files compiled into the library.
std::vector<std::string> corpus_names();
std::optional<std::string_view> corpus_file(std::string_view name);

// A protocol/scenario pair with the verdict it must reproduce.
struct CorpusCase {
  std::string name;
  std::string protocol;  // corpus file names
  std::string scenario;
  Status expected = Status::NoAttackFound;
  std::optional<int> traces;  // exact witness count under all_traces
  bool all_traces = false;
};

std::vector<CorpusCase> corpus_cases();

}  // namespace dbsolve
