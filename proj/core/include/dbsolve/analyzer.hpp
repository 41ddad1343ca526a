#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbsolve/scenario.hpp"
#include "dbsolve/timed_bundle.hpp"

namespace dbsolve {

enum class Comparison { Violated, Satisfied, Boundary };
enum class Status { Violated, Satisfied, NoAttackFound };

std::string_view to_string(Comparison c);
std::string_view to_string(Status s);

// Real ToF below the ideal violates the bound, above it satisfies it; a tie
// is reported as such.
Comparison verdict(const Rational& ideal_tof, const Rational& real_tof);

struct AnalysisOptions {
  std::size_t max_interleavings = 10000;
  bool all_traces = false;
  // Keep request and response adjacent (closer) or separated only by the
  // nearer prover's DB nodes (farther). Off explores every node merge.
  bool restricted = true;
  std::size_t max_solutions_per_interleaving = 256;
  CostTable table = CostTable::defaults();
};

// One solved interleaving turned into a timed bundle.
struct Candidate {
  std::size_t interleaving_index = 0;
  Interleaving interleaving;
  Solution solution;  // substitution includes the residual grounding
  Bundle bundle;
  Rational tof;
  Comparison comparison = Comparison::Boundary;
};

struct Verdict {
  Status status = Status::NoAttackFound;
  Rational ideal_tof;
  std::optional<Rational> real_tof;
  std::optional<Bundle> witness;
  int trace_count = 0;

  std::vector<Candidate> witnesses;  // first violating candidate per interleaving
  Bundle ideal;
  AttackerKnowledge knowledge;
  std::size_t interleavings = 0;
  std::size_t solutions = 0;
  std::size_t boundary = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

struct ExploreStats {
  std::size_t interleavings = 0;
  std::size_t solutions = 0;
  bool truncated = false;
};

// Ideal bundle of the scenario and its time of flight.
Bundle ideal_baseline(const ScenarioModel& m, const CostTable& table, Rational* tof);

enum class Visit { Continue, NextInterleaving, Stop };

// Feeds every candidate, in deterministic order, to `sink`.
ExploreStats explore(const ScenarioModel& m, const Rational& ideal_tof, const AnalysisOptions& options,
                     const std::function<Visit(const Candidate&)>& sink);

Verdict analyze(const ScenarioModel& m, const AnalysisOptions& options = {});

Verdict check_closer(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options = {});
Verdict check_farther(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options = {});
Verdict check_scenario(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options = {});

// Prover turnarounds longer than some honest construction step.
std::vector<std::string> assumption_warnings(const Bundle& ideal, const SemiBundle& source);

}  // namespace dbsolve
