#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "dbsolve/constraint.hpp"

namespace dbsolve {

struct SolverOptions {
  // Rule applications allowed per original constraint before giving up loudly.
  std::size_t depth_limit = 200;
  // Strands whose sends count as tagged material for the bind policies.
  std::set<int> tagged_origins;
};

struct Solution {
  Substitution substitution;
  // traces[i]: rule steps charged to original constraint i, in order.
  std::vector<std::vector<RuleStep>> traces;
  // Simple constraints left at the leaf.
  ConstraintSequence remaining;
};

// One search state of the reduction procedure.
struct SolverState {
  ConstraintSequence constraints;
  Substitution sigma;
  std::vector<std::vector<RuleStep>> traces;
  std::vector<std::size_t> steps;
};

// Index of the active constraint, or nullopt when only simple ones remain.
std::optional<std::size_t> active_constraint(const ConstraintSequence& c);

// Successor states after (elim) and one rule application on the active
// constraint, in rule order. Empty when no rule applies.
std::vector<SolverState> reduce(const SolverState& state, const AttackerKnowledge& k, const SolverOptions& options);

// Depth-first reduction with an explicit stack; solutions are produced lazily
// in a fixed order.
class Solver {
 public:
  Solver(ConstraintSequence constraints, AttackerKnowledge knowledge, SolverOptions options = {});

  std::optional<Solution> next();
  std::size_t states_explored() const { return explored_; }

 private:
  AttackerKnowledge knowledge_;
  SolverOptions options_;
  std::vector<SolverState> stack_;
  std::unordered_set<std::string> seen_;
  std::size_t explored_ = 0;
};

std::vector<Solution> solve(const ConstraintSequence& c, const AttackerKnowledge& k, const SolverOptions& options = {},
                            std::size_t max_solutions = 0);

}  // namespace dbsolve
