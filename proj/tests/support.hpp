#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dbsolve/analyzer.hpp"
#include "dbsolve/corpus.hpp"
#include "dbsolve/protocol.hpp"
#include "dbsolve/scenario.hpp"
#include "dbsolve/timed_bundle.hpp"

namespace dbsolve::oracle {

ProtocolSpec corpus_protocol(const std::string& name);
ScenarioConfig corpus_scenario(const std::string& name);

// Standard Dolev-Yao closure, written without the solver: analyze to a fixed
// point, then synthesize. Ground terms only.
class Deriver {
 public:
  Deriver(std::vector<Term> known, std::set<Term> compromised);

  bool derivable(const Term& t) const;
  const std::set<Term>& analyzed() const { return closure_; }

 private:
  bool synth(const Term& t) const;

  std::set<Term> closure_;
  std::set<Term> compromised_;
};

// Checks a solver solution against the constraints it came from: every
// target, once instantiated, follows from its instantiated term set, and
// every un step names a term the attacker can derive. Returns the first
// problem, or nullopt.
std::optional<std::string> replay(const ConstraintSequence& constraints, const AttackerKnowledge& k,
                                  const Solution& sol, const SemiBundle& s);

// The Lowe run: initiator talking to eps, responder b, merge 11 21 22 12 13 23.
struct NspkRun {
  SemiBundle semibundle;
  Interleaving merge;
  AttackerKnowledge knowledge;
  ConstraintSequence constraints;
  std::optional<Solution> solution;
  Bundle bundle;
};
NspkRun nspk_lowe();
NetworkGeometry nspk_geometry();

// Runs every corpus case and concatenates the rendered reports.
std::string corpus_transcript();

}  // namespace dbsolve::oracle
