#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dbsolve/interleave.hpp"
#include "dbsolve/strand.hpp"

namespace dbsolve {

// What the attacker starts from. `compromised` lists agents whose private
// keys it holds; eps is always among them.
struct AttackerKnowledge {
  std::vector<Term> initial;
  std::set<Term> compromised{Term::attacker()};

  // eps, every agent, pk of every agent (and of eps), one attacker nonce n_i,
  // sh(eps, a) for every agent, plus the given public terms.
  static AttackerKnowledge defaults(const std::vector<Term>& agents, const std::vector<Term>& public_terms = {});

  void add(const Term& t);
  bool contains(const Term& t) const;
};

// How a constraint may close against material sent by tagged strands.
enum class BindPolicy {
  Normal,
  // Only (un) against tagged material; stays active with a variable target.
  RelayFromTagged,
  // (un) against tagged material only without binding; no (ksub) on it.
  NoTaggedBinding,
};

std::string_view to_string(BindPolicy p);

struct KnownTerm {
  Term term;
  int origin = -1;  // sending strand, -1 for initial knowledge
  NodeId source;    // sending node, invalid for initial knowledge

  friend bool operator==(const KnownTerm&, const KnownTerm&) = default;
};

struct Constraint {
  Term target;
  std::vector<KnownTerm> known;
  NodeId origin_node;
  std::size_t source_index = 0;  // position in the original sequence
  BindPolicy policy = BindPolicy::Normal;

  bool simple() const { return target.is_variable(); }
  std::string to_string() const;
};

using ConstraintSequence = std::vector<Constraint>;

using PolicyFn = std::function<BindPolicy(NodeId)>;

// One constraint per receive node in interleaving order; each term set holds
// the initial knowledge and every send earlier in the order.
ConstraintSequence build_constraints(const SemiBundle& s, const Interleaving& i, const AttackerKnowledge& k,
                                     const PolicyFn& policy = nullptr);

}  // namespace dbsolve
