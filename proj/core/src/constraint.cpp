#include "dbsolve/constraint.hpp"

#include <algorithm>

namespace dbsolve {

AttackerKnowledge AttackerKnowledge::defaults(const std::vector<Term>& agents, const std::vector<Term>& public_terms) {
  AttackerKnowledge k;
  const Term eps = Term::attacker();
  k.add(eps);
  k.add(Term::public_key(eps));
  k.add(Term::atom("n_i", Sort::Nonce));
  for (const auto& a : agents) {
    if (a == eps) continue;
    k.add(a);
    k.add(Term::public_key(a));
    k.add(Term::shared_key(eps, a));
  }
  for (const auto& t : public_terms) k.add(t);
  return k;
}

void AttackerKnowledge::add(const Term& t) {
  if (!contains(t)) initial.push_back(t);
}

bool AttackerKnowledge::contains(const Term& t) const {
  return std::find(initial.begin(), initial.end(), t) != initial.end();
}

std::string_view to_string(BindPolicy p) {
  switch (p) {
    case BindPolicy::Normal: return "normal";
    case BindPolicy::RelayFromTagged: return "relay";
    case BindPolicy::NoTaggedBinding: return "untagged";
  }
  return "?";
}

std::string Constraint::to_string() const {
  std::string out = target.to_string() + " : {";
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (i) out += ", ";
    out += known[i].term.to_string();
  }
  return out + "}";
}

ConstraintSequence build_constraints(const SemiBundle& s, const Interleaving& inter, const AttackerKnowledge& k,
                                     const PolicyFn& policy) {
  ConstraintSequence out;
  std::vector<KnownTerm> known;
  for (const auto& t : k.initial) known.push_back({t, -1, {}});
  for (const auto& id : inter.order) {
    const Node& n = s.node(id);
    if (n.sign == Sign::Plus) {
      known.push_back({n.term, id.strand, id});
      continue;
    }
    Constraint c;
    c.target = n.term;
    c.known = known;
    c.origin_node = id;
    c.source_index = out.size();
    c.policy = policy ? policy(id) : BindPolicy::Normal;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace dbsolve
