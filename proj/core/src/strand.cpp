#include "dbsolve/strand.hpp"

#include <map>
#include <stdexcept>

namespace dbsolve {

const Node& SemiBundle::node(NodeId id) const {
  if (id.strand < 0 || static_cast<std::size_t>(id.strand) >= strands.size())
    throw std::out_of_range("unknown strand " + std::to_string(id.strand));
  const auto& s = strands[static_cast<std::size_t>(id.strand)];
  if (id.index < 0 || static_cast<std::size_t>(id.index) >= s.nodes.size())
    throw std::out_of_range("unknown node index " + std::to_string(id.index));
  return s.nodes[static_cast<std::size_t>(id.index)];
}

std::size_t SemiBundle::node_count() const {
  std::size_t n = 0;
  for (const auto& s : strands) n += s.nodes.size();
  return n;
}

std::vector<NodeId> SemiBundle::node_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < strands.size(); ++i)
    for (std::size_t j = 0; j < strands[i].nodes.size(); ++j)
      out.push_back({static_cast<int>(i), static_cast<int>(j)});
  return out;
}

bool SemiBundle::contains_term(const Term& t) const {
  for (const auto& s : strands)
    for (const auto& n : s.nodes)
      if (n.term == t) return true;
  return false;
}

SemiBundle SemiBundle::instantiate(const Substitution& sub) const {
  SemiBundle out = *this;
  for (auto& s : out.strands) {
    s.agent = sub.apply(s.agent);
    for (auto& n : s.nodes) n.term = sub.apply(n.term);
  }
  return out;
}

void SemiBundle::collect_variables(std::set<Term>& out) const {
  for (const auto& s : strands) {
    dbsolve::collect_variables(s.agent, out);
    for (const auto& n : s.nodes) dbsolve::collect_variables(n.term, out);
  }
}

namespace {

bool available(const Term& t, std::span<const Term> received) {
  for (const auto& r : received)
    if (subterm(t, r)) return true;
  return false;
}

Rational build_cost(const CostTable& table, const Term& t, std::span<const Term> received) {
  if (t.is_atomic() || t.is_key() || available(t, received)) return 0;
  switch (t.kind()) {
    case TermKind::Pair:
      return action_cost(table, Rule::Pair, t.args()) + build_cost(table, t.arg(0), received) +
             build_cost(table, t.arg(1), received);
    case TermKind::SymEnc:
      return action_cost(table, Rule::Senc, t.args()) + build_cost(table, t.arg(0), received) +
             build_cost(table, t.arg(1), received);
    case TermKind::AsymEnc:
      return action_cost(table, Rule::Penc, t.args()) + build_cost(table, t.arg(0), received) +
             build_cost(table, t.arg(1), received);
    case TermKind::Hash:
      return action_cost(table, Rule::Hash, t.args()) + build_cost(table, t.arg(0), received);
    case TermKind::Signature:
      return action_cost(table, Rule::Sig, t.args()) + build_cost(table, t.arg(0), received);
    default:
      return 0;
  }
}

}  // namespace

Rational preset_weight(const Strand& s, std::size_t index, const CostTable& table) {
  if (index >= s.nodes.size() || s.nodes[index].sign != Sign::Plus)
    throw std::invalid_argument("preset weight requested for a non-send node");
  if (index > 0)
    if (auto it = s.weights.find(index - 1); it != s.weights.end()) return it->second;
  std::vector<Term> received;
  for (std::size_t i = 0; i < index; ++i)
    if (s.nodes[i].sign == Sign::Minus) received.push_back(s.nodes[i].term);
  return build_cost(table, s.nodes[index].term, received);
}

Substitution fresh_grounding(const std::set<Term>& vars) {
  Substitution out;
  std::map<std::string, int> used;
  for (const auto& v : vars) {
    if (!v.is_variable()) continue;
    if (v.sort() == Sort::Agent) {
      out.bind(v, Term::attacker());
      continue;
    }
    std::string name = "i_" + v.name();
    int n = used[name]++;
    if (n > 0) name += std::to_string(n + 1);
    out.bind(v, Term::atom(name, v.sort()));
  }
  return out;
}

}  // namespace dbsolve
