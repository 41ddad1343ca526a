#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dbsolve/cost.hpp"
#include "dbsolve/rational.hpp"
#include "dbsolve/rules.hpp"
#include "dbsolve/substitution.hpp"
#include "dbsolve/term.hpp"

namespace dbsolve {

enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// Protocol-level annotations carried by a node.
enum NodeMark : unsigned {
  kMarkNone = 0,
  kMarkRequest = 1u << 0,
  kMarkResponse = 1u << 1,
  kMarkDb = 1u << 2,
  kMarkAuth = 1u << 3,
};

struct Node {
  NodeId id;
  Sign sign = Sign::Plus;
  Term term;
  std::optional<Rational> time;
  unsigned marks = kMarkNone;

  bool has(NodeMark m) const { return (marks & m) != 0; }
};

enum class StrandKind { Regular, Penetrator };

struct Strand {
  std::string name;  // display name: v, p, p1, e
  std::string role;  // protocol role it instantiates
  Term agent;        // whose location the strand runs at
  StrandKind kind = StrandKind::Regular;
  std::vector<Node> nodes;
  // Weight of edge i => i+1. In a semi-bundle only preset (+ successor)
  // entries appear and may be left for the cost model to fill in.
  std::map<std::size_t, Rational> weights;

  std::size_t size() const { return nodes.size(); }
};

struct SemiBundle {
  std::vector<Strand> strands;

  const Node& node(NodeId id) const;
  std::size_t node_count() const;
  std::vector<NodeId> node_ids() const;
  bool contains_term(const Term& t) const;
  SemiBundle instantiate(const Substitution& s) const;
  void collect_variables(std::set<Term>& out) const;
};

// Honest construction cost of node `index` (a + node) on a ground strand: the
// cost table applied to everything the agent must build, where received
// material, atoms and keys are free. An explicit weight wins.
Rational preset_weight(const Strand& s, std::size_t index, const CostTable& table);

// Residual variables mapped to attacker-chosen values: agents to eps, anything
// else to a fresh atom i_<NAME> of the same sort.
Substitution fresh_grounding(const std::set<Term>& vars);

}  // namespace dbsolve
