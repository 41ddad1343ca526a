#pragma once

#include <string>
#include <vector>

#include "dbsolve/geometry.hpp"
#include "dbsolve/strand.hpp"

namespace dbsolve {

struct MessageEdge {
  NodeId from;
  NodeId to;
  Rational weight;

  friend bool operator==(const MessageEdge&, const MessageEdge&) = default;
};

// A timed execution: regular strands plus one penetrator strand.
struct Bundle {
  std::vector<Strand> strands;
  std::vector<MessageEdge> edges;
  int penetrator = -1;
  // Rule trace charged to the penetrator send node at index i.
  std::map<std::size_t, std::vector<RuleStep>> penetrator_traces;

  const Node& node(NodeId id) const;
  bool has_node(NodeId id) const;
  const Strand& penetrator_strand() const { return strands.at(static_cast<std::size_t>(penetrator)); }
  std::vector<NodeId> node_ids() const;
  // Incoming message edge of a - node, if any.
  const MessageEdge* incoming(NodeId id) const;
  const MessageEdge* outgoing(NodeId id) const;
};

// Receive-compute-send triple on the penetrator strand.
struct PenetratorAction {
  MessageEdge in;
  NodeId receive;
  NodeId send;
  Rational weight;
  std::vector<RuleStep> trace;
  MessageEdge out;
};

std::vector<PenetratorAction> penetrator_actions(const Bundle& b);
bool is_relay(const Bundle& b, const PenetratorAction& a);
bool is_simple_relay(const Bundle& b, const PenetratorAction& a);

// Reflexive-transitive closure of strand order and message edges.
bool precedes(const Bundle& b, NodeId n1, NodeId n2);

enum class RouteChoice { Unique, Min, Max };

// Sum of edge weights from n1 to n2. Throws std::invalid_argument when n1
// does not precede n2, or when several routes exist and `choice` is Unique.
Rational path_weight(const Bundle& b, NodeId n1, NodeId n2, RouteChoice choice = RouteChoice::Unique);

// Nodes in an order compatible with every edge; throws if the graph has a cycle.
std::vector<NodeId> topological_order(const Bundle& b);

// Structural and timing violations; empty when the bundle is well formed.
std::vector<std::string> validate(const Bundle& b);

// Every receive matched to a send of another strand, each message passed
// through a zero-weight penetrator relay. Throws when the roles cannot be
// matched under any substitution.
Bundle ideal_bundle(const SemiBundle& s, const NetworkGeometry& g, const CostTable& table = CostTable::defaults());

// The substitution the ideal matching found (for inspection in reports).
Substitution ideal_matching(const SemiBundle& s);

}  // namespace dbsolve
