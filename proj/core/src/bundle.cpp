#include "dbsolve/bundle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace dbsolve {

namespace {

std::string id_str(NodeId id) { return "(" + std::to_string(id.strand) + "," + std::to_string(id.index) + ")"; }

struct Graph {
  std::map<NodeId, std::vector<std::pair<NodeId, Rational>>> succ;
  std::map<NodeId, int> indegree;
};

Rational strand_weight(const Strand& s, std::size_t i) {
  auto it = s.weights.find(i);
  if (it != s.weights.end()) return it->second;
  const auto& a = s.nodes[i].time;
  const auto& b = s.nodes[i + 1].time;
  if (a && b) return *b - *a;
  return 0;
}

Graph build_graph(const Bundle& b) {
  Graph g;
  for (const auto& id : b.node_ids()) {
    g.succ[id];
    g.indegree[id];
  }
  for (std::size_t si = 0; si < b.strands.size(); ++si) {
    const auto& s = b.strands[si];
    for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
      NodeId from{static_cast<int>(si), static_cast<int>(i)};
      NodeId to{static_cast<int>(si), static_cast<int>(i + 1)};
      g.succ[from].emplace_back(to, strand_weight(s, i));
      g.indegree[to]++;
    }
  }
  for (const auto& e : b.edges) {
    if (!b.has_node(e.from) || !b.has_node(e.to)) continue;
    g.succ[e.from].emplace_back(e.to, e.weight);
    g.indegree[e.to]++;
  }
  return g;
}

}  // namespace

bool Bundle::has_node(NodeId id) const {
  return id.strand >= 0 && static_cast<std::size_t>(id.strand) < strands.size() && id.index >= 0 &&
         static_cast<std::size_t>(id.index) < strands[static_cast<std::size_t>(id.strand)].nodes.size();
}

const Node& Bundle::node(NodeId id) const {
  if (!has_node(id)) throw std::invalid_argument("unknown node " + id_str(id));
  return strands[static_cast<std::size_t>(id.strand)].nodes[static_cast<std::size_t>(id.index)];
}

std::vector<NodeId> Bundle::node_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < strands.size(); ++i)
    for (std::size_t j = 0; j < strands[i].nodes.size(); ++j)
      out.push_back({static_cast<int>(i), static_cast<int>(j)});
  return out;
}

const MessageEdge* Bundle::incoming(NodeId id) const {
  for (const auto& e : edges)
    if (e.to == id) return &e;
  return nullptr;
}

const MessageEdge* Bundle::outgoing(NodeId id) const {
  for (const auto& e : edges)
    if (e.from == id) return &e;
  return nullptr;
}

std::vector<PenetratorAction> penetrator_actions(const Bundle& b) {
  std::vector<PenetratorAction> out;
  if (b.penetrator < 0) return out;
  const auto& pen = b.penetrator_strand();
  for (std::size_t i = 0; i + 1 < pen.nodes.size(); ++i) {
    const auto& r = pen.nodes[i];
    const auto& s = pen.nodes[i + 1];
    if (r.sign != Sign::Minus || s.sign != Sign::Plus) continue;
    const auto* in = b.incoming(r.id);
    const auto* outgoing = b.outgoing(s.id);
    if (!in || !outgoing) continue;
    PenetratorAction a;
    a.in = *in;
    a.receive = r.id;
    a.send = s.id;
    a.weight = strand_weight(pen, i);
    if (auto it = b.penetrator_traces.find(i + 1); it != b.penetrator_traces.end()) a.trace = it->second;
    a.out = *outgoing;
    out.push_back(std::move(a));
  }
  return out;
}

bool is_relay(const Bundle& b, const PenetratorAction& a) {
  const Term& t1 = b.node(a.in.from).term;
  return t1 == b.node(a.receive).term && t1 == b.node(a.send).term && t1 == b.node(a.out.to).term;
}

bool is_simple_relay(const Bundle& b, const PenetratorAction& a) { return is_relay(b, a) && a.weight == 0; }

bool precedes(const Bundle& b, NodeId n1, NodeId n2) {
  if (!b.has_node(n1)) throw std::invalid_argument("unknown node " + id_str(n1));
  if (!b.has_node(n2)) throw std::invalid_argument("unknown node " + id_str(n2));
  if (n1 == n2) return true;
  Graph g = build_graph(b);
  std::set<NodeId> seen{n1};
  std::deque<NodeId> queue{n1};
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    for (const auto& [next, w] : g.succ[cur]) {
      if (next == n2) return true;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

std::vector<NodeId> topological_order(const Bundle& b) {
  Graph g = build_graph(b);
  std::vector<NodeId> order;
  std::set<NodeId> ready;
  for (const auto& [id, d] : g.indegree)
    if (d == 0) ready.insert(id);
  while (!ready.empty()) {
    NodeId cur = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(cur);
    for (const auto& [next, w] : g.succ[cur])
      if (--g.indegree[next] == 0) ready.insert(next);
  }
  if (order.size() != g.indegree.size()) throw std::invalid_argument("bundle graph has a cycle");
  return order;
}

Rational path_weight(const Bundle& b, NodeId n1, NodeId n2, RouteChoice choice) {
  if (!precedes(b, n1, n2)) throw std::invalid_argument(id_str(n1) + " does not precede " + id_str(n2));
  if (n1 == n2) return 0;
  Graph g = build_graph(b);
  struct Acc {
    std::int64_t routes = 0;
    Rational lo, hi;
  };
  std::map<NodeId, Acc> acc;
  acc[n1] = {1, 0, 0};
  for (const auto& cur : topological_order(b)) {
    auto it = acc.find(cur);
    if (it == acc.end()) continue;
    Acc here = it->second;
    for (const auto& [next, w] : g.succ[cur]) {
      auto& a = acc[next];
      if (a.routes == 0) {
        a = {here.routes, here.lo + w, here.hi + w};
      } else {
        a.routes += here.routes;
        a.lo = std::min(a.lo, here.lo + w);
        a.hi = std::max(a.hi, here.hi + w);
      }
    }
  }
  const Acc& end = acc.at(n2);
  if (choice == RouteChoice::Unique && end.routes > 1)
    throw std::invalid_argument("several routes from " + id_str(n1) + " to " + id_str(n2) + "; choose min or max");
  return choice == RouteChoice::Max ? end.hi : end.lo;
}

std::vector<std::string> validate(const Bundle& b) {
  std::vector<std::string> problems;
  int penetrators = 0;
  for (std::size_t si = 0; si < b.strands.size(); ++si)
    if (b.strands[si].kind == StrandKind::Penetrator) {
      ++penetrators;
      if (static_cast<int>(si) != b.penetrator) problems.push_back("penetrator strand index mismatch");
    }
  if (penetrators != 1) problems.push_back("expected exactly one penetrator strand, found " + std::to_string(penetrators));

  try {
    topological_order(b);
  } catch (const std::invalid_argument&) {
    problems.push_back("bundle graph is cyclic");
  }

  for (const auto& id : b.node_ids()) {
    const auto& n = b.node(id);
    if (!(n.id == id)) problems.push_back("node id mismatch at " + id_str(id));
    if (!n.time) problems.push_back("node " + id_str(id) + " has no time");
    if (!n.term.is_ground()) problems.push_back("node " + id_str(id) + " carries non-ground " + n.term.to_string());
    int in = 0, out = 0;
    for (const auto& e : b.edges) {
      if (e.to == id) {
        ++in;
        if (b.has_node(e.from) && !(b.node(e.from).term == n.term))
          problems.push_back("edge into " + id_str(id) + " carries a different term");
      }
      if (e.from == id) ++out;
    }
    if (n.sign == Sign::Minus && in != 1)
      problems.push_back("receive " + id_str(id) + " has " + std::to_string(in) + " incoming edges");
    if (n.sign == Sign::Plus && in != 0) problems.push_back("send " + id_str(id) + " has an incoming edge");
    if (n.sign == Sign::Minus && out != 0) problems.push_back("receive " + id_str(id) + " has an outgoing edge");
  }

  for (const auto& e : b.edges) {
    if (!b.has_node(e.from) || !b.has_node(e.to)) {
      problems.push_back("edge references unknown node");
      continue;
    }
    if (e.weight < 0) problems.push_back("negative edge weight");
    const auto& f = b.node(e.from);
    const auto& t = b.node(e.to);
    if (f.sign != Sign::Plus || t.sign != Sign::Minus) problems.push_back("edge " + id_str(e.from) + " -> " + id_str(e.to) + " is not send to receive");
    if (f.time && t.time && *t.time != *f.time + e.weight)
      problems.push_back("edge " + id_str(e.from) + " -> " + id_str(e.to) + " weight disagrees with node times");
  }

  for (const auto& s : b.strands) {
    for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
      auto it = s.weights.find(i);
      if (it == s.weights.end()) {
        problems.push_back("strand " + s.name + " lacks weight for edge " + std::to_string(i));
        continue;
      }
      if (it->second < 0) problems.push_back("strand " + s.name + " has a negative weight");
      const auto& a = s.nodes[i].time;
      const auto& c = s.nodes[i + 1].time;
      if (a && c && *c != *a + it->second)
        problems.push_back("strand " + s.name + " edge " + std::to_string(i) + " weight disagrees with node times");
    }
  }
  return problems;
}

}  // namespace dbsolve
