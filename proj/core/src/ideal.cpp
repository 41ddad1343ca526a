#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "dbsolve/bundle.hpp"

namespace dbsolve {

namespace {

struct Matching {
  Substitution sigma;
  std::map<NodeId, NodeId> sender_of;  // receive -> send
};

// Is `to` reachable from `from` over strand order plus chosen message edges?
bool reachable(const SemiBundle& s, const std::map<NodeId, NodeId>& sender_of, NodeId from, NodeId to) {
  std::multimap<NodeId, NodeId> msg;
  for (const auto& [r, snd] : sender_of) msg.emplace(snd, r);
  std::set<NodeId> seen;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (cur == to) return true;
    if (!seen.insert(cur).second) continue;
    const auto& strand = s.strands[static_cast<std::size_t>(cur.strand)];
    if (static_cast<std::size_t>(cur.index + 1) < strand.nodes.size()) stack.push_back({cur.strand, cur.index + 1});
    auto [lo, hi] = msg.equal_range(cur);
    for (auto it = lo; it != hi; ++it) stack.push_back(it->second);
  }
  return false;
}

std::optional<Matching> find_matching(const SemiBundle& s) {
  std::vector<NodeId> receivers, senders;
  for (const auto& id : s.node_ids()) (s.node(id).sign == Sign::Minus ? receivers : senders).push_back(id);

  Matching current;
  std::set<NodeId> used;
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == receivers.size()) return true;
    NodeId r = receivers[k];
    for (NodeId c : senders) {
      if (c.strand == r.strand || used.contains(c)) continue;
      auto next = unify(s.node(r).term, s.node(c).term, current.sigma);
      if (!next) continue;
      if (reachable(s, current.sender_of, r, c)) continue;
      Substitution saved = current.sigma;
      current.sigma = *next;
      current.sender_of[r] = c;
      used.insert(c);
      if (search(k + 1)) return true;
      used.erase(c);
      current.sender_of.erase(r);
      current.sigma = saved;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return current;
}

}  // namespace

Substitution ideal_matching(const SemiBundle& s) {
  auto m = find_matching(s);
  if (!m) throw std::invalid_argument("roles do not match under any substitution");
  return m->sigma;
}

Bundle ideal_bundle(const SemiBundle& s, const NetworkGeometry& g, const CostTable& table) {
  auto m = find_matching(s);
  if (!m) throw std::invalid_argument("roles do not match under any substitution");
  SemiBundle inst = s.instantiate(m->sigma);
  std::set<Term> residual;
  inst.collect_variables(residual);
  if (!residual.empty()) inst = inst.instantiate(fresh_grounding(residual));

  Bundle b;
  b.strands = inst.strands;
  for (auto& st : b.strands) {
    st.kind = StrandKind::Regular;
    for (auto& n : st.nodes) n.time.reset();
  }

  // Honest clocks in dependency order.
  std::map<NodeId, std::size_t> rank;
  {
    Bundle skeleton = b;
    for (const auto& [r, snd] : m->sender_of) skeleton.edges.push_back({snd, r, 0});
    auto order = topological_order(skeleton);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    for (const auto& id : order) {
      auto& strand = b.strands[static_cast<std::size_t>(id.strand)];
      auto idx = static_cast<std::size_t>(id.index);
      Node& n = strand.nodes[idx];
      if (n.sign == Sign::Plus) {
        Rational base = idx == 0 ? Rational(0) : *strand.nodes[idx - 1].time;
        n.time = base + preset_weight(strand, idx, table);
      } else {
        NodeId snd = m->sender_of.at(id);
        const auto& sender_strand = b.strands[static_cast<std::size_t>(snd.strand)];
        Rational arrival = *b.node(snd).time + traversal_time(g, n.term, location_of(sender_strand.agent),
                                                              location_of(strand.agent));
        n.time = idx == 0 ? arrival : std::max(*strand.nodes[idx - 1].time, arrival);
      }
    }
  }
  for (auto& st : b.strands) {
    st.weights.clear();
    for (std::size_t i = 0; i + 1 < st.nodes.size(); ++i) st.weights[i] = *st.nodes[i + 1].time - *st.nodes[i].time;
  }

  // One zero-weight relay per message.
  struct Relay {
    NodeId sender, receiver;
    Rational at;
  };
  std::vector<Relay> relays;
  for (const auto& [r, snd] : m->sender_of) {
    const auto& ss = b.strands[static_cast<std::size_t>(snd.strand)];
    const auto& rs = b.strands[static_cast<std::size_t>(r.strand)];
    Rational at = *b.node(snd).time + traversal_time(g, b.node(r).term, location_of(ss.agent), location_of(rs.agent));
    relays.push_back({snd, r, at});
  }
  std::sort(relays.begin(), relays.end(), [&](const Relay& x, const Relay& y) {
    if (x.at != y.at) return x.at < y.at;
    return rank.at(x.sender) < rank.at(y.sender);
  });

  Strand pen;
  pen.name = "e";
  pen.role = "penetrator";
  pen.agent = Term::attacker();
  pen.kind = StrandKind::Penetrator;
  int pid = static_cast<int>(b.strands.size());
  for (const auto& rl : relays) {
    const Term& t = b.node(rl.receiver).term;
    int ri = static_cast<int>(pen.nodes.size());
    pen.nodes.push_back({{pid, ri}, Sign::Minus, t, rl.at, kMarkNone});
    pen.nodes.push_back({{pid, ri + 1}, Sign::Plus, t, rl.at, kMarkNone});
    b.edges.push_back({rl.sender, {pid, ri}, rl.at - *b.node(rl.sender).time});
    b.edges.push_back({{pid, ri + 1}, rl.receiver, *b.node(rl.receiver).time - rl.at});
    b.penetrator_traces[static_cast<std::size_t>(ri + 1)] = {RuleStep{Rule::Un, {t, t}, rl.sender}};
  }
  for (std::size_t i = 0; i + 1 < pen.nodes.size(); ++i) pen.weights[i] = *pen.nodes[i + 1].time - *pen.nodes[i].time;
  b.strands.push_back(std::move(pen));
  b.penetrator = pid;
  return b;
}

}  // namespace dbsolve
