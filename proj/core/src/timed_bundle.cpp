#include "dbsolve/timed_bundle.hpp"

#include <stdexcept>

namespace dbsolve {

Substitution ground_residuals(const SemiBundle& s, const Solution& sol) {
  std::set<Term> vars;
  s.instantiate(sol.substitution).collect_variables(vars);
  for (const auto& trace : sol.traces)
    for (const auto& step : trace)
      for (const auto& t : step.operands) collect_variables(sol.substitution.apply(t), vars);
  return fresh_grounding(vars);
}

Bundle produce_bundle(const SemiBundle& s, const Interleaving& inter, const Solution& sol, const NetworkGeometry& g,
                      const CostTable& table, const BundleOptions& options) {
  if (inter.order.size() != s.node_count()) throw std::invalid_argument("interleaving does not cover the semi-bundle");
  std::size_t receives = 0;
  for (const auto& id : inter.order)
    if (s.node(id).sign == Sign::Minus) ++receives;
  if (sol.traces.size() != receives) throw std::invalid_argument("solution does not match the interleaving");

  Bundle b;
  b.strands = s.instantiate(sol.substitution).strands;
  for (auto& st : b.strands) {
    st.kind = StrandKind::Regular;
    for (auto& n : st.nodes) {
      n.time.reset();
      if (!n.term.is_ground()) throw std::invalid_argument("non-ground term after substitution: " + n.term.to_string());
    }
    if (!st.agent.is_ground()) throw std::invalid_argument("strand agent left unbound: " + st.agent.to_string());
  }

  Strand pen;
  pen.name = "e";
  pen.role = "penetrator";
  pen.agent = Term::attacker();
  pen.kind = StrandKind::Penetrator;
  const int pid = static_cast<int>(b.strands.size());
  const std::string eps = location_of(Term::attacker());

  Rational pen_clock = 0;
  Rational now = 0;
  std::size_t constraint = 0;
  auto node_at = [&](NodeId id) -> Node& {
    return b.strands[static_cast<std::size_t>(id.strand)].nodes[static_cast<std::size_t>(id.index)];
  };
  auto add_pen = [&](Sign sign, const Term& t, Rational at) {
    NodeId id{pid, static_cast<int>(pen.nodes.size())};
    pen.nodes.push_back({id, sign, t, at, kMarkNone});
    pen_clock = at;
    now = std::max(now, at);
    return id;
  };

  for (const auto& id : inter.order) {
    auto& strand = b.strands[static_cast<std::size_t>(id.strand)];
    auto idx = static_cast<std::size_t>(id.index);
    Node& n = node_at(id);
    const std::string here = location_of(strand.agent);

    if (n.sign == Sign::Plus) {
      Rational base = idx == 0 ? now : *strand.nodes[idx - 1].time;
      n.time = base + preset_weight(strand, idx, table);
      now = std::max(now, *n.time);
      Rational arrival = *n.time + traversal_time(g, n.term, here, eps);
      NodeId e = add_pen(Sign::Minus, n.term, std::max(pen_clock, arrival));
      b.edges.push_back({id, e, *pen.nodes.back().time - *n.time});
      continue;
    }

    const auto& trace = sol.traces[constraint++];
    std::vector<RuleStep> ground_trace;
    for (const auto& step : trace) {
      RuleStep gs = step;
      for (auto& t : gs.operands) {
        t = sol.substitution.apply(t);
        if (!t.is_ground()) throw std::invalid_argument("non-ground rule operand: " + t.to_string());
      }
      ground_trace.push_back(std::move(gs));
    }

    Rational ready = idx == 0 ? Rational(0) : *strand.nodes[idx - 1].time;
    bool direct = options.straight_relays && ground_trace.size() == 1 && ground_trace[0].rule == Rule::Un &&
                  ground_trace[0].source.valid() && ground_trace[0].source.strand != pid;
    if (direct) {
      NodeId from = ground_trace[0].source;
      const Node& sender = node_at(from);
      if (!sender.time) throw std::invalid_argument("relayed send has not happened yet");
      const auto& ss = b.strands[static_cast<std::size_t>(from.strand)];
      Rational arrival = *sender.time + traversal_time(g, n.term, location_of(ss.agent), here);
      n.time = idx == 0 ? arrival : std::max(ready, arrival);
      b.edges.push_back({from, id, *n.time - *sender.time});
    } else {
      Rational delta = trace_cost(table, ground_trace);
      NodeId e = add_pen(Sign::Plus, n.term, pen_clock + delta);
      b.penetrator_traces[static_cast<std::size_t>(e.index)] = std::move(ground_trace);
      Rational sent = *pen.nodes.back().time;
      Rational arrival = sent + traversal_time(g, n.term, eps, here);
      n.time = idx == 0 ? arrival : std::max(ready, arrival);
      b.edges.push_back({e, id, *n.time - sent});
    }
    now = std::max(now, *n.time);
  }

  for (auto& st : b.strands) {
    st.weights.clear();
    for (std::size_t i = 0; i + 1 < st.nodes.size(); ++i) st.weights[i] = *st.nodes[i + 1].time - *st.nodes[i].time;
  }
  for (std::size_t i = 0; i + 1 < pen.nodes.size(); ++i) pen.weights[i] = *pen.nodes[i + 1].time - *pen.nodes[i].time;
  b.strands.push_back(std::move(pen));
  b.penetrator = pid;
  return b;
}

Rational time_of_flight(const Bundle& b, NodeId request, NodeId response) {
  const Node& rq = b.node(request);
  const Node& rs = b.node(response);
  if (request.strand != response.strand) throw std::invalid_argument("request and response lie on different strands");
  if (rq.sign != Sign::Plus || rs.sign != Sign::Minus)
    throw std::invalid_argument("request must be a send and response a receive");
  if (request.index >= response.index) throw std::invalid_argument("response precedes request");
  const Strand& v = b.strands[static_cast<std::size_t>(request.strand)];
  Rational total = 0;
  for (int i = request.index; i < response.index; ++i) total += v.weights.at(static_cast<std::size_t>(i));
  return total;
}

}  // namespace dbsolve
