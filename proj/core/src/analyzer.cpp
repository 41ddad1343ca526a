#include "dbsolve/analyzer.hpp"

#include <stdexcept>

namespace dbsolve {

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Violated: return "violated";
    case Comparison::Satisfied: return "satisfied";
    case Comparison::Boundary: return "boundary";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Violated: return "violated";
    case Status::Satisfied: return "satisfied";
    case Status::NoAttackFound: return "noAttackFound";
  }
  return "?";
}

Comparison verdict(const Rational& ideal_tof, const Rational& real_tof) {
  if (ideal_tof < 0 || real_tof < 0) throw std::invalid_argument("times of flight are non-negative");
  if (real_tof < ideal_tof) return Comparison::Violated;
  if (real_tof > ideal_tof) return Comparison::Satisfied;
  return Comparison::Boundary;
}

Bundle ideal_baseline(const ScenarioModel& m, const CostTable& table, Rational* tof) {
  Bundle b = ideal_bundle(m.ideal_source, m.ideal_geometry, table);
  if (tof) *tof = time_of_flight(b, m.request, m.response);
  return b;
}

ExploreStats explore(const ScenarioModel& m, const Rational& ideal_tof, const AnalysisOptions& options,
                     const std::function<Visit(const Candidate&)>& sink) {
  InterleavingOptions io;
  io.limit = options.max_interleavings;
  if (options.restricted) {
    io.sdb_mode = true;
    io.markers = std::make_pair(m.request, m.response);
    io.allowed_in_window = m.window;
  }
  SolverOptions so;
  so.tagged_origins = m.tagged;
  BundleOptions bo;
  bo.straight_relays = m.straight_relays;

  ExploreStats stats;
  InterleavingStream stream(m.semibundle, io);
  bool stop = false;
  while (!stop) {
    auto inter = stream.next();
    if (!inter) break;
    const std::size_t index = stats.interleavings++;
    Solver solver(build_constraints(m.semibundle, *inter, m.knowledge, m.policy), m.knowledge, so);
    for (std::size_t k = 0; k < options.max_solutions_per_interleaving; ++k) {
      auto sol = solver.next();
      if (!sol) break;
      ++stats.solutions;
      Candidate c;
      c.interleaving_index = index;
      c.interleaving = *inter;
      Substitution residual = ground_residuals(m.semibundle, *sol);
      sol->substitution = compose(sol->substitution, residual);
      c.solution = std::move(*sol);
      c.bundle = produce_bundle(m.semibundle, *inter, c.solution, m.geometry, options.table, bo);
      c.tof = time_of_flight(c.bundle, m.request, m.response);
      c.comparison = verdict(ideal_tof, c.tof);
      Visit next = sink(c);
      if (next == Visit::Stop) stop = true;
      if (next != Visit::Continue) break;
    }
  }
  stats.truncated = stream.truncated() && !stop;
  return stats;
}

std::vector<std::string> assumption_warnings(const Bundle& ideal, const SemiBundle& source) {
  std::vector<std::string> out;
  Rational turnaround = -1;
  std::string where;
  for (std::size_t si = 0; si < source.strands.size() && si < ideal.strands.size(); ++si) {
    const auto& s = source.strands[si];
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (s.nodes[i].sign != Sign::Minus || !s.nodes[i].has(kMarkDb)) continue;
      for (std::size_t j = i + 1; j < s.nodes.size(); ++j) {
        if (s.nodes[j].sign != Sign::Plus || !s.nodes[j].has(kMarkDb)) continue;
        Rational t = *ideal.strands[si].nodes[j].time - *ideal.strands[si].nodes[i].time;
        if (t > turnaround) {
          turnaround = t;
          where = s.name;
        }
        break;
      }
    }
  }
  if (turnaround < 0) return out;
  for (std::size_t si = 0; si < ideal.strands.size(); ++si) {
    const auto& s = ideal.strands[si];
    if (s.kind == StrandKind::Penetrator) continue;
    for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
      if (s.nodes[i + 1].sign != Sign::Plus || s.nodes[i + 1].has(kMarkDb)) continue;
      Rational w = s.weights.at(i);
      if (turnaround > w)
        out.push_back("prover turnaround " + to_string(turnaround) + " on " + where + " exceeds the construction time " +
                      to_string(w) + " of " + s.name + "." + std::to_string(i + 2));
    }
  }
  return out;
}

Verdict analyze(const ScenarioModel& m, const AnalysisOptions& options) {
  Verdict v;
  v.knowledge = m.knowledge;
  v.ideal = ideal_baseline(m, options.table, &v.ideal_tof);
  v.warnings = assumption_warnings(v.ideal, m.ideal_source);

  std::optional<Rational> best;
  ExploreStats stats = explore(m, v.ideal_tof, options, [&](const Candidate& c) {
    if (!best || c.tof < *best) best = c.tof;
    if (c.comparison == Comparison::Boundary) ++v.boundary;
    if (c.comparison != Comparison::Violated) return Visit::Continue;
    auto problems = validate(c.bundle);
    if (!problems.empty()) throw std::logic_error("witness bundle is malformed: " + problems.front());
    v.witnesses.push_back(c);
    return options.all_traces ? Visit::NextInterleaving : Visit::Stop;
  });
  v.interleavings = stats.interleavings;
  v.solutions = stats.solutions;
  v.truncated = stats.truncated;
  v.trace_count = static_cast<int>(v.witnesses.size());

  if (!v.witnesses.empty()) {
    v.status = Status::Violated;
    v.witness = v.witnesses.front().bundle;
    v.real_tof = v.witnesses.front().tof;
  } else {
    v.real_tof = best;
    v.status = v.solutions > 0 && v.boundary == 0 ? Status::Satisfied : Status::NoAttackFound;
  }
  if (v.truncated)
    v.warnings.push_back("interleaving limit of " + std::to_string(options.max_interleavings) +
                         " reached; the search is incomplete");
  return v;
}

Verdict check_closer(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options) {
  if (cfg.placement != Placement::Closer) throw std::invalid_argument("check_closer needs a closer placement");
  return analyze(scenario_semibundle(protocol, cfg), options);
}

Verdict check_farther(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options) {
  if (cfg.placement != Placement::Farther) throw std::invalid_argument("check_farther needs a farther placement");
  return analyze(scenario_semibundle(protocol, cfg), options);
}

Verdict check_scenario(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const AnalysisOptions& options) {
  return cfg.placement == Placement::Closer ? check_closer(protocol, cfg, options) : check_farther(protocol, cfg, options);
}

}  // namespace dbsolve
