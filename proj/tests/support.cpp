#include "support.hpp"

#include <sstream>
#include <stdexcept>

#include "dbsolve/run.hpp"

namespace dbsolve::oracle {

ProtocolSpec corpus_protocol(const std::string& name) {
  auto f = corpus_file(name);
  if (!f) throw std::runtime_error("no corpus file " + name);
  return parse_protocol(*f);
}

ScenarioConfig corpus_scenario(const std::string& name) {
  auto f = corpus_file(name);
  if (!f) throw std::runtime_error("no corpus file " + name);
  return parse_scenario(*f);
}

Deriver::Deriver(std::vector<Term> known, std::set<Term> compromised) : compromised_(std::move(compromised)) {
  closure_.insert(known.begin(), known.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Term> fresh;
    for (const auto& t : closure_) {
      switch (t.kind()) {
        case TermKind::Pair:
          fresh.push_back(t.arg(0));
          fresh.push_back(t.arg(1));
          break;
        case TermKind::AsymEnc:
          if (t.arg(1).kind() == TermKind::PublicKey && compromised_.contains(t.arg(1).arg(0))) fresh.push_back(t.arg(0));
          break;
        case TermKind::SymEnc:
          if (synth(t.arg(1))) fresh.push_back(t.arg(0));
          break;
        default:
          break;
      }
    }
    for (auto& t : fresh) grew |= closure_.insert(std::move(t)).second;
  }
}

bool Deriver::synth(const Term& t) const {
  if (closure_.contains(t)) return true;
  switch (t.kind()) {
    case TermKind::Pair:
    case TermKind::AsymEnc:
    case TermKind::SymEnc:
      return synth(t.arg(0)) && synth(t.arg(1));
    case TermKind::Hash:
      return synth(t.arg(0));
    case TermKind::Signature:
      return t.arg(1).kind() == TermKind::PublicKey && compromised_.contains(t.arg(1).arg(0)) && synth(t.arg(0));
    default:
      return false;
  }
}

bool Deriver::derivable(const Term& t) const { return synth(t); }

std::optional<std::string> replay(const ConstraintSequence& constraints, const AttackerKnowledge& k,
                                  const Solution& sol, const SemiBundle& s) {
  Substitution full = compose(sol.substitution, ground_residuals(s, sol));
  // Values the attacker picked for unconstrained variables are its own.
  std::vector<Term> own;
  for (const auto& [var, val] : full.bindings()) {
    std::set<Term> atoms;
    collect_atoms(val, atoms);
    for (const auto& a : atoms)
      if (a.name().rfind("i_", 0) == 0 || a.is_attacker()) own.push_back(a);
  }
  std::set<Term> compromised = k.compromised;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    std::vector<Term> known = own;
    for (const auto& m : c.known) known.push_back(full.apply(m.term));
    Term target = full.apply(c.target);
    if (!target.is_ground()) return "constraint " + std::to_string(i) + " target not ground: " + target.to_string();
    Deriver d(known, compromised);
    if (!d.derivable(target))
      return "constraint " + std::to_string(i) + ": " + target.to_string() + " not derivable";
    if (i < sol.traces.size()) {
      for (const auto& step : sol.traces[i]) {
        if (step.rule != Rule::Un) continue;
        Term held = full.apply(step.operands.at(1));
        // Keys opened by sdec join later term sets, so held means derivable.
        if (!d.derivable(held))
          return "constraint " + std::to_string(i) + ": un on " + held.to_string() + " which is not derivable";
      }
    }
  }
  return std::nullopt;
}

NetworkGeometry nspk_geometry() { return parse_scenario(*corpus_file("nspk.scn")).geometry; }

NspkRun nspk_lowe() {
  NspkRun r;
  ProtocolSpec spec = corpus_protocol("nspk.proto");
  SemiBundle base = protocol_semibundle(spec);
  r.semibundle = base.instantiate(Substitution{{Term::variable("B", Sort::Agent, 0), Term::attacker()}});
  r.merge.order = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}};
  r.knowledge = AttackerKnowledge::defaults(spec.agents(), spec.public_terms());
  r.constraints = build_constraints(r.semibundle, r.merge, r.knowledge);
  Solver solver(r.constraints, r.knowledge);
  r.solution = solver.next();
  if (r.solution) {
    Solution sol = *r.solution;
    sol.substitution = compose(sol.substitution, ground_residuals(r.semibundle, sol));
    r.bundle = produce_bundle(r.semibundle, r.merge, sol, nspk_geometry());
  }
  return r;
}

std::string corpus_transcript() {
  std::ostringstream all;
  for (const auto& c : corpus_cases()) {
    RunFlags flags;
    flags.all_traces = c.all_traces;
    std::ostringstream out, err;
    int code = run_analysis(*corpus_file(c.protocol), *corpus_file(c.scenario), flags, out, err);
    all << "== " << c.name << " exit " << code << "\n" << out.str() << err.str();
  }
  return all.str();
}

}  // namespace dbsolve::oracle
