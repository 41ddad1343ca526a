#include "properties.hpp"

#include <functional>
#include <map>

#include "dbsolve/report.hpp"
#include "dbsolve/solver.hpp"

namespace dbsolve::oracle {

namespace {

const Term kA = Term::atom("a", Sort::Agent);
const Term kB = Term::atom("b", Sort::Agent);
const Term kN = Term::atom("n", Sort::Nonce);
const Term kM = Term::atom("m", Sort::Nonce);
const Term kK = Term::atom("k", Sort::Key);

}  // namespace

Term TermGen::fresh(Sort sort, const std::string& prefix) {
  return Term::variable(prefix + std::to_string(counter_++), sort);
}

Term TermGen::agent(bool allow_var, const std::string& prefix) {
  switch (pick(allow_var ? 4 : 3)) {
    case 0: return kA;
    case 1: return kB;
    case 2: return Term::attacker();
    default: return fresh(Sort::Agent, prefix);
  }
}

Term TermGen::build(int depth, bool vars, const std::string& prefix) {
  if (depth <= 0 || coin(0.3)) {
    if (vars && coin(0.3)) {
      static const Sort sorts[] = {Sort::Generic, Sort::Nonce, Sort::Agent, Sort::Key};
      return fresh(sorts[pick(4)], prefix);
    }
    static const Term atoms[] = {kA, kB, kN, kM, kK};
    return atoms[pick(5)];
  }
  switch (pick(7)) {
    case 0: return Term::pair(build(depth - 1, vars, prefix), build(depth - 1, vars, prefix));
    case 1: return Term::public_key(agent(vars, prefix));
    case 2: return Term::shared_key(agent(vars, prefix), agent(vars, prefix));
    case 3: return Term::sym_enc(build(depth - 1, vars, prefix), build(depth - 1, vars, prefix));
    case 4: return Term::asym_enc(build(depth - 1, vars, prefix), build(depth - 1, vars, prefix));
    case 5: return Term::hash(build(depth - 1, vars, prefix));
    default: return Term::signature(build(depth - 1, vars, prefix), Term::public_key(agent(vars, prefix)));
  }
}

Term TermGen::ground(int depth) { return build(depth, false, ""); }
Term TermGen::open(int depth, const std::string& prefix) { return build(depth, true, prefix); }

Term TermGen::abstract(const Term& u, const std::string& prefix, double p) {
  if (coin(p)) {
    if (u.is_atomic() && u.sort() == Sort::Agent) return fresh(coin(0.5) ? Sort::Agent : Sort::Generic, prefix);
    if (u.is_key() && coin(0.5)) return fresh(Sort::Key, prefix);
    return fresh(Sort::Generic, prefix);
  }
  switch (u.kind()) {
    case TermKind::Pair: return Term::pair(abstract(u.arg(0), prefix, p), abstract(u.arg(1), prefix, p));
    case TermKind::SymEnc: return Term::sym_enc(abstract(u.arg(0), prefix, p), abstract(u.arg(1), prefix, p));
    case TermKind::AsymEnc: return Term::asym_enc(abstract(u.arg(0), prefix, p), abstract(u.arg(1), prefix, p));
    case TermKind::Hash: return Term::hash(abstract(u.arg(0), prefix, p));
    case TermKind::PublicKey:
      return coin(p) ? Term::public_key(fresh(Sort::Agent, prefix)) : u;
    case TermKind::SharedKey:
      return Term::shared_key(coin(p) ? fresh(Sort::Agent, prefix) : u.arg(0), coin(p) ? fresh(Sort::Agent, prefix) : u.arg(1));
    case TermKind::Signature:
      return Term::signature(abstract(u.arg(0), prefix, p),
                             coin(p) ? Term::public_key(fresh(Sort::Agent, prefix)) : u.arg(1));
    default: return u;
  }
}

bool matches(const Term& pattern, const Term& u, Substitution& theta) {
  if (pattern.is_variable()) {
    if (auto bound = theta.lookup(pattern)) return *bound == u;
    if (!sort_admits(pattern.sort(), u)) return false;
    theta.bind(pattern, u);
    return true;
  }
  if (pattern.kind() != u.kind()) return false;
  if (pattern.is_atomic()) return pattern == u;
  if (pattern.args().size() != u.args().size()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!matches(pattern.arg(i), u.arg(i), theta)) return false;
  return true;
}

namespace {

std::optional<std::string> check_unifier(const Term& s, const Term& t, const Substitution& sigma) {
  if (sigma.apply(s) != sigma.apply(t))
    return "unifier does not unify " + s.to_string() + " and " + t.to_string() + ": " + sigma.to_string();
  for (const auto& [var, val] : sigma.bindings()) {
    if (sigma.apply(val) != val) return "not idempotent: " + sigma.to_string();
    if (!sort_admits(var.sort(), val)) return "ill-sorted binding " + var.to_string() + " -> " + val.to_string();
  }
  return std::nullopt;
}

}  // namespace

PropertyResult unification_property(std::size_t pairs, std::uint64_t seed) {
  PropertyResult r;
  TermGen gen(seed);
  for (std::size_t i = 0; i < pairs && !r.failure; ++i) {
    ++r.cases;
    Term s, t;
    std::optional<Term> common;
    if (i % 2 == 0) {
      s = gen.open(3, "S");
      t = gen.open(3, "T");
    } else {
      Term u = gen.ground(4);
      s = gen.abstract(u, "S", 0.25);
      t = gen.abstract(u, "T", 0.25);
      common = u;
    }
    auto sigma = unify(s, t);
    auto back = unify(t, s);
    if (sigma.has_value() != back.has_value()) {
      r.failure = "unify not symmetric on " + s.to_string() + " / " + t.to_string();
      break;
    }
    if (s.is_ground() && t.is_ground() && sigma.has_value() != (s == t)) {
      r.failure = "ground unify disagrees with equality on " + s.to_string() + " / " + t.to_string();
      break;
    }
    if (common && !sigma) {
      r.failure = "no unifier for " + s.to_string() + " / " + t.to_string() + " with common instance " + common->to_string();
      break;
    }
    if (!sigma) continue;
    if (auto bad = check_unifier(s, t, *sigma)) r.failure = bad;
    else if (auto bad2 = check_unifier(t, s, *back)) r.failure = bad2;
    else if (common) {
      // Most general: the known common instance is an instance of the result.
      Substitution theta;
      if (!matches(sigma->apply(s), *common, theta))
        r.failure = "unifier of " + s.to_string() + " / " + t.to_string() + " is not most general: " + sigma->to_string();
    }
  }
  return r;
}

namespace {

struct Slot {
  Sign sign;
  Term term;
};

SemiBundle sequence_bundle(const std::vector<Slot>& seq, Interleaving& order) {
  SemiBundle s;
  Strand out{"x", "sender", Term::atom("x", Sort::Agent)};
  Strand in{"y", "receiver", Term::atom("y", Sort::Agent)};
  order.order.clear();
  for (const auto& slot : seq) {
    Strand& st = slot.sign == Sign::Plus ? out : in;
    int strand = slot.sign == Sign::Plus ? 0 : 1;
    NodeId id{strand, static_cast<int>(st.nodes.size())};
    st.nodes.push_back({id, slot.sign, slot.term, std::nullopt, kMarkNone});
    order.order.push_back(id);
  }
  s.strands = {out, in};
  return s;
}

AttackerKnowledge bare_knowledge() {
  AttackerKnowledge k;
  k.add(Term::attacker());
  return k;
}

bool derivable_sequence(const std::vector<Slot>& seq, const Substitution& g) {
  std::vector<Term> known{Term::attacker()};
  for (const auto& slot : seq) {
    Term t = g.apply(slot.term);
    if (slot.sign == Sign::Plus) {
      known.push_back(t);
      continue;
    }
    if (!t.is_ground() || !Deriver(known, {Term::attacker()}).derivable(t)) return false;
  }
  return true;
}

std::optional<std::string> compare(const std::vector<Slot>& seq, const std::vector<Term>& grounding_pool) {
  Interleaving order;
  SemiBundle s = sequence_bundle(seq, order);
  AttackerKnowledge k = bare_knowledge();
  ConstraintSequence cs = build_constraints(s, order, k);
  Solver solver(cs, k);
  auto sol = solver.next();

  auto describe = [&] {
    std::string out;
    for (const auto& slot : seq) out += std::string(1, sign_char(slot.sign)) + slot.term.to_string() + " ";
    return out;
  };
  std::set<Term> vars;
  s.collect_variables(vars);
  if (vars.empty()) {
    bool expected = derivable_sequence(seq, {});
    if (sol.has_value() != expected)
      return "solver says " + std::string(sol ? "sat" : "unsat") + " on " + describe();
    return std::nullopt;
  }
  if (sol) {
    if (auto bad = replay(cs, k, *sol, s)) return *bad + " on " + describe();
    return std::nullopt;
  }
  // No solution: no grounding of the variables from the pool may work either.
  std::vector<Term> vs(vars.begin(), vars.end());
  std::vector<std::size_t> idx(vs.size(), 0);
  while (true) {
    Substitution g;
    bool ok = true;
    for (std::size_t i = 0; i < vs.size() && ok; ++i) {
      if (!sort_admits(vs[i].sort(), grounding_pool[idx[i]])) ok = false;
      else g.bind(vs[i], grounding_pool[idx[i]]);
    }
    if (ok && derivable_sequence(seq, g)) return "solver missed grounding " + g.to_string() + " on " + describe();
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == grounding_pool.size()) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace

PropertyResult derivability_equivalence(std::size_t exhaustive_nodes, std::size_t max_nodes, std::size_t samples,
                                        std::uint64_t seed) {
  const Term a = Term::atom("a", Sort::Nonce);
  const Term k = Term::atom("k", Sort::Key);
  const std::vector<Term> pool{a,
                               k,
                               Term::pair(a, k),
                               Term::pair(k, a),
                               Term::sym_enc(a, k),
                               Term::sym_enc(k, a),
                               Term::hash(a),
                               Term::sym_enc(Term::pair(a, k), a)};
  PropertyResult r;
  std::vector<Slot> seq;
  std::function<void(std::size_t)> all = [&](std::size_t n) {
    if (r.failure) return;
    if (seq.size() == n) {
      ++r.cases;
      r.failure = compare(seq, pool);
      return;
    }
    for (Sign sign : {Sign::Plus, Sign::Minus})
      for (const auto& t : pool) {
        seq.push_back({sign, t});
        all(n);
        seq.pop_back();
        if (r.failure) return;
      }
  };
  for (std::size_t n = 1; n <= exhaustive_nodes && !r.failure; ++n) all(n);

  // Larger shapes: random depth-2 terms over the same atoms, some holding a
  // variable that later sends reuse.
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const Term x = Term::variable("X", Sort::Generic);
  std::function<Term(int, bool)> gen = [&](int depth, bool var) -> Term {
    if (depth == 0 || pick(3) == 0) {
      if (var && pick(4) == 0) return x;
      return pick(2) ? a : k;
    }
    switch (pick(3)) {
      case 0: return Term::pair(gen(depth - 1, var), gen(depth - 1, var));
      case 1: return Term::sym_enc(gen(depth - 1, var), gen(depth - 1, var));
      default: return Term::hash(gen(depth - 1, var));
    }
  };
  for (std::size_t i = 0; i < samples && !r.failure; ++i) {
    std::size_t n = exhaustive_nodes + 1 + pick(max_nodes - exhaustive_nodes);
    bool var = i % 2 == 1;
    seq.clear();
    // A variable enters through a receive before any send may reuse it.
    bool introduced = false;
    for (std::size_t j = 0; j < n; ++j) {
      Sign sign = pick(2) ? Sign::Plus : Sign::Minus;
      Term t = gen(2, var && (sign == Sign::Minus || introduced));
      if (sign == Sign::Minus && occurs(x, t)) introduced = true;
      seq.push_back({sign, t});
    }
    ++r.cases;
    r.failure = compare(seq, pool);
  }
  return r;
}

std::optional<std::string> bundle_invariants(const Bundle& b) {
  std::map<NodeId, const Node*> nodes;
  for (std::size_t si = 0; si < b.strands.size(); ++si) {
    const auto& s = b.strands[si];
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      const Node& n = s.nodes[i];
      if (!n.time) return "untimed node on " + s.name;
      if (!n.term.is_ground()) return "non-ground term " + n.term.to_string();
      nodes[{static_cast<int>(si), static_cast<int>(i)}] = &n;
      if (i + 1 < s.nodes.size()) {
        auto w = s.weights.find(i);
        if (w == s.weights.end()) return "missing strand weight on " + s.name;
        if (w->second < 0) return "negative strand weight on " + s.name;
        if (*s.nodes[i + 1].time - *n.time != w->second) return "strand weight disagrees with clocks on " + s.name;
      }
    }
  }
  std::map<NodeId, int> incoming;
  std::multimap<NodeId, NodeId> succ;
  for (const auto& e : b.edges) {
    auto f = nodes.find(e.from);
    auto t = nodes.find(e.to);
    if (f == nodes.end() || t == nodes.end()) return "edge to a missing node";
    if (f->second->sign != Sign::Plus || t->second->sign != Sign::Minus) return "edge not from + to -";
    if (f->second->term != t->second->term) return "edge changes the term " + f->second->term.to_string();
    if (e.weight < 0) return "negative message weight";
    if (*t->second->time - *f->second->time != e.weight) return "message weight disagrees with clocks";
    ++incoming[e.to];
    succ.emplace(e.from, e.to);
  }
  for (const auto& [id, n] : nodes) {
    if (n->sign == Sign::Minus && incoming[id] != 1) return "receive without exactly one sender";
    if (static_cast<std::size_t>(id.index + 1) < b.strands[static_cast<std::size_t>(id.strand)].nodes.size())
      succ.emplace(id, NodeId{id.strand, id.index + 1});
  }
  // Acyclicity by three-colour DFS.
  std::map<NodeId, int> colour;
  std::function<bool(NodeId)> cyclic = [&](NodeId v) {
    colour[v] = 1;
    auto [lo, hi] = succ.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      int c = colour[it->second];
      if (c == 1 || (c == 0 && cyclic(it->second))) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (const auto& [id, n] : nodes)
    if (colour[id] == 0 && cyclic(id)) return "cycle through " + node_label(b, id);
  return std::nullopt;
}

CorpusProperties corpus_properties(std::size_t max_solutions_per_interleaving) {
  CorpusProperties out;
  for (const auto& c : corpus_cases()) {
    ScenarioModel m = scenario_semibundle(corpus_protocol(c.protocol), corpus_scenario(c.scenario));
    Rational ideal;
    Bundle ib = ideal_baseline(m, CostTable::defaults(), &ideal);
    ++out.bundles.cases;
    if (!out.bundles.failure)
      if (auto bad = bundle_invariants(ib)) out.bundles.failure = c.name + " ideal: " + *bad;
    AnalysisOptions o;
    o.max_solutions_per_interleaving = max_solutions_per_interleaving;
    explore(m, ideal, o, [&](const Candidate& cand) {
      ++out.replay.cases;
      ++out.bundles.cases;
      if (!out.replay.failure) {
        auto cs = build_constraints(m.semibundle, cand.interleaving, m.knowledge, m.policy);
        if (auto bad = replay(cs, m.knowledge, cand.solution, m.semibundle))
          out.replay.failure = c.name + " interleaving " + std::to_string(cand.interleaving_index) + ": " + *bad;
      }
      if (!out.bundles.failure) {
        if (auto bad = bundle_invariants(cand.bundle)) out.bundles.failure = c.name + ": " + *bad;
        else if (auto v = validate(cand.bundle); !v.empty()) out.bundles.failure = c.name + ": " + v.front();
      }
      return Visit::Continue;
    });
  }
  return out;
}

PropertyResult determinism() {
  PropertyResult r;
  r.cases = 1;
  std::string first = corpus_transcript();
  std::string second = corpus_transcript();
  if (first != second) r.failure = "two corpus runs differ";
  else if (first.empty()) r.failure = "empty transcript";
  return r;
}

}  // namespace dbsolve::oracle
