#include "dbsolve/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbsolve {

namespace {

void serialize(const Term& t, std::string& out) {
  out += static_cast<char>('a' + static_cast<int>(t.kind()));
  if (t.is_atomic()) {
    out += t.name();
    if (t.is_variable()) {
      out += '#';
      out += std::to_string(t.scope());
    }
    return;
  }
  out += '(';
  for (const auto& a : t.args()) {
    serialize(a, out);
    out += ',';
  }
  out += ')';
}

std::string state_key(const SolverState& s) {
  std::string out;
  for (const auto& c : s.constraints) {
    out += std::to_string(c.source_index);
    out += static_cast<char>('0' + static_cast<int>(c.policy));
    serialize(c.target, out);
    out += ':';
    for (const auto& k : c.known) {
      serialize(k.term, out);
      out += '@';
      out += std::to_string(k.origin);
      out += ';';
    }
    out += '|';
  }
  for (const auto& [var, val] : s.sigma.bindings()) {
    serialize(var, out);
    out += '=';
    serialize(val, out);
    out += ';';
  }
  return out;
}

void apply_everywhere(SolverState& s, const Substitution& tau) {
  if (tau.empty()) return;
  for (auto& c : s.constraints) {
    c.target = tau.apply(c.target);
    for (auto& k : c.known) k.term = tau.apply(k.term);
  }
  s.sigma = compose(s.sigma, tau);
}

void charge(SolverState& s, std::size_t source, RuleStep step, const SolverOptions& o) {
  if (++s.steps[source] > o.depth_limit)
    throw std::runtime_error("reduction depth limit (" + std::to_string(o.depth_limit) + ") exceeded on constraint " +
                             std::to_string(source));
  s.traces[source].push_back(std::move(step));
}

// Replaces member `j` of constraint `ci` and the identical member of every
// later constraint, so a decomposition is paid for once.
void decompose(SolverState& s, std::size_t ci, std::size_t j, const std::vector<KnownTerm>& parts) {
  const KnownTerm old = s.constraints[ci].known[j];
  for (std::size_t c = ci; c < s.constraints.size(); ++c) {
    auto& known = s.constraints[c].known;
    auto it = std::find(known.begin(), known.end(), old);
    if (it == known.end()) continue;
    it = known.erase(it);
    for (const auto& p : parts) {
      if (std::find(known.begin(), known.end(), p) != known.end()) continue;
      it = known.insert(it, p);
      ++it;
    }
  }
}

bool tagged(const KnownTerm& k, const SolverOptions& o) { return k.origin >= 0 && o.tagged_origins.contains(k.origin); }

std::vector<Term> compromised_keys(const AttackerKnowledge& k) {
  std::vector<Term> out;
  for (const auto& a : k.compromised) out.push_back(Term::public_key(a));
  return out;
}

}  // namespace

std::optional<std::size_t> active_constraint(const ConstraintSequence& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].simple() || c[i].policy == BindPolicy::RelayFromTagged) return i;
  return std::nullopt;
}

std::vector<SolverState> reduce(const SolverState& in, const AttackerKnowledge& know, const SolverOptions& o) {
  std::vector<SolverState> out;
  auto active = active_constraint(in.constraints);
  if (!active) return out;
  const std::size_t ci = *active;

  // (elim): standalone variables in the term set carry no information.
  SolverState base = in;
  {
    auto& c = base.constraints[ci];
    bool relay = c.policy == BindPolicy::RelayFromTagged;
    std::erase_if(c.known, [&](const KnownTerm& k) { return k.term.is_variable() && !(relay && tagged(k, o)); });
  }
  const Constraint c = base.constraints[ci];
  const Term& m = c.target;
  const std::size_t src = c.source_index;
  const auto keys = compromised_keys(know);

  auto without_active = [&]() {
    SolverState s = base;
    s.constraints.erase(s.constraints.begin() + static_cast<std::ptrdiff_t>(ci));
    return s;
  };
  auto replace_active = [&](std::vector<Term> targets) {
    SolverState s = base;
    auto pos = s.constraints.erase(s.constraints.begin() + static_cast<std::ptrdiff_t>(ci));
    for (auto it = targets.rbegin(); it != targets.rend(); ++it) {
      Constraint n = c;
      n.target = *it;
      pos = s.constraints.insert(pos, std::move(n));
    }
    return s;
  };

  // (un)
  for (const auto& member : c.known) {
    bool is_tagged = tagged(member, o);
    if (c.policy == BindPolicy::RelayFromTagged && !is_tagged) continue;
    auto tau = unify(m, member.term);
    if (!tau) continue;
    if (c.policy == BindPolicy::NoTaggedBinding && is_tagged && !tau->empty()) continue;
    SolverState s = without_active();
    charge(s, src, {Rule::Un, {m, member.term}, member.source}, o);
    apply_everywhere(s, *tau);
    out.push_back(std::move(s));
  }
  if (c.policy == BindPolicy::RelayFromTagged) return out;

  switch (m.kind()) {
    case TermKind::Pair: {
      SolverState s = replace_active({m.arg(0), m.arg(1)});
      charge(s, src, {Rule::Pair, {m.arg(0), m.arg(1)}, {}}, o);
      out.push_back(std::move(s));
      break;
    }
    case TermKind::Hash: {
      SolverState s = replace_active({m.arg(0)});
      charge(s, src, {Rule::Hash, {m.arg(0)}, {}}, o);
      out.push_back(std::move(s));
      break;
    }
    case TermKind::AsymEnc: {
      SolverState s = replace_active({m.arg(1), m.arg(0)});
      charge(s, src, {Rule::Penc, {m.arg(0), m.arg(1)}, {}}, o);
      out.push_back(std::move(s));
      break;
    }
    case TermKind::SymEnc: {
      SolverState s = replace_active({m.arg(1), m.arg(0)});
      charge(s, src, {Rule::Senc, {m.arg(0), m.arg(1)}, {}}, o);
      out.push_back(std::move(s));
      break;
    }
    default:
      break;
  }

  // (sig): the attacker signs with any key it holds.
  if (m.kind() == TermKind::Signature) {
    for (const auto& key : keys) {
      auto tau = unify(m.arg(1), key);
      if (!tau) continue;
      SolverState s = replace_active({m.arg(0)});
      charge(s, src, {Rule::Sig, {m.arg(0), key}, {}}, o);
      apply_everywhere(s, *tau);
      out.push_back(std::move(s));
    }
  }

  // (split) on the first pair in the term set.
  for (std::size_t j = 0; j < c.known.size(); ++j) {
    const auto& member = c.known[j];
    if (member.term.kind() != TermKind::Pair) continue;
    SolverState s = base;
    decompose(s, ci, j,
              {{member.term.arg(0), member.origin, member.source}, {member.term.arg(1), member.origin, member.source}});
    charge(s, src, {Rule::Split, {member.term.arg(0), member.term.arg(1)}, {}}, o);
    out.push_back(std::move(s));
    break;
  }

  // (pdec) on the first ciphertext under a compromised key.
  for (std::size_t j = 0; j < c.known.size(); ++j) {
    const auto& member = c.known[j];
    if (member.term.kind() != TermKind::AsymEnc) continue;
    const Term& key = member.term.arg(1);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) continue;
    SolverState s = base;
    decompose(s, ci, j, {{member.term.arg(0), member.origin, member.source}});
    charge(s, src, {Rule::Pdec, {member.term.arg(0), key}, {}}, o);
    out.push_back(std::move(s));
    break;
  }

  // (ksub): make a ciphertext's key one the attacker holds.
  for (const auto& member : c.known) {
    if (member.term.kind() != TermKind::AsymEnc) continue;
    if (c.policy == BindPolicy::NoTaggedBinding && tagged(member, o)) continue;
    const Term& key = member.term.arg(1);
    for (const auto& ck : keys) {
      if (key == ck) continue;
      auto tau = unify(key, ck);
      if (!tau) continue;
      SolverState s = base;
      charge(s, src, {Rule::Ksub, {key, ck}, {}}, o);
      apply_everywhere(s, *tau);
      out.push_back(std::move(s));
    }
  }

  // (sdec): a new key obligation, then the body and key join the set.
  for (std::size_t j = 0; j < c.known.size(); ++j) {
    const auto& member = c.known[j];
    if (member.term.kind() != TermKind::SymEnc) continue;
    const Term& body = member.term.arg(0);
    const Term& key = member.term.arg(1);
    SolverState s = base;
    Constraint key_goal = c;
    key_goal.target = key;
    key_goal.known.erase(key_goal.known.begin() + static_cast<std::ptrdiff_t>(j));
    decompose(s, ci, j, {{body, member.origin, member.source}, {key, member.origin, member.source}});
    s.constraints.insert(s.constraints.begin() + static_cast<std::ptrdiff_t>(ci), std::move(key_goal));
    charge(s, src, {Rule::Sdec, {body, key}, {}}, o);
    out.push_back(std::move(s));
  }
  return out;
}

Solver::Solver(ConstraintSequence constraints, AttackerKnowledge knowledge, SolverOptions options)
    : knowledge_(std::move(knowledge)), options_(std::move(options)) {
  SolverState init;
  std::size_t n = 0;
  for (const auto& c : constraints) n = std::max(n, c.source_index + 1);
  init.traces.resize(n);
  init.steps.resize(n, 0);
  init.constraints = std::move(constraints);
  stack_.push_back(std::move(init));
}

std::optional<Solution> Solver::next() {
  while (!stack_.empty()) {
    SolverState s = std::move(stack_.back());
    stack_.pop_back();
    if (!seen_.insert(state_key(s)).second) continue;
    ++explored_;
    if (!active_constraint(s.constraints)) {
      Solution sol;
      sol.substitution = std::move(s.sigma);
      sol.traces = std::move(s.traces);
      sol.remaining = std::move(s.constraints);
      return sol;
    }
    auto succ = reduce(s, knowledge_, options_);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) stack_.push_back(std::move(*it));
  }
  return std::nullopt;
}

std::vector<Solution> solve(const ConstraintSequence& c, const AttackerKnowledge& k, const SolverOptions& options,
                            std::size_t max_solutions) {
  Solver solver(c, k, options);
  std::vector<Solution> out;
  while (auto s = solver.next()) {
    out.push_back(std::move(*s));
    if (max_solutions && out.size() >= max_solutions) break;
  }
  return out;
}

}  // namespace dbsolve
