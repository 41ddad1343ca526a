#include <gtest/gtest.h>

#include "dbsolve/solver.hpp"
#include "properties.hpp"

using namespace dbsolve;

namespace {

const Term a = Term::atom("a", Sort::Agent);
const Term b = Term::atom("b", Sort::Agent);
const Term n = Term::atom("n", Sort::Nonce);
const Term m = Term::atom("m", Sort::Nonce);
const Term k = Term::atom("k", Sort::Key);
const Term eps = Term::attacker();

AttackerKnowledge knows(std::vector<Term> terms) {
  AttackerKnowledge kn;
  for (auto& t : terms) kn.add(t);
  return kn;
}

Constraint goal(Term target, std::vector<Term> known, std::size_t index = 0) {
  Constraint c;
  c.target = std::move(target);
  for (auto& t : known) c.known.push_back({t, 0, {0, 0}});
  c.source_index = index;
  return c;
}

bool sat(const Term& target, std::vector<Term> known, const AttackerKnowledge& kn = knows({eps})) {
  return !solve({goal(target, std::move(known))}, kn, {}, 1).empty();
}

std::vector<Rule> rules_of(const std::vector<RuleStep>& trace) {
  std::vector<Rule> out;
  for (const auto& s : trace) out.push_back(s.rule);
  return out;
}

}  // namespace

TEST(Solver, SynthesisAndAnalysis) {
  EXPECT_TRUE(sat(Term::pair(n, m), {n, m}));
  EXPECT_FALSE(sat(Term::pair(n, m), {n}));
  EXPECT_TRUE(sat(n, {Term::pair(m, n)}));
  EXPECT_TRUE(sat(Term::hash(n), {n}));
  EXPECT_FALSE(sat(n, {Term::hash(n)}));
  EXPECT_TRUE(sat(n, {Term::sym_enc(n, k), k}));
  EXPECT_FALSE(sat(n, {Term::sym_enc(n, k)}));
  EXPECT_TRUE(sat(n, {Term::sym_enc(n, Term::pair(m, m)), m}));  // compound key built by the attacker
  EXPECT_TRUE(sat(n, {Term::asym_enc(n, Term::public_key(eps))}));
  EXPECT_FALSE(sat(n, {Term::asym_enc(n, Term::public_key(a))}));
  EXPECT_TRUE(sat(Term::asym_enc(n, Term::public_key(b)), {n, Term::public_key(b)}));
  EXPECT_FALSE(sat(Term::asym_enc(n, Term::public_key(b)), {n}));
  EXPECT_TRUE(sat(Term::signature(n, Term::public_key(eps)), {n}));
  EXPECT_FALSE(sat(Term::signature(n, Term::public_key(a)), {n}));
  EXPECT_FALSE(sat(n, {Term::signature(n, Term::public_key(a))}));  // signatures do not reveal their body
}

TEST(Solver, CompromisedAgentsOpenTheirMail) {
  AttackerKnowledge kn = knows({eps});
  kn.compromised.insert(a);
  EXPECT_TRUE(sat(n, {Term::asym_enc(n, Term::public_key(a))}, kn));
  EXPECT_TRUE(sat(Term::signature(n, Term::public_key(a)), {n}, kn));
}

TEST(Solver, UnificationBindsVariables) {
  const Term X = Term::variable("X", Sort::Nonce);
  auto sols = solve({goal(Term::asym_enc(X, Term::public_key(b)), {Term::asym_enc(n, Term::public_key(b))})}, knows({eps}));
  ASSERT_FALSE(sols.empty());
  EXPECT_EQ(sols[0].substitution.apply(X), n);
  EXPECT_EQ(rules_of(sols[0].traces[0]), std::vector<Rule>{Rule::Un});
}

TEST(Solver, KeySubstitution) {
  const Term A = Term::variable("A", Sort::Agent);
  auto sols = solve({goal(n, {Term::asym_enc(n, Term::public_key(A))})}, knows({eps}));
  ASSERT_FALSE(sols.empty());
  EXPECT_EQ(sols[0].substitution.apply(A), eps);
  EXPECT_EQ(rules_of(sols[0].traces[0]), (std::vector<Rule>{Rule::Ksub, Rule::Pdec, Rule::Un}));
}

TEST(Solver, SimpleConstraintsStay) {
  const Term X = Term::variable("X", Sort::Generic);
  auto sols = solve({goal(Term::pair(X, n), {n})}, knows({eps}));
  ASSERT_FALSE(sols.empty());
  ASSERT_EQ(sols[0].remaining.size(), 1u);
  EXPECT_EQ(sols[0].remaining[0].target, X);
}

TEST(Solver, DecompositionIsPaidOnce) {
  // Two receives drawing on the same ciphertext: pdec appears in the first trace only.
  const Term c = Term::asym_enc(Term::pair(n, m), Term::public_key(eps));
  ConstraintSequence cs{goal(n, {c}, 0), goal(m, {c}, 1)};
  auto sols = solve(cs, knows({eps}), {}, 1);
  ASSERT_EQ(sols.size(), 1u);
  auto first = rules_of(sols[0].traces[0]);
  auto second = rules_of(sols[0].traces[1]);
  EXPECT_NE(std::find(first.begin(), first.end(), Rule::Pdec), first.end());
  EXPECT_EQ(std::find(second.begin(), second.end(), Rule::Pdec), second.end());
}

TEST(Solver, DepthLimitIsLoud) {
  Term deep = n;
  for (int i = 0; i < 20; ++i) deep = Term::pair(deep, deep);
  SolverOptions o;
  o.depth_limit = 10;
  EXPECT_THROW(solve({goal(deep, {n})}, knows({eps}), o), std::runtime_error);
}

TEST(Solver, Policies) {
  const Term X = Term::variable("X", Sort::Nonce);
  SolverOptions o;
  o.tagged_origins = {0};
  // Relay only: the target must come verbatim from a tagged strand.
  Constraint relay = goal(X, {n});
  relay.policy = BindPolicy::RelayFromTagged;
  EXPECT_EQ(solve({relay}, knows({eps}), o).size(), 1u);
  relay.known[0].origin = 1;
  EXPECT_TRUE(solve({relay}, knows({eps}), o).empty());
  // No binding against tagged material.
  Constraint strict = goal(Term::asym_enc(X, Term::public_key(b)), {Term::asym_enc(n, Term::public_key(b))});
  strict.policy = BindPolicy::NoTaggedBinding;
  EXPECT_TRUE(solve({strict}, knows({eps}), o).empty());
  strict.known[0].origin = 1;
  EXPECT_FALSE(solve({strict}, knows({eps}), o).empty());
}

TEST(Solver, DeterministicOrder) {
  const Term X = Term::variable("X", Sort::Generic);
  ConstraintSequence cs{goal(Term::pair(X, X), {Term::pair(n, n), Term::pair(m, m)})};
  auto one = solve(cs, knows({eps}));
  auto two = solve(cs, knows({eps}));
  ASSERT_EQ(one.size(), two.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].substitution, two[i].substitution);
}

TEST(Properties, DerivabilityMatchesBruteForce) {
  auto r = oracle::derivability_equivalence(4, 6, 5000, 3);
  EXPECT_FALSE(r.failure) << *r.failure;
  EXPECT_GT(r.cases, 70000u);
}

TEST(Properties, WitnessReplayAndBundleInvariantsOverCorpus) {
  auto r = oracle::corpus_properties(32);
  EXPECT_FALSE(r.replay.failure) << *r.replay.failure;
  EXPECT_FALSE(r.bundles.failure) << *r.bundles.failure;
  EXPECT_GT(r.replay.cases, 100u);
}

TEST(Properties, Determinism) {
  auto r = oracle::determinism();
  EXPECT_TRUE(r.ok()) << r.failure.value_or("");
}
