#include <gtest/gtest.h>

#include <stdexcept>

#include "dbsolve/term.hpp"

using namespace dbsolve;

namespace {

const Term a = Term::atom("a", Sort::Agent);
const Term b = Term::atom("b", Sort::Agent);
const Term n = Term::atom("n", Sort::Nonce);
const Term k = Term::atom("k", Sort::Key);
const Term eps = Term::attacker();

}  // namespace

TEST(Term, TuplesPrintFlat) {
  EXPECT_EQ(Term::tuple({n, a, b}).to_string(), "[n, a, b]");
  EXPECT_EQ(Term::pair(Term::pair(n, a), b).to_string(), "[[n, a], b]");
}

TEST(Term, KeysAndEncryptionsPrint) {
  EXPECT_EQ(Term::asym_enc(n, Term::public_key(a)).to_string(), "{n}pk(a)");
  EXPECT_EQ(Term::sym_enc(n, Term::shared_key(a, b)).to_string(), "{n}sh(a, b)");
  EXPECT_EQ(Term::sym_enc(n, k).to_string(), "{n}sym:k");
  EXPECT_EQ(Term::asym_enc(n, k).to_string(), "{n}asym:k");
  EXPECT_EQ(Term::sym_enc(n, Term::hash(k)).to_string(), "{n}sym:(h(k))");
  EXPECT_EQ(Term::signature(Term::pair(n, a), Term::public_key(b)).to_string(), "sig(b; [n, a])");
  EXPECT_EQ(eps.to_string(), "eps");
}

TEST(Term, KeyArgumentsMustBeAgents) {
  EXPECT_THROW(Term::public_key(n), std::invalid_argument);
  EXPECT_THROW(Term::shared_key(a, Term::pair(a, b)), std::invalid_argument);
  EXPECT_NO_THROW(Term::public_key(Term::variable("A", Sort::Agent)));
  EXPECT_NO_THROW(Term::public_key(eps));
  EXPECT_THROW(Term::signature(n, k), std::invalid_argument);
}

TEST(Term, Lengths) {
  EXPECT_EQ(term_length(a), 4u);
  EXPECT_EQ(term_length(n), 16u);
  EXPECT_EQ(term_length(eps), 4u);
  EXPECT_EQ(term_length(Term::public_key(a)), 8u);
  EXPECT_EQ(term_length(Term::shared_key(a, b)), 12u);
  EXPECT_EQ(term_length(Term::pair(n, a)), 22u);
  EXPECT_EQ(term_length(Term::asym_enc(Term::pair(n, a), Term::public_key(b))), 34u);
  EXPECT_EQ(term_length(Term::hash(Term::tuple({n, n, n}))), 20u);
  EXPECT_EQ(term_length(Term::signature(n, Term::public_key(a))), 80u);
  EXPECT_EQ(term_length(Term::atom("pos", Sort::Generic, 3)), 3u);
  EXPECT_THROW(term_length(Term::variable("X", Sort::Generic)), std::invalid_argument);
}

TEST(Term, StructuralEqualityAndOrder) {
  EXPECT_EQ(Term::pair(n, a), Term::pair(Term::atom("n", Sort::Nonce), Term::atom("a", Sort::Agent)));
  EXPECT_NE(Term::pair(n, a), Term::pair(a, n));
  EXPECT_NE(Term::atom("x", Sort::Nonce), Term::atom("x", Sort::Key));
  EXPECT_NE(Term::variable("X", Sort::Nonce, 0), Term::variable("X", Sort::Nonce, 1));
  const Term x = Term::pair(n, a), y = Term::pair(a, n);
  EXPECT_TRUE((x < y) != (y < x));
  EXPECT_EQ(x.hash_value(), Term::pair(n, a).hash_value());
}

TEST(Term, GroundnessAndScopes) {
  Term v = Term::variable("X", Sort::Nonce, 2);
  Term t = Term::pair(v, n);
  EXPECT_FALSE(t.is_ground());
  EXPECT_TRUE(Term::pair(n, a).is_ground());
  Term r = t.rescoped(5);
  EXPECT_EQ(r.arg(0).scope(), 5);
  EXPECT_EQ(r.arg(1), n);
  std::set<Term> vars;
  collect_variables(r, vars);
  EXPECT_EQ(vars.size(), 1u);
}

TEST(Term, Subterms) {
  Term c = Term::asym_enc(Term::pair(n, a), Term::public_key(b));
  EXPECT_TRUE(subterm(n, c));
  EXPECT_TRUE(subterm(c, c));
  EXPECT_FALSE(proper_subterm(c, c));
  EXPECT_FALSE(subterm(b, c));  // key positions are not entered
  std::set<Term> atoms;
  collect_atoms(c, atoms);
  EXPECT_TRUE(atoms.contains(b));
  Term x = Term::variable("X", Sort::Generic);
  EXPECT_TRUE(occurs(x, Term::hash(Term::pair(n, x))));
  EXPECT_FALSE(occurs(x, c));
}

TEST(Term, SortNames) {
  for (Sort s : {Sort::Agent, Sort::Nonce, Sort::Key, Sort::Generic}) EXPECT_EQ(parse_sort(to_string(s)), s);
  EXPECT_FALSE(parse_sort("Text").has_value());
  EXPECT_EQ(default_atom_size(Sort::Agent), 4u);
  EXPECT_EQ(default_atom_size(Sort::Nonce), 16u);
}
