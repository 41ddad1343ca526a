#include <utility>
#include <vector>

#include "dbsolve/substitution.hpp"

namespace dbsolve {

bool sort_admits(Sort var_sort, const Term& t) {
  if (var_sort == Sort::Generic) return true;
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
    case TermKind::Atom:
      return t.sort() == var_sort;
    case TermKind::PublicKey:
    case TermKind::SharedKey:
      return var_sort == Sort::Key;
    default:
      return false;
  }
}

namespace {

bool bind_variable(Substitution& s, const Term& var, const Term& value) {
  if (value.is_variable() && !sort_admits(var.sort(), value)) {
    // Let the less constrained side take the binding: X:Generic -> A:Agent.
    if (sort_admits(value.sort(), var)) {
      if (occurs(value, var)) return false;
      s.bind(value, var);
      return true;
    }
    return false;
  }
  if (!sort_admits(var.sort(), value)) return false;
  if (occurs(var, value)) return false;
  s.bind(var, value);
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& t1, const Term& t2, const Substitution& base) {
  Substitution s = base;
  std::vector<std::pair<Term, Term>> work{{t1, t2}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = s.apply(a);
    b = s.apply(b);
    if (a == b) continue;
    if (a.is_variable()) {
      if (!bind_variable(s, a, b)) return std::nullopt;
      continue;
    }
    if (b.is_variable()) {
      if (!bind_variable(s, b, a)) return std::nullopt;
      continue;
    }
    if (a.kind() != b.kind() || a.is_atomic()) return std::nullopt;
    if (a.args().size() != b.args().size()) return std::nullopt;
    for (std::size_t i = a.args().size(); i-- > 0;) work.emplace_back(a.arg(i), b.arg(i));
  }
  return s;
}

std::optional<Substitution> unify(const Term& t1, const Term& t2) { return unify(t1, t2, Substitution{}); }

}  // namespace dbsolve
