#pragma once

#include <map>
#include <optional>
#include <string>

#include "dbsolve/term.hpp"

namespace dbsolve {

// Finite map from variables to terms. Kept idempotent: no bound variable
// appears in any image.
class Substitution {
 public:
  using Map = std::map<Term, Term>;

  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Term, Term>> init);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map& bindings() const { return bindings_; }
  std::optional<Term> lookup(const Term& var) const;
  bool binds(const Term& var) const { return bindings_.contains(var); }

  // Adds var -> value after resolving value against the current bindings and
  // rewriting existing images. Throws on occurs-check failure or rebinding.
  void bind(const Term& var, const Term& value);

  Term apply(const Term& t) const;

  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

inline Term apply(const Substitution& s, const Term& t) { return s.apply(t); }

// apply(compose(s1, s2), t) == apply(s2, apply(s1, t)).
Substitution compose(const Substitution& s1, const Substitution& s2);

// True when a variable of sort `var_sort` may be bound to `t`.
bool sort_admits(Sort var_sort, const Term& t);

// Sorted syntactic most general unifier; nullopt on clash or occurs check.
std::optional<Substitution> unify(const Term& t1, const Term& t2);

// Extends `base` so that it also unifies t1 and t2.
std::optional<Substitution> unify(const Term& t1, const Term& t2, const Substitution& base);

}  // namespace dbsolve
