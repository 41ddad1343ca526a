#include "dbsolve/substitution.hpp"

#include <stdexcept>

namespace dbsolve {

namespace {

Term rebuild(const Term& t, std::vector<Term> args) {
  switch (t.kind()) {
    case TermKind::Pair: return Term::pair(args[0], args[1]);
    case TermKind::PublicKey: return Term::public_key(args[0]);
    case TermKind::SharedKey: return Term::shared_key(args[0], args[1]);
    case TermKind::AsymEnc: return Term::asym_enc(args[0], args[1]);
    case TermKind::SymEnc: return Term::sym_enc(args[0], args[1]);
    case TermKind::Hash: return Term::hash(args[0]);
    case TermKind::Signature: return Term::signature(args[0], args[1]);
    default: return t;
  }
}

Term substitute(const Substitution::Map& m, const Term& t) {
  if (t.is_ground() || m.empty()) return t;
  if (t.is_variable()) {
    auto it = m.find(t);
    return it == m.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute(m, a));
    changed = changed || !(args.back() == a);
  }
  return changed ? rebuild(t, std::move(args)) : t;
}

}  // namespace

Substitution::Substitution(std::initializer_list<std::pair<const Term, Term>> init) {
  for (const auto& [var, value] : init) bind(var, value);
}

std::optional<Term> Substitution::lookup(const Term& var) const {
  auto it = bindings_.find(var);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

void Substitution::bind(const Term& var, const Term& value) {
  if (!var.is_variable()) throw std::invalid_argument("cannot bind non-variable " + var.to_string());
  if (bindings_.contains(var)) throw std::invalid_argument("variable already bound: " + var.to_string());
  Term resolved = substitute(bindings_, value);
  if (resolved == var) return;
  if (occurs(var, resolved))
    throw std::invalid_argument("occurs check: " + var.to_string() + " in " + resolved.to_string());
  Map single{{var, resolved}};
  for (auto& [k, v] : bindings_) v = substitute(single, v);
  bindings_.emplace(var, resolved);
}

Term Substitution::apply(const Term& t) const { return substitute(bindings_, t); }

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += k.to_string() + " -> " + v.to_string();
  }
  return out + "}";
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  Substitution::Map m;
  for (const auto& [k, v] : s1.bindings()) {
    Term image = s2.apply(v);
    if (!(image == k)) m.emplace(k, image);
  }
  for (const auto& [k, v] : s2.bindings())
    if (!m.contains(k) && !s1.binds(k)) m.emplace(k, v);
  // Insert through bind() wherever possible so idempotence is re-established.
  for (const auto& [k, v] : m) {
    if (out.binds(k)) continue;
    out.bind(k, v);
  }
  return out;
}

}  // namespace dbsolve
