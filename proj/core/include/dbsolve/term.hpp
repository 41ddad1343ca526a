#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbsolve {

enum class Sort { Agent, Nonce, Key, Generic };

enum class TermKind {
  Variable,
  Constant,
  Atom,
  Pair,
  PublicKey,
  SharedKey,
  AsymEnc,
  SymEnc,
  Hash,
  Signature,
};

std::string_view to_string(Sort sort);
std::optional<Sort> parse_sort(std::string_view text);

// Byte size an atom of this sort gets when none is declared.
std::size_t default_atom_size(Sort sort);

struct TermNode;

// Immutable, structurally compared message term. Copies share the node tree.
class Term {
 public:
  Term() = default;

  static Term variable(std::string name, Sort sort, int scope = 0);
  static Term constant(std::string name, Sort sort = Sort::Generic);
  static Term attacker();  // the penetrator's name, eps
  static Term atom(std::string name, Sort sort, std::optional<std::size_t> size = {});
  static Term pair(Term left, Term right);
  static Term tuple(const std::vector<Term>& items);  // right-nested pairs
  static Term public_key(Term agent);
  static Term shared_key(Term a, Term b);
  static Term asym_enc(Term body, Term key);
  static Term sym_enc(Term body, Term key);
  static Term hash(Term body);
  static Term signature(Term body, Term signer_key);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  const std::string& name() const;
  Sort sort() const;
  int scope() const;
  std::size_t declared_size() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_atomic() const;  // variable, constant or atom
  bool is_key() const { return kind() == TermKind::PublicKey || kind() == TermKind::SharedKey; }
  bool is_ground() const;
  bool is_attacker() const;
  std::size_t hash_value() const;

  // Same term with a different variable scope everywhere inside it.
  Term rescoped(int scope) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  static Term make(TermNode node);

  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Constant;
  std::string name;
  Sort sort = Sort::Generic;
  int scope = 0;
  std::size_t size = 0;
  std::vector<Term> args;
  bool ground = true;
  std::size_t hash = 0;
};

// t is a subterm of u: equality, pair parts, encryption/hash/signature bodies.
// Key positions are not entered.
bool subterm(const Term& t, const Term& u);
bool proper_subterm(const Term& t, const Term& u);

bool occurs(const Term& var, const Term& t);
void collect_variables(const Term& t, std::set<Term>& out);
void collect_atoms(const Term& t, std::set<Term>& out);  // atoms and constants, all positions

// Canonical encoding length in bytes. Throws std::invalid_argument on non-ground terms.
std::size_t term_length(const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash_value(); }
};

}  // namespace dbsolve
