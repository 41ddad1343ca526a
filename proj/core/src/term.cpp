#include "dbsolve/term.hpp"

#include <stdexcept>

#include <boost/container_hash/hash.hpp>

namespace dbsolve {

std::string_view to_string(Sort sort) {
  switch (sort) {
    case Sort::Agent: return "Agent";
    case Sort::Nonce: return "Nonce";
    case Sort::Key: return "Key";
    case Sort::Generic: return "Generic";
  }
  return "?";
}

std::optional<Sort> parse_sort(std::string_view text) {
  if (text == "Agent") return Sort::Agent;
  if (text == "Nonce") return Sort::Nonce;
  if (text == "Key") return Sort::Key;
  if (text == "Generic") return Sort::Generic;
  return std::nullopt;
}

std::size_t default_atom_size(Sort sort) {
  return sort == Sort::Agent ? 4 : 16;
}

namespace {

void require_agent_argument(const Term& t, const char* ctor) {
  if (!t.is_atomic() || t.sort() != Sort::Agent)
    throw std::invalid_argument(std::string(ctor) + " expects an agent, got " + t.to_string());
}

}  // namespace

Term Term::make(TermNode node) {
  std::size_t h = static_cast<std::size_t>(node.kind);
  boost::hash_combine(h, node.name);
  boost::hash_combine(h, static_cast<int>(node.sort));
  boost::hash_combine(h, node.scope);
  node.ground = node.kind != TermKind::Variable;
  for (const auto& a : node.args) {
    boost::hash_combine(h, a.hash_value());
    node.ground = node.ground && a.is_ground();
  }
  node.hash = h;
  return Term(std::make_shared<const TermNode>(std::move(node)));
}

Term Term::variable(std::string name, Sort sort, int scope) {
  TermNode n;
  n.kind = TermKind::Variable;
  n.name = std::move(name);
  n.sort = sort;
  n.scope = scope;
  return make(std::move(n));
}

Term Term::constant(std::string name, Sort sort) {
  TermNode n;
  n.kind = TermKind::Constant;
  n.name = std::move(name);
  n.sort = sort;
  n.size = 4;
  return make(std::move(n));
}

Term Term::attacker() {
  static const Term eps = constant("eps", Sort::Agent);
  return eps;
}

Term Term::atom(std::string name, Sort sort, std::optional<std::size_t> size) {
  TermNode n;
  n.kind = TermKind::Atom;
  n.name = std::move(name);
  n.sort = sort;
  n.size = size.value_or(default_atom_size(sort));
  return make(std::move(n));
}

Term Term::pair(Term left, Term right) {
  TermNode n;
  n.kind = TermKind::Pair;
  n.args = {std::move(left), std::move(right)};
  return make(std::move(n));
}

Term Term::tuple(const std::vector<Term>& items) {
  if (items.empty()) throw std::invalid_argument("empty tuple");
  Term acc = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) acc = pair(*it, acc);
  return acc;
}

Term Term::public_key(Term agent) {
  require_agent_argument(agent, "pk");
  TermNode n;
  n.kind = TermKind::PublicKey;
  n.sort = Sort::Key;
  n.args = {std::move(agent)};
  return make(std::move(n));
}

Term Term::shared_key(Term a, Term b) {
  require_agent_argument(a, "sh");
  require_agent_argument(b, "sh");
  TermNode n;
  n.kind = TermKind::SharedKey;
  n.sort = Sort::Key;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::asym_enc(Term body, Term key) {
  TermNode n;
  n.kind = TermKind::AsymEnc;
  n.args = {std::move(body), std::move(key)};
  return make(std::move(n));
}

Term Term::sym_enc(Term body, Term key) {
  TermNode n;
  n.kind = TermKind::SymEnc;
  n.args = {std::move(body), std::move(key)};
  return make(std::move(n));
}

Term Term::hash(Term body) {
  TermNode n;
  n.kind = TermKind::Hash;
  n.args = {std::move(body)};
  return make(std::move(n));
}

Term Term::signature(Term body, Term signer_key) {
  if (signer_key.kind() != TermKind::PublicKey)
    throw std::invalid_argument("signature key must be pk(A), got " + signer_key.to_string());
  TermNode n;
  n.kind = TermKind::Signature;
  n.args = {std::move(body), std::move(signer_key)};
  return make(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
Sort Term::sort() const { return node_->sort; }
int Term::scope() const { return node_->scope; }
std::size_t Term::declared_size() const { return node_->size; }
std::span<const Term> Term::args() const { return node_->args; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::hash_value() const { return node_->hash; }

bool Term::is_atomic() const {
  auto k = kind();
  return k == TermKind::Variable || k == TermKind::Constant || k == TermKind::Atom;
}

bool Term::is_attacker() const { return *this == attacker(); }

Term Term::rescoped(int scope) const {
  if (is_ground()) return *this;
  if (is_variable()) return variable(name(), sort(), scope);
  TermNode n = *node_;
  for (auto& a : n.args) a = a.rescoped(scope);
  return make(std::move(n));
}

namespace {

void print(const Term& t, std::string& out);

void print_tuple(const Term& t, std::string& out) {
  out += '[';
  const Term* cur = &t;
  while (true) {
    print(cur->arg(0), out);
    out += ", ";
    if (cur->arg(1).kind() != TermKind::Pair) {
      print(cur->arg(1), out);
      break;
    }
    cur = &cur->arg(1);
  }
  out += ']';
}

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
    case TermKind::Atom:
      out += t.name();
      return;
    case TermKind::Pair:
      print_tuple(t, out);
      return;
    case TermKind::PublicKey:
      out += "pk(";
      print(t.arg(0), out);
      out += ')';
      return;
    case TermKind::SharedKey:
      out += "sh(";
      print(t.arg(0), out);
      out += ", ";
      print(t.arg(1), out);
      out += ')';
      return;
    case TermKind::AsymEnc:
    case TermKind::SymEnc: {
      out += '{';
      print(t.arg(0), out);
      out += '}';
      const Term& k = t.arg(1);
      bool asym = t.kind() == TermKind::AsymEnc;
      if ((asym && k.kind() == TermKind::PublicKey) || (!asym && k.kind() == TermKind::SharedKey)) {
        print(k, out);
      } else {
        out += asym ? "asym:" : "sym:";
        bool wrap = !k.is_atomic();
        if (wrap) out += '(';
        print(k, out);
        if (wrap) out += ')';
      }
      return;
    }
    case TermKind::Hash:
      out += "h(";
      print(t.arg(0), out);
      out += ')';
      return;
    case TermKind::Signature:
      out += "sig(";
      print(t.arg(1).arg(0), out);
      out += "; ";
      print(t.arg(0), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string Term::to_string() const {
  if (!valid()) return "<null>";
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (auto c = x.scope <=> y.scope; c != 0) return c;
  if (auto c = x.size <=> y.size; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool subterm(const Term& t, const Term& u) {
  if (t == u) return true;
  switch (u.kind()) {
    case TermKind::Pair:
      return subterm(t, u.arg(0)) || subterm(t, u.arg(1));
    case TermKind::AsymEnc:
    case TermKind::SymEnc:
    case TermKind::Hash:
    case TermKind::Signature:
      return subterm(t, u.arg(0));
    default:
      return false;
  }
}

bool proper_subterm(const Term& t, const Term& u) { return t != u && subterm(t, u); }

bool occurs(const Term& var, const Term& t) {
  if (t == var) return true;
  if (t.is_ground()) return false;
  for (const auto& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

void collect_variables(const Term& t, std::set<Term>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    out.insert(t);
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

void collect_atoms(const Term& t, std::set<Term>& out) {
  if (t.kind() == TermKind::Atom || t.kind() == TermKind::Constant) {
    out.insert(t);
    return;
  }
  for (const auto& a : t.args()) collect_atoms(a, out);
}

namespace {

std::size_t encoded_length(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      return 0;
    case TermKind::Constant:
    case TermKind::Atom:
      return t.declared_size();
    case TermKind::Pair:
      return encoded_length(t.arg(0)) + encoded_length(t.arg(1)) + 2;
    case TermKind::PublicKey:
      return encoded_length(t.arg(0)) + 4;
    case TermKind::SharedKey:
      return encoded_length(t.arg(0)) + encoded_length(t.arg(1)) + 4;
    case TermKind::AsymEnc:
    case TermKind::SymEnc:
      return encoded_length(t.arg(0)) + encoded_length(t.arg(1)) + 4;
    case TermKind::Hash:
      return 20;
    case TermKind::Signature:
      return encoded_length(t.arg(0)) + 64;
  }
  return 0;
}

}  // namespace

std::size_t term_length(const Term& t) {
  if (!t.is_ground()) throw std::invalid_argument("term_length of non-ground term " + t.to_string());
  return encoded_length(t);
}

}  // namespace dbsolve
