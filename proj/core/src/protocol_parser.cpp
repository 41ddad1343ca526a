#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "dbsolve/protocol.hpp"
#include "lexer.hpp"

namespace dbsolve {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const RoleSpec* ProtocolSpec::role(std::string_view n) const {
  for (const auto& r : roles)
    if (r.name == n) return &r;
  return nullptr;
}

const RoleSpec* ProtocolSpec::verifier() const {
  for (const auto& r : roles)
    if (r.kind == RoleKind::Verifier) return &r;
  return nullptr;
}

const RoleSpec* ProtocolSpec::prover() const {
  for (const auto& r : roles)
    if (r.kind == RoleKind::Prover) return &r;
  return nullptr;
}

std::optional<std::pair<std::size_t, std::size_t>> ProtocolSpec::markers() const {
  const RoleSpec* v = verifier();
  if (!v) return std::nullopt;
  std::optional<std::size_t> rq, rs;
  for (std::size_t i = 0; i < v->nodes.size(); ++i) {
    if (v->nodes[i].marks & kMarkRequest) rq = i;
    if (v->nodes[i].marks & kMarkResponse) rs = i;
  }
  if (!rq || !rs) return std::nullopt;
  return std::make_pair(*rq, *rs);
}

std::optional<Term> ProtocolSpec::atom(std::string_view n) const {
  for (const auto& a : atoms)
    if (a.name == n) return Term::atom(a.name, a.sort, a.size);
  return std::nullopt;
}

std::vector<Term> ProtocolSpec::agents() const {
  std::vector<Term> out;
  for (const auto& a : atoms)
    if (a.sort == Sort::Agent) out.push_back(Term::atom(a.name, a.sort, a.size));
  return out;
}

std::vector<Term> ProtocolSpec::public_terms() const {
  std::vector<Term> out;
  for (const auto& p : publics)
    if (auto t = atom(p)) out.push_back(*t);
  return out;
}

namespace {

using detail::Cursor;
using detail::Token;
using detail::TokenKind;

const std::set<std::string, std::less<>> kReserved{"h", "sig", "pk", "sh", "sym", "asym", "eps"};

class TermParser {
 public:
  TermParser(Cursor& cur, const ProtocolSpec& spec) : cur_(cur), spec_(spec) {}

  Term term() {
    const Token& start = cur_.peek();
    try {
      return primary();
    } catch (const std::invalid_argument& e) {
      throw ParseError(start.line, start.column, e.what());
    }
  }

 private:
  std::vector<Term> list(char close) {
    std::vector<Term> items{primary()};
    while (cur_.accept(',')) items.push_back(primary());
    cur_.expect(close);
    return items;
  }

  Term agent_arg() {
    const Token& at = cur_.peek();
    Term t = primary();
    if (t.is_atomic() && t.sort() != Sort::Agent) throw ParseError(at.line, at.column, "expected an agent, got " + t.to_string());
    return t;
  }

  Term key_after_brace(const Term& body) {
    const Token& k = cur_.peek();
    if (k.kind != TokenKind::Ident) throw cur_.error(k, "expected pk(..), sh(..), sym: or asym: after }");
    if (k.text == "pk") return Term::asym_enc(body, primary());
    if (k.text == "sh") return Term::sym_enc(body, primary());
    if (k.text == "sym" || k.text == "asym") {
      cur_.next();
      cur_.expect(':');
      Term key = primary();
      return k.text == "sym" ? Term::sym_enc(body, key) : Term::asym_enc(body, key);
    }
    throw cur_.error(k, "unknown key form '" + k.text + "'");
  }

  Term primary() {
    const Token t = cur_.next();
    switch (t.kind) {
      case TokenKind::Punct:
        if (t.text == "[") {
          auto items = list(']');
          if (items.size() < 2) throw cur_.error(t, "a pair needs at least two parts");
          return Term::tuple(items);
        }
        if (t.text == "{") {
          Term body = list_as_term('}');
          return key_after_brace(body);
        }
        if (t.text == "(") {
          Term inner = primary();
          cur_.expect(')');
          return inner;
        }
        throw cur_.error(t, "unexpected '" + t.text + "'");
      case TokenKind::Number:
        if (t.text.find_first_not_of("0123456789") != std::string::npos) throw cur_.error(t, "bad numeral " + t.text);
        return Term::constant(t.text);
      case TokenKind::Ident:
        return identifier(t);
      default:
        throw cur_.error(t, t.kind == TokenKind::End ? "unexpected end of line" : "unexpected '" + t.text + "'");
    }
  }

  Term list_as_term(char close) {
    auto items = list(close);
    return items.size() == 1 ? items[0] : Term::tuple(items);
  }

  Term identifier(const Token& t) {
    if (t.text == "eps") return Term::attacker();
    bool call = cur_.peek().kind == TokenKind::Punct && cur_.peek().text == "(";
    if (call && t.text == "pk") {
      cur_.next();
      Term a = agent_arg();
      cur_.expect(')');
      return Term::public_key(a);
    }
    if (call && t.text == "sh") {
      cur_.next();
      Term a = agent_arg();
      cur_.expect(',');
      Term b = agent_arg();
      cur_.expect(')');
      return Term::shared_key(a, b);
    }
    if (call && t.text == "h") {
      cur_.next();
      return Term::hash(list_as_term(')'));
    }
    if (call && t.text == "sig") {
      cur_.next();
      Term signer = agent_arg();
      cur_.expect(';');
      return Term::signature(list_as_term(')'), Term::public_key(signer));
    }
    if (kReserved.count(t.text)) throw cur_.error(t, "'" + t.text + "' is reserved");
    if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
      for (const auto& v : spec_.vars)
        if (v.name == t.text) return Term::variable(v.name, v.sort);
      throw cur_.error(t, "undeclared variable " + t.text + " (declare it with var)");
    }
    if (auto a = spec_.atom(t.text)) return *a;
    throw cur_.error(t, "undeclared atom " + t.text + " (declare it with atom)");
  }

  Cursor& cur_;
  const ProtocolSpec& spec_;
};

Sort sort_token(Cursor& cur) {
  const Token t = cur.next();
  if (t.kind != TokenKind::Ident) throw cur.error(t, "expected a sort");
  auto s = parse_sort(t.text);
  if (!s) throw cur.error(t, "undeclared sort '" + t.text + "' (Agent, Nonce, Key or Generic)");
  return *s;
}

std::vector<Token> name_list(Cursor& cur) {
  std::vector<Token> names{cur.ident("a name")};
  while (cur.accept(',')) names.push_back(cur.ident("a name"));
  return names;
}

struct Builder {
  ProtocolSpec spec;
  bool have_header = false;
  std::set<std::string> declared;
  RoleSpec* current = nullptr;
  struct MarkPos {
    int line, column;
    std::string role;
    std::size_t index;
  };
  std::optional<MarkPos> request, response;

  void declare(const Token& t) {
    if (kReserved.count(t.text)) throw ParseError(t.line, t.column, "'" + t.text + "' is reserved");
    if (!declared.insert(t.text).second) throw ParseError(t.line, t.column, "duplicate declaration of " + t.text);
  }

  void line(Cursor& cur) {
    const Token kw = cur.ident("a keyword");
    if (kw.text == "protocol") {
      if (have_header) throw cur.error(kw, "duplicate protocol header");
      spec.name = cur.ident("a protocol name").text;
      have_header = true;
    } else if (!have_header) {
      throw cur.error(kw, "file must start with 'protocol <name>'");
    } else if (kw.text == "atom") {
      atom_line(cur);
    } else if (kw.text == "var") {
      auto names = name_list(cur);
      cur.expect(':');
      Sort s = sort_token(cur);
      for (const auto& n : names) {
        if (!std::isupper(static_cast<unsigned char>(n.text[0]))) throw cur.error(n, "variables start with an uppercase letter");
        declare(n);
        spec.vars.push_back({n.text, s});
      }
    } else if (kw.text == "public") {
      for (const auto& n : name_list(cur)) {
        if (!spec.atom(n.text)) throw cur.error(n, "public name " + n.text + " is not a declared atom");
        spec.publics.push_back(n.text);
      }
    } else if (kw.text == "delta2") {
      spec.delta2 = cur.rational("a rational");
    } else if (kw.text == "role") {
      role_line(cur);
    } else if (kw.text == "send" || kw.text == "recv") {
      node_line(cur, kw);
    } else {
      throw cur.error(kw, "unknown keyword '" + kw.text + "'");
    }
    cur.finish();
  }

  void atom_line(Cursor& cur) {
    auto names = name_list(cur);
    cur.expect(':');
    Sort s = sort_token(cur);
    std::size_t size = default_atom_size(s);
    if (cur.accept_word("size")) {
      const Token n = cur.next();
      if (n.kind != TokenKind::Number || n.text.find_first_not_of("0123456789") != std::string::npos || n.text == "0")
        throw cur.error(n, "size must be a positive integer");
      size = std::stoul(n.text);
    }
    for (const auto& n : names) {
      if (!std::islower(static_cast<unsigned char>(n.text[0]))) throw cur.error(n, "atoms start with a lowercase letter");
      declare(n);
      spec.atoms.push_back({n.text, s, size});
    }
  }

  void role_line(Cursor& cur) {
    const Token name = cur.ident("a role name");
    if (spec.role(name.text)) throw cur.error(name, "duplicate role " + name.text);
    cur.expect(':');
    const Token agent = cur.ident("an agent atom");
    auto a = spec.atom(agent.text);
    if (!a || a->sort() != Sort::Agent) throw cur.error(agent, agent.text + " is not a declared Agent atom");
    RoleSpec r;
    r.name = name.text;
    r.agent = *a;
    if (cur.accept_word("verifier")) {
      if (spec.verifier()) throw cur.error(name, "only one verifier role is allowed");
      r.kind = RoleKind::Verifier;
    } else if (cur.accept_word("prover")) {
      if (spec.prover()) throw cur.error(name, "only one prover role is allowed");
      r.kind = RoleKind::Prover;
    }
    spec.roles.push_back(std::move(r));
    current = &spec.roles.back();
  }

  void node_line(Cursor& cur, const Token& kw) {
    if (!current) throw cur.error(kw, "node outside of a role");
    NodeSpec n;
    n.sign = kw.text == "send" ? Sign::Plus : Sign::Minus;
    n.term = TermParser(cur, spec).term();
    while (!cur.at_end()) {
      const Token t = cur.next();
      if (t.kind == TokenKind::Ident && t.text == "request") {
        if (n.sign != Sign::Plus) throw cur.error(t, "request must mark a send node");
        mark(t, request, "request");
        n.marks |= kMarkRequest;
      } else if (t.kind == TokenKind::Ident && t.text == "response") {
        if (n.sign != Sign::Minus) throw cur.error(t, "response must mark a recv node");
        mark(t, response, "response");
        n.marks |= kMarkResponse;
      } else if (t.kind == TokenKind::Ident && t.text == "db") {
        n.marks |= kMarkDb;
      } else if (t.kind == TokenKind::Ident && t.text == "auth") {
        n.marks |= kMarkAuth;
      } else if (t.kind == TokenKind::At && t.text == "@weight") {
        if (n.sign != Sign::Plus) throw cur.error(t, "@weight applies to send nodes only");
        if (current->nodes.empty()) throw cur.error(t, "@weight on a role's first node has no edge to weigh");
        if (n.weight) throw cur.error(t, "second @weight on one node");
        Rational w = cur.rational("a weight");
        if (w < 0) throw cur.error(t, "weights are non-negative");
        n.weight = w;
      } else {
        throw cur.error(t, "unexpected '" + t.text + "' after the term");
      }
    }
    current->nodes.push_back(std::move(n));
  }

  void mark(const Token& t, std::optional<MarkPos>& slot, const char* what) {
    if (current->kind != RoleKind::Verifier) throw ParseError(t.line, t.column, std::string(what) + " marks belong to the verifier role");
    if (slot) throw ParseError(t.line, t.column, std::string("second ") + what + " marker");
    slot = MarkPos{t.line, t.column, current->name, current->nodes.size()};
  }

  void finish(int last_line) {
    if (!have_header) throw ParseError(1, 1, "empty protocol file");
    if (spec.roles.empty()) throw ParseError(last_line, 1, "protocol declares no roles");
    for (const auto& r : spec.roles)
      if (r.nodes.empty()) throw ParseError(last_line, 1, "role " + r.name + " has no nodes");
    if (request && !response) throw ParseError(request->line, request->column, "request without a response marker");
    if (response && !request) throw ParseError(response->line, response->column, "response without a request marker");
    if (request && response->index <= request->index)
      throw ParseError(response->line, response->column, "response must come after the request");
  }
};

}  // namespace

ProtocolSpec parse_protocol(std::string_view source) {
  Builder b;
  int line_no = 0;
  for (auto& cur : detail::split_lines(source, line_no)) b.line(cur);
  b.finish(std::max(line_no, 1));
  return std::move(b.spec);
}

Term parse_term(std::string_view text, const ProtocolSpec& spec) {
  Cursor cur(detail::tokenize(text, 1));
  Term t = TermParser(cur, spec).term();
  cur.finish();
  return t;
}

std::string print_protocol(const ProtocolSpec& spec) {
  std::ostringstream out;
  out << "protocol " << spec.name << "\n";
  for (const auto& a : spec.atoms) out << "atom " << a.name << " : " << to_string(a.sort) << " size " << a.size << "\n";
  for (const auto& v : spec.vars) out << "var " << v.name << " : " << to_string(v.sort) << "\n";
  if (!spec.publics.empty()) {
    out << "public ";
    for (std::size_t i = 0; i < spec.publics.size(); ++i) out << (i ? ", " : "") << spec.publics[i];
    out << "\n";
  }
  out << "delta2 " << to_string(spec.delta2) << "\n";
  for (const auto& r : spec.roles) {
    out << "\nrole " << r.name << " : " << r.agent.name();
    if (r.kind == RoleKind::Verifier) out << " verifier";
    if (r.kind == RoleKind::Prover) out << " prover";
    out << "\n";
    for (const auto& n : r.nodes) {
      out << "  " << (n.sign == Sign::Plus ? "send " : "recv ") << n.term.to_string();
      if (n.marks & kMarkRequest) out << " request";
      if (n.marks & kMarkResponse) out << " response";
      if (n.marks & kMarkDb) out << " db";
      if (n.marks & kMarkAuth) out << " auth";
      if (n.weight) out << " @weight " << to_string(*n.weight);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace dbsolve
