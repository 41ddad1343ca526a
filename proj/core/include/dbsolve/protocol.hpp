#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbsolve/rational.hpp"
#include "dbsolve/strand.hpp"
#include "dbsolve/term.hpp"

namespace dbsolve {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct AtomDecl {
  std::string name;
  Sort sort = Sort::Generic;
  std::size_t size = 16;
  friend bool operator==(const AtomDecl&, const AtomDecl&) = default;
};

struct VarDecl {
  std::string name;
  Sort sort = Sort::Generic;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct NodeSpec {
  Sign sign = Sign::Plus;
  Term term;
  unsigned marks = kMarkNone;
  std::optional<Rational> weight;  // overrides the computed preset
  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

enum class RoleKind { Verifier, Prover, Other };

struct RoleSpec {
  std::string name;
  Term agent;
  RoleKind kind = RoleKind::Other;
  std::vector<NodeSpec> nodes;
  friend bool operator==(const RoleSpec&, const RoleSpec&) = default;
};

struct ProtocolSpec {
  std::string name;
  std::vector<AtomDecl> atoms;
  std::vector<VarDecl> vars;
  std::vector<std::string> publics;
  Rational delta2 = 0;
  std::vector<RoleSpec> roles;

  const RoleSpec* role(std::string_view name) const;
  const RoleSpec* verifier() const;
  const RoleSpec* prover() const;
  // (request index, response index) on the verifier role.
  std::optional<std::pair<std::size_t, std::size_t>> markers() const;
  std::optional<Term> atom(std::string_view name) const;
  std::vector<Term> agents() const;
  std::vector<Term> public_terms() const;

  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

ProtocolSpec parse_protocol(std::string_view source);
std::string print_protocol(const ProtocolSpec& spec);

// Parses one term against the declarations of `spec`.
Term parse_term(std::string_view text, const ProtocolSpec& spec);

}  // namespace dbsolve
