#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dbsolve/term.hpp"

namespace dbsolve {

// Reduction rules, in the order the solver tries them.
enum class Rule { Un, Pair, Hash, Penc, Senc, Sig, Split, Pdec, Ksub, Sdec };

inline constexpr Rule kRuleOrder[] = {Rule::Un,    Rule::Pair, Rule::Hash, Rule::Penc, Rule::Senc,
                                      Rule::Sig,   Rule::Split, Rule::Pdec, Rule::Ksub, Rule::Sdec};

std::string_view to_string(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

struct NodeId {
  int strand = -1;
  int index = -1;

  bool valid() const { return strand >= 0 && index >= 0; }
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

// One rule application. Operands are the terms the cost table is evaluated on:
//   un: (target, matched member)   pair: (m1, m2)        hash: (m)
//   penc/senc/sig: (body, key)     split: (t1, t2)       pdec/sdec: (body, key)
//   ksub: (key, pk(c))
// `source` is the sending node of a matched member (un only), invalid for
// initial knowledge.
struct RuleStep {
  Rule rule = Rule::Un;
  std::vector<Term> operands;
  NodeId source;

  friend bool operator==(const RuleStep&, const RuleStep&) = default;
};

}  // namespace dbsolve
