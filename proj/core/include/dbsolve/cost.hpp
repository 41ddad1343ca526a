#pragma once

#include <functional>
#include <map>
#include <span>

#include "dbsolve/rational.hpp"
#include "dbsolve/rules.hpp"

namespace dbsolve {

// Attacker action costs as functions of operand byte lengths.
class CostTable {
 public:
  using CostFn = std::function<Rational(std::span<const std::size_t>)>;

  // pair, split: sum of lengths; senc/sdec: m*k; penc/pdec/sig: 1000*m*k;
  // hash: 10*m; un, ksub: 0.
  static CostTable defaults();

  void set(Rule rule, CostFn fn) { entries_[rule] = std::move(fn); }
  bool has(Rule rule) const { return entries_.contains(rule); }
  Rational evaluate(Rule rule, std::span<const std::size_t> lengths) const;

 private:
  std::map<Rule, CostFn> entries_;
};

// Cost of one rule application on ground operands.
Rational action_cost(const CostTable& table, Rule rule, std::span<const Term> operands);
Rational action_cost(const CostTable& table, const RuleStep& step);
Rational trace_cost(const CostTable& table, std::span<const RuleStep> trace);

}  // namespace dbsolve
