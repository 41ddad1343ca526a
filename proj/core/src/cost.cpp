#include "dbsolve/cost.hpp"

#include <stdexcept>
#include <string>

namespace dbsolve {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Un: return "un";
    case Rule::Pair: return "pair";
    case Rule::Hash: return "hash";
    case Rule::Penc: return "penc";
    case Rule::Senc: return "senc";
    case Rule::Sig: return "sig";
    case Rule::Split: return "split";
    case Rule::Pdec: return "pdec";
    case Rule::Ksub: return "ksub";
    case Rule::Sdec: return "sdec";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (Rule r : kRuleOrder)
    if (to_string(r) == name) return r;
  return std::nullopt;
}

namespace {

Rational len(std::span<const std::size_t> l, std::size_t i) {
  if (i >= l.size()) throw std::invalid_argument("cost: missing operand");
  return Rational(static_cast<std::int64_t>(l[i]));
}

}  // namespace

CostTable CostTable::defaults() {
  CostTable t;
  auto sum = [](std::span<const std::size_t> l) { return len(l, 0) + len(l, 1); };
  auto sym = [](std::span<const std::size_t> l) { return len(l, 0) * len(l, 1); };
  auto asym = [](std::span<const std::size_t> l) { return 1000 * len(l, 0) * len(l, 1); };
  auto zero = [](std::span<const std::size_t>) { return Rational(0); };
  t.set(Rule::Pair, sum);
  t.set(Rule::Split, sum);
  t.set(Rule::Senc, sym);
  t.set(Rule::Sdec, sym);
  t.set(Rule::Penc, asym);
  t.set(Rule::Pdec, asym);
  t.set(Rule::Sig, asym);
  t.set(Rule::Hash, [](std::span<const std::size_t> l) { return len(l, 0) * 10; });
  t.set(Rule::Un, zero);
  t.set(Rule::Ksub, zero);
  return t;
}

Rational CostTable::evaluate(Rule rule, std::span<const std::size_t> lengths) const {
  auto it = entries_.find(rule);
  if (it == entries_.end()) throw std::invalid_argument("no cost entry for rule " + std::string(to_string(rule)));
  return it->second(lengths);
}

Rational action_cost(const CostTable& table, Rule rule, std::span<const Term> operands) {
  if (rule == Rule::Un || rule == Rule::Ksub) return table.evaluate(rule, {});
  std::vector<std::size_t> lengths;
  lengths.reserve(operands.size());
  for (const auto& t : operands) lengths.push_back(term_length(t));
  return table.evaluate(rule, lengths);
}

Rational action_cost(const CostTable& table, const RuleStep& step) {
  return action_cost(table, step.rule, step.operands);
}

Rational trace_cost(const CostTable& table, std::span<const RuleStep> trace) {
  Rational total = 0;
  for (const auto& step : trace) total += action_cost(table, step);
  return total;
}

}  // namespace dbsolve
