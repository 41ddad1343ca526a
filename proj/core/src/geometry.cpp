#include "dbsolve/geometry.hpp"

#include <stdexcept>

namespace dbsolve {

void NetworkGeometry::set_distance(const std::string& a, const std::string& b, Rational d) {
  if (d < 0) throw std::invalid_argument("negative distance between " + a + " and " + b);
  if (a == b && d != 0) throw std::invalid_argument("distance from " + a + " to itself must be 0");
  distances[{std::min(a, b), std::max(a, b)}] = d;
}

std::string NetworkGeometry::location(const std::string& agent) const {
  std::string cur = agent;
  for (std::size_t hops = 0; hops <= aliases.size(); ++hops) {
    auto it = aliases.find(cur);
    if (it == aliases.end()) return cur;
    cur = it->second;
  }
  throw std::invalid_argument("alias cycle at " + agent);
}

Rational NetworkGeometry::distance(const std::string& a, const std::string& b) const {
  std::string x = location(a);
  std::string y = location(b);
  if (x == y) return 0;
  auto it = distances.find({std::min(x, y), std::max(x, y)});
  if (it == distances.end()) throw std::invalid_argument("no distance between " + x + " and " + y);
  return it->second;
}

bool NetworkGeometry::knows(const std::string& agent) const {
  std::string x = location(agent);
  for (const auto& [k, v] : distances)
    if (k.first == x || k.second == x) return true;
  return false;
}

std::string location_of(const Term& agent) {
  if (agent.kind() != TermKind::Atom && agent.kind() != TermKind::Constant)
    throw std::invalid_argument("agent location of non-atomic term " + agent.to_string());
  return agent.name();
}

Rational traversal_time(const NetworkGeometry& g, const Term& msg, const std::string& from, const std::string& to) {
  if (g.speed <= 0) throw std::invalid_argument("signal speed must be positive");
  Rational per_byte = 0;
  if (g.per_byte != 0) per_byte = g.per_byte * Rational(static_cast<std::int64_t>(term_length(msg)));
  return g.distance(from, to) / g.speed + per_byte;
}

Rational distance_bound(const Rational& tof, const Rational& delta2, const NetworkGeometry& g) {
  if (tof < delta2) throw std::invalid_argument("time of flight below delta2: negative distance");
  return (tof - delta2) / 2 * g.speed;
}

}  // namespace dbsolve
