#pragma once

#include <map>
#include <string>
#include <utility>

#include "dbsolve/rational.hpp"
#include "dbsolve/term.hpp"

namespace dbsolve {

// Pairwise distances between agent locations. Locations are agent names;
// the penetrator sits at "eps".
struct NetworkGeometry {
  std::map<std::pair<std::string, std::string>, Rational> distances;
  Rational speed = 1;
  Rational per_byte = 0;
  // Places one agent at another's location (used for the farther ideal).
  std::map<std::string, std::string> aliases;

  void set_distance(const std::string& a, const std::string& b, Rational d);
  std::string location(const std::string& agent) const;
  Rational distance(const std::string& a, const std::string& b) const;
  bool knows(const std::string& agent) const;
};

// Location key for an agent term: atom/constant name.
std::string location_of(const Term& agent);

// distance / speed + per_byte * length.
Rational traversal_time(const NetworkGeometry& g, const Term& msg, const std::string& from, const std::string& to);

// (tof - delta2) / 2 * speed.
Rational distance_bound(const Rational& tof, const Rational& delta2, const NetworkGeometry& g);

}  // namespace dbsolve
