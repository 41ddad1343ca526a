#pragma once

#include "dbsolve/bundle.hpp"
#include "dbsolve/solver.hpp"

namespace dbsolve {

struct BundleOptions {
  // A receive satisfied by a single (un) against an honest send is drawn as a
  // direct edge with no penetrator node in between.
  bool straight_relays = false;
};

// Grounding for whatever the solution leaves unbound in s: agents become
// eps, other variables fresh attacker atoms.
Substitution ground_residuals(const SemiBundle& s, const Solution& sol);

// Timed bundle for one satisfied interleaving. sol.substitution must ground
// every strand; apply ground_residuals first.
Bundle produce_bundle(const SemiBundle& s, const Interleaving& i, const Solution& sol, const NetworkGeometry& g,
                      const CostTable& table = CostTable::defaults(), const BundleOptions& options = {});

// Elapsed time along the verifier strand from request (+) to response (-).
Rational time_of_flight(const Bundle& b, NodeId request, NodeId response);

}  // namespace dbsolve
