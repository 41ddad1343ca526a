#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dbsolve/constraint.hpp"
#include "dbsolve/geometry.hpp"
#include "dbsolve/protocol.hpp"

namespace dbsolve {

enum class Honesty { Honest, PartialCollusion, FullCollusion };
enum class Placement { Closer, Farther };

std::string_view to_string(Honesty h);
std::string_view to_string(Placement p);

struct Grounding {
  std::string role;
  std::string variable;
  std::string atom;
  friend bool operator==(const Grounding&, const Grounding&) = default;
};

struct ScenarioConfig {
  std::string name;
  Honesty honesty = Honesty::Honest;
  Placement placement = Placement::Closer;
  NetworkGeometry geometry;
  std::map<std::string, int> multiplicity;  // role name -> strand count, 1 when absent
  std::vector<Grounding> groundings;

  int count(const std::string& role) const;

  // Shipped distance matrices: closer puts eps at 1 from the verifier and the
  // prover at 3; farther swaps them. Speed 1, no per-byte overhead.
  static ScenarioConfig preset(Placement placement, Honesty honesty = Honesty::Honest, const std::string& verifier = "v",
                               const std::string& prover = "p");
};

ScenarioConfig parse_scenario(std::string_view source);

// Everything the analyzer searches over for one scenario.
struct ScenarioModel {
  // Strand 0 is the verifier.
  SemiBundle semibundle;
  AttackerKnowledge knowledge;
  NetworkGeometry geometry;

  // Untransformed strands and geometry used for the ideal baseline.
  SemiBundle ideal_source;
  NetworkGeometry ideal_geometry;

  NodeId request;
  NodeId response;
  std::set<int> tagged;  // strands whose sends are tagged (the nearer prover p1)
  PolicyFn policy;
  std::function<bool(NodeId)> window;  // non-verifier nodes allowed between request and response
  bool straight_relays = false;
};

// One strand per role in declaration order, variables scoped by strand.
SemiBundle protocol_semibundle(const ProtocolSpec& protocol);

// Throws std::invalid_argument when the protocol lacks markers, the
// multiplicities do not fit the placement, or a grounding is ill-formed.
ScenarioModel scenario_semibundle(const ProtocolSpec& protocol, const ScenarioConfig& cfg);

}  // namespace dbsolve
