#include "dbsolve/scenario.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

#include "lexer.hpp"

namespace dbsolve {

std::string_view to_string(Honesty h) {
  switch (h) {
    case Honesty::Honest: return "honest";
    case Honesty::PartialCollusion: return "partial";
    case Honesty::FullCollusion: return "full";
  }
  return "?";
}

std::string_view to_string(Placement p) { return p == Placement::Closer ? "closer" : "farther"; }

int ScenarioConfig::count(const std::string& role) const {
  auto it = multiplicity.find(role);
  return it == multiplicity.end() ? 1 : it->second;
}

ScenarioConfig ScenarioConfig::preset(Placement placement, Honesty honesty, const std::string& verifier,
                                      const std::string& prover) {
  ScenarioConfig c;
  c.name = std::string(to_string(placement)) + "-" + std::string(to_string(honesty));
  c.placement = placement;
  c.honesty = honesty;
  const std::string eps = location_of(Term::attacker());
  bool closer = placement == Placement::Closer;
  c.geometry.set_distance(verifier, prover, closer ? 3 : 1);
  c.geometry.set_distance(verifier, eps, closer ? 1 : 3);
  c.geometry.set_distance(prover, eps, 2);
  return c;
}

ScenarioConfig parse_scenario(std::string_view source) {
  using detail::Token;
  ScenarioConfig cfg;
  bool header = false;
  int lines = 0;
  for (auto& cur : detail::split_lines(source, lines)) {
    const Token kw = cur.ident("a keyword");
    if (kw.text == "scenario") {
      if (header) throw cur.error(kw, "duplicate scenario header");
      cfg.name = cur.ident("a scenario name").text;
      header = true;
    } else if (!header) {
      throw cur.error(kw, "file must start with 'scenario <name>'");
    } else if (kw.text == "honesty") {
      const Token v = cur.ident("honest, partial or full");
      if (v.text == "honest") cfg.honesty = Honesty::Honest;
      else if (v.text == "partial") cfg.honesty = Honesty::PartialCollusion;
      else if (v.text == "full") cfg.honesty = Honesty::FullCollusion;
      else throw cur.error(v, "honesty is honest, partial or full");
    } else if (kw.text == "placement") {
      const Token v = cur.ident("closer or farther");
      if (v.text == "closer") cfg.placement = Placement::Closer;
      else if (v.text == "farther") cfg.placement = Placement::Farther;
      else throw cur.error(v, "placement is closer or farther");
    } else if (kw.text == "speed") {
      const Token at = cur.peek();
      cfg.geometry.speed = cur.rational("a speed");
      if (cfg.geometry.speed <= 0) throw cur.error(at, "speed must be positive");
    } else if (kw.text == "per_byte") {
      const Token at = cur.peek();
      cfg.geometry.per_byte = cur.rational("an overhead");
      if (cfg.geometry.per_byte < 0) throw cur.error(at, "per-byte overhead must be non-negative");
    } else if (kw.text == "distance") {
      const Token a = cur.ident("an agent");
      const Token b = cur.ident("an agent");
      const Token at = cur.peek();
      Rational d = cur.rational("a distance");
      if (d < 0) throw cur.error(at, "distances are non-negative");
      if (a.text == b.text) throw cur.error(b, "distance from an agent to itself is always 0");
      cfg.geometry.set_distance(a.text, b.text, d);
    } else if (kw.text == "ground") {
      Grounding g;
      g.role = cur.ident("a role").text;
      g.variable = cur.ident("a variable").text;
      cur.expect('=');
      g.atom = cur.ident("an atom").text;
      cfg.groundings.push_back(std::move(g));
    } else if (kw.text == "multiplicity") {
      std::string role = cur.ident("a role").text;
      const Token n = cur.next();
      if (n.kind != detail::TokenKind::Number || n.text.find_first_not_of("0123456789") != std::string::npos)
        throw cur.error(n, "multiplicity is a non-negative integer");
      cfg.multiplicity[role] = std::stoi(n.text);
    } else {
      throw cur.error(kw, "unknown keyword '" + kw.text + "'");
    }
    cur.finish();
  }
  if (!header) throw ParseError(1, 1, "empty scenario file");
  return cfg;
}

namespace {

// Atoms a role sends before it has received them: its own fresh values.
std::set<Term> originated(const RoleSpec& r) {
  std::set<Term> seen, out;
  for (const auto& n : r.nodes) {
    std::set<Term> atoms;
    collect_atoms(n.term, atoms);
    for (const auto& a : atoms) {
      if (a.kind() != TermKind::Atom || a.sort() == Sort::Agent) continue;
      if (n.sign == Sign::Plus && !seen.count(a)) out.insert(a);
      seen.insert(a);
    }
  }
  return out;
}

struct Instance {
  const RoleSpec* role;
  int copy;  // 1-based
};

Strand build_strand(const RoleSpec& role, int copy, int scope, const Substitution& ground,
                    bool (*keep)(const NodeSpec&)) {
  std::map<Term, Term> atom_map;
  if (copy > 1)
    for (const auto& a : originated(role))
      atom_map[a] = Term::atom(a.name() + "_" + std::to_string(copy), a.sort(), a.declared_size());

  auto rewrite = [&](const Term& t) {
    Term g = ground.apply(t);
    if (!atom_map.empty()) {
      // Atom renaming is a plain structural replacement.
      std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
        if (auto it = atom_map.find(u); it != atom_map.end()) return it->second;
        switch (u.kind()) {
          case TermKind::Pair: return Term::pair(go(u.arg(0)), go(u.arg(1)));
          case TermKind::PublicKey: return Term::public_key(go(u.arg(0)));
          case TermKind::SharedKey: return Term::shared_key(go(u.arg(0)), go(u.arg(1)));
          case TermKind::AsymEnc: return Term::asym_enc(go(u.arg(0)), go(u.arg(1)));
          case TermKind::SymEnc: return Term::sym_enc(go(u.arg(0)), go(u.arg(1)));
          case TermKind::Hash: return Term::hash(go(u.arg(0)));
          case TermKind::Signature: return Term::signature(go(u.arg(0)), go(u.arg(1)));
          default: return u;
        }
      };
      g = go(g);
    }
    return g.rescoped(scope);
  };

  Strand s;
  s.name = role.agent.name() + (copy > 1 ? "#" + std::to_string(copy) : "");
  s.role = role.name;
  s.agent = role.agent;
  for (const auto& spec : role.nodes) {
    if (keep && !keep(spec)) continue;
    Node n;
    n.id = {scope, static_cast<int>(s.nodes.size())};
    n.sign = spec.sign;
    n.term = rewrite(spec.term);
    n.marks = spec.marks;
    if (spec.weight && !s.nodes.empty()) s.weights[s.nodes.size() - 1] = *spec.weight;
    s.nodes.push_back(std::move(n));
  }
  return s;
}

bool drop_db_sends(const NodeSpec& n) { return !(n.sign == Sign::Plus && (n.marks & kMarkDb)); }
bool drop_auth(const NodeSpec& n) { return !(n.marks & kMarkAuth); }

Substitution groundings_for(const ProtocolSpec& protocol, const ScenarioConfig& cfg, const RoleSpec& role) {
  Substitution s;
  for (const auto& g : cfg.groundings) {
    if (!protocol.role(g.role)) throw std::invalid_argument("grounding names unknown role " + g.role);
    if (g.role != role.name) continue;
    const VarDecl* decl = nullptr;
    for (const auto& v : protocol.vars)
      if (v.name == g.variable) decl = &v;
    if (!decl) throw std::invalid_argument("grounding names undeclared variable " + g.variable);
    Term value = g.atom == "eps" ? Term::attacker() : [&] {
      auto a = protocol.atom(g.atom);
      if (!a) throw std::invalid_argument("grounding names undeclared atom " + g.atom);
      return *a;
    }();
    Term var = Term::variable(decl->name, decl->sort);
    if (!sort_admits(decl->sort, value))
      throw std::invalid_argument("cannot ground " + g.variable + " : " + std::string(to_string(decl->sort)) + " to " +
                                  value.to_string());
    s.bind(var, value);
  }
  return s;
}

std::set<Term> secret_atoms(const Strand& s, bool db_only, const std::set<Term>& foreign, const std::vector<Term>& publics) {
  std::set<Term> out;
  for (const auto& n : s.nodes) {
    if (n.sign != Sign::Plus || (db_only && !n.has(kMarkDb))) continue;
    std::set<Term> atoms;
    collect_atoms(n.term, atoms);
    for (const auto& a : atoms) {
      if (a.kind() != TermKind::Atom || a.sort() == Sort::Agent || foreign.count(a)) continue;
      if (std::find(publics.begin(), publics.end(), a) != publics.end()) continue;
      out.insert(a);
    }
  }
  return out;
}

}  // namespace

SemiBundle protocol_semibundle(const ProtocolSpec& protocol) {
  SemiBundle sb;
  for (const auto& r : protocol.roles)
    sb.strands.push_back(build_strand(r, 1, static_cast<int>(sb.strands.size()), Substitution{}, nullptr));
  return sb;
}

ScenarioModel scenario_semibundle(const ProtocolSpec& protocol, const ScenarioConfig& cfg) {
  const RoleSpec* verifier = protocol.verifier();
  auto markers = protocol.markers();
  if (!verifier || !markers) throw std::invalid_argument("protocol " + protocol.name + " declares no request/response markers");
  for (const auto& [role, n] : cfg.multiplicity) {
    if (!protocol.role(role)) throw std::invalid_argument("multiplicity names unknown role " + role);
    if (n < 0) throw std::invalid_argument("negative multiplicity for " + role);
  }
  if (cfg.count(verifier->name) != 1) throw std::invalid_argument("the verifier role must have exactly one strand");
  const RoleSpec* prover = protocol.prover();
  if (cfg.placement == Placement::Farther) {
    if (!prover) throw std::invalid_argument("farther placement needs a prover role");
    if (cfg.count(prover->name) < 1) throw std::invalid_argument("farther placement needs at least one honest prover strand");
  }
  if (cfg.honesty != Honesty::Honest && (!prover || cfg.count(prover->name) < 1))
    throw std::invalid_argument("collusion needs a prover strand");

  std::vector<Instance> order{{verifier, 1}};
  if (prover)
    for (int c = 1; c <= cfg.count(prover->name); ++c) order.push_back({prover, c});
  for (const auto& r : protocol.roles)
    if (&r != verifier && &r != prover)
      for (int c = 1; c <= cfg.count(r.name); ++c) order.push_back({&r, c});

  ScenarioModel m;
  m.geometry = cfg.geometry;
  m.ideal_geometry = cfg.geometry;
  m.request = {0, static_cast<int>(markers->first)};
  m.response = {0, static_cast<int>(markers->second)};

  std::vector<int> prover_strands;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& inst = order[i];
    const int scope = static_cast<int>(i);
    Substitution g = groundings_for(protocol, cfg, *inst.role);
    m.ideal_source.strands.push_back(build_strand(*inst.role, inst.copy, scope, g, nullptr));
    bool (*keep)(const NodeSpec&) = nullptr;
    if (inst.role == prover) {
      prover_strands.push_back(scope);
      if (cfg.placement == Placement::Closer) keep = drop_db_sends;
      else if (inst.copy == 1) keep = drop_auth;
    }
    m.semibundle.strands.push_back(build_strand(*inst.role, inst.copy, scope, g, keep));
  }
  // Strand names must stay unique for reports.
  std::set<std::string> names;
  for (std::size_t i = 0; i < m.semibundle.strands.size(); ++i) {
    auto& s = m.semibundle.strands[i];
    std::string name = s.name;
    for (int k = 2; names.count(name); ++k) name = s.name + "#" + std::to_string(k);
    names.insert(name);
    s.name = name;
    m.ideal_source.strands[i].name = name;
  }

  m.knowledge = AttackerKnowledge::defaults(protocol.agents(), protocol.public_terms());
  if (cfg.honesty != Honesty::Honest) {
    std::set<Term> foreign;
    for (const auto& s : m.ideal_source.strands)
      if (s.role != prover->name)
        for (const auto& n : s.nodes)
          if (n.sign == Sign::Plus) collect_atoms(n.term, foreign);
    const bool full = cfg.honesty == Honesty::FullCollusion;
    for (int idx : prover_strands) {
      const Strand& s = m.ideal_source.strands[static_cast<std::size_t>(idx)];
      for (const auto& a : secret_atoms(s, !full, foreign, protocol.public_terms())) m.knowledge.add(a);
      if (full) {
        m.knowledge.compromised.insert(s.agent);
        std::vector<Term> peers = protocol.agents();
        peers.push_back(Term::attacker());
        for (const auto& x : peers) {
          if (x == s.agent) continue;
          m.knowledge.add(Term::shared_key(s.agent, x));
          m.knowledge.add(Term::shared_key(x, s.agent));
        }
      }
    }
  }

  if (cfg.placement == Placement::Farther) {
    const int p1 = prover_strands.front();
    m.tagged.insert(p1);
    m.straight_relays = true;
    const NodeId rq = m.request, rs = m.response;
    m.policy = [rq, rs](NodeId id) {
      if (id.strand != 0) return BindPolicy::Normal;
      return id.index > rq.index && id.index <= rs.index ? BindPolicy::RelayFromTagged : BindPolicy::NoTaggedBinding;
    };
    auto db_nodes = std::make_shared<std::set<NodeId>>();
    for (const auto& n : m.semibundle.strands[static_cast<std::size_t>(p1)].nodes)
      if (n.has(kMarkDb)) db_nodes->insert(n.id);
    m.window = [db_nodes](NodeId id) { return db_nodes->count(id) > 0; };
    // The ideal execution runs against a prover standing where the attacker is.
    const std::string eps = location_of(Term::attacker());
    m.ideal_geometry.aliases[location_of(prover->agent)] = eps;
  }
  return m;
}

}  // namespace dbsolve
