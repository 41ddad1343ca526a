#include "dbsolve/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dbsolve {

std::string node_label(const Bundle& b, NodeId id) {
  const auto& s = b.strands.at(static_cast<std::size_t>(id.strand));
  if (s.kind == StrandKind::Penetrator) return "e" + std::to_string(id.index + 1);
  return s.name + "." + std::to_string(id.index + 1);
}

std::vector<TraceMessage> message_sequence(const Bundle& b) {
  std::vector<const MessageEdge*> edges;
  for (const auto& e : b.edges) edges.push_back(&e);
  auto time = [&](NodeId id) { return b.node(id).time.value_or(0); };
  std::stable_sort(edges.begin(), edges.end(), [&](const MessageEdge* x, const MessageEdge* y) {
    if (time(x->to) != time(y->to)) return time(x->to) < time(y->to);
    if (time(x->from) != time(y->from)) return time(x->from) < time(y->from);
    if (x->from != y->from) return x->from < y->from;
    return x->to < y->to;
  });
  std::vector<TraceMessage> out;
  for (const auto* e : edges)
    out.push_back({node_label(b, e->from), node_label(b, e->to), b.node(e->from).term.to_string(), time(e->from), time(e->to)});
  return out;
}

std::string render_trace(const Bundle& b) {
  std::string out;
  for (const auto& m : message_sequence(b))
    out += m.from + " -> " + m.to + " : " + m.term + "  @ " + to_string(m.sent) + " -> " + to_string(m.received) + "\n";
  return out;
}

std::vector<TraceMessage> parse_trace(std::string_view text) {
  std::vector<TraceMessage> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    auto fail = [&](const char* what) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": " + what);
    };
    std::size_t arrow = line.find(" -> ");
    std::size_t colon = line.find(" : ");
    std::size_t at = line.rfind("  @ ");
    if (arrow == std::string_view::npos || colon == std::string_view::npos || at == std::string_view::npos || !(arrow < colon && colon < at))
      fail("expected 'from -> to : term  @ sent -> received'");
    TraceMessage m;
    m.from = std::string(line.substr(0, arrow));
    m.to = std::string(line.substr(arrow + 4, colon - arrow - 4));
    m.term = std::string(line.substr(colon + 3, at - colon - 3));
    std::string_view times = line.substr(at + 4);
    std::size_t t_arrow = times.find(" -> ");
    if (t_arrow == std::string_view::npos) fail("missing receive time");
    m.sent = parse_rational(times.substr(0, t_arrow));
    m.received = parse_rational(times.substr(t_arrow + 4));
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string emit_dot(const Bundle& b) {
  std::ostringstream out;
  out << "digraph bundle {\n";
  if (b.strands.empty()) {
    out << "}\n";
    return out.str();
  }
  out << "  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t si = 0; si < b.strands.size(); ++si) {
    const auto& s = b.strands[si];
    const bool pen = s.kind == StrandKind::Penetrator;
    out << "  subgraph cluster_" << si << " {\n";
    out << "    label=\"" << escape(pen ? "penetrator" : s.name) << "\";\n";
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      const auto& n = s.nodes[i];
      NodeId id{static_cast<int>(si), static_cast<int>(i)};
      out << "    \"" << escape(node_label(b, id)) << "\" [label=\"" << sign_char(n.sign) << " "
          << escape(n.term.to_string());
      if (n.time) out << "\\nt=" << to_string(*n.time);
      out << "\"];\n";
    }
    int delta = 0;
    for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
      NodeId from{static_cast<int>(si), static_cast<int>(i)};
      NodeId to{static_cast<int>(si), static_cast<int>(i + 1)};
      auto it = s.weights.find(i);
      std::string w = it == s.weights.end() ? "?" : to_string(it->second);
      out << "    \"" << escape(node_label(b, from)) << "\" -> \"" << escape(node_label(b, to)) << "\" [style=bold, label=\"";
      if (pen) out << "δ" << ++delta << " = ";
      out << w << "\"];\n";
    }
    out << "  }\n";
  }
  for (const auto& e : b.edges)
    out << "  \"" << escape(node_label(b, e.from)) << "\" -> \"" << escape(node_label(b, e.to)) << "\" [label=\""
        << escape(b.node(e.from).term.to_string()) << " / " << to_string(e.weight) << "\"];\n";
  out << "}\n";
  return out.str();
}

TraceReport make_report(const Verdict& v) {
  TraceReport r;
  r.verdict = v;
  if (v.witness) {
    r.rendered_trace = render_trace(*v.witness);
    r.dot = emit_dot(*v.witness);
  } else {
    r.dot = emit_dot(Bundle{});
  }
  return r;
}

std::string render_report(const Verdict& v, const ProtocolSpec& protocol, const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "protocol " << protocol.name << ", scenario " << cfg.name << " (" << to_string(cfg.placement) << ", "
      << to_string(cfg.honesty) << ")\n";
  out << "verdict: " << to_string(v.status) << "\n";
  out << "ideal ToF: " << to_string(v.ideal_tof) << "\n";
  out << "real ToF: " << (v.real_tof ? to_string(*v.real_tof) : std::string("-")) << "\n";
  auto bound = [&](const Rational& tof) {
    return tof < protocol.delta2 ? std::string("-") : to_string(distance_bound(tof, protocol.delta2, cfg.geometry));
  };
  out << "distance bound: ideal " << bound(v.ideal_tof);
  if (v.real_tof) out << ", real " << bound(*v.real_tof);
  out << "\n";
  out << "traces: " << v.trace_count << "\n";
  out << "searched: " << v.interleavings << " interleavings, " << v.solutions << " solutions\n";
  for (const auto& w : v.warnings) out << "warning: " << w << "\n";
  for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
    const auto& w = v.witnesses[i];
    out << "\nwitness " << i + 1 << " (interleaving " << w.interleaving_index << ", ToF " << to_string(w.tof) << ")\n";
    std::istringstream lines(render_trace(w.bundle));
    for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
  }
  return out.str();
}

}  // namespace dbsolve
