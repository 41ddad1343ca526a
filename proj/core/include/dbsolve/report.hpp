#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dbsolve/analyzer.hpp"

namespace dbsolve {

struct TraceMessage {
  std::string from;  // node label: v.1, e3
  std::string to;
  std::string term;
  Rational sent;
  Rational received;

  friend bool operator==(const TraceMessage&, const TraceMessage&) = default;
};

std::string node_label(const Bundle& b, NodeId id);

// Message edges ordered by receive time, then send time, then node ids.
std::vector<TraceMessage> message_sequence(const Bundle& b);

// One "from -> to : term  @ sent -> received" line per message.
std::string render_trace(const Bundle& b);
std::vector<TraceMessage> parse_trace(std::string_view text);

// Strands as column clusters, strand edges bold with their weights,
// penetrator strand edges labelled delta_k, message edges with term and weight.
std::string emit_dot(const Bundle& b);

struct TraceReport {
  Verdict verdict;
  std::string rendered_trace;  // first witness, empty without one
  std::string dot;
};

TraceReport make_report(const Verdict& v);

// Human-readable summary: verdict, times of flight, distance bounds, warnings
// and every witness trace.
std::string render_report(const Verdict& v, const ProtocolSpec& protocol, const ScenarioConfig& cfg);

}  // namespace dbsolve
