#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dbsolve/strand.hpp"

namespace dbsolve {

// A total order over every node of a semi-bundle that respects strand order.
struct Interleaving {
  std::vector<NodeId> order;

  std::size_t position(NodeId id) const;
  friend bool operator==(const Interleaving&, const Interleaving&) = default;
};

struct InterleavingOptions {
  bool sdb_mode = false;
  // (request, response) on the verifier strand; required iff sdb_mode.
  std::optional<std::pair<NodeId, NodeId>> markers;
  // Nodes of other strands allowed between request and response.
  std::function<bool(NodeId)> allowed_in_window;
  std::size_t limit = 10000;
};

// Lazy, deterministic enumeration of linear extensions. Strands are tried in
// index order at every position.
class InterleavingStream {
 public:
  InterleavingStream(const SemiBundle& s, InterleavingOptions options);

  std::optional<Interleaving> next();
  // True once the limit stopped the enumeration with orders left unvisited.
  bool truncated() const { return truncated_; }
  std::size_t produced() const { return produced_; }

 private:
  bool admissible(std::size_t strand) const;
  bool descend_from(std::size_t first_strand);
  void pop();
  std::optional<Interleaving> advance();

  const SemiBundle* s_;
  InterleavingOptions opt_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> chosen_;
  std::vector<NodeId> order_;
  std::size_t total_ = 0;
  std::size_t produced_ = 0;
  bool started_ = false;
  bool done_ = false;
  bool truncated_ = false;
};

std::vector<Interleaving> enumerate_interleavings(const SemiBundle& s, const InterleavingOptions& options,
                                                  bool* truncated = nullptr);

std::vector<Interleaving> enumerate_interleavings(const SemiBundle& s, bool sdb_mode,
                                                  std::optional<std::pair<NodeId, NodeId>> markers,
                                                  std::size_t limit, bool* truncated = nullptr);

}  // namespace dbsolve
