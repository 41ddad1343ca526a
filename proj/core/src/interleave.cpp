#include "dbsolve/interleave.hpp"

#include <stdexcept>

namespace dbsolve {

std::size_t Interleaving::position(NodeId id) const {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == id) return i;
  throw std::invalid_argument("node not in interleaving");
}

InterleavingStream::InterleavingStream(const SemiBundle& s, InterleavingOptions options)
    : s_(&s), opt_(std::move(options)), pos_(s.strands.size(), 0), total_(s.node_count()) {
  if (opt_.sdb_mode != opt_.markers.has_value())
    throw std::invalid_argument("request/response markers are required exactly when sdb mode is on");
  if (opt_.limit == 0) throw std::invalid_argument("interleaving limit must be positive");
  if (opt_.markers) {
    auto [req, resp] = *opt_.markers;
    if (req.strand != resp.strand || req.index >= resp.index)
      throw std::invalid_argument("request must precede response on one strand");
    s.node(req);
    s.node(resp);
  }
}

bool InterleavingStream::admissible(std::size_t strand) const {
  const auto& st = s_->strands[strand];
  if (pos_[strand] >= st.nodes.size()) return false;
  if (!opt_.sdb_mode) return true;
  auto [req, resp] = *opt_.markers;
  auto vs = static_cast<std::size_t>(req.strand);
  bool in_window = pos_[vs] > static_cast<std::size_t>(req.index) && pos_[vs] <= static_cast<std::size_t>(resp.index);
  if (!in_window || strand == vs) return true;
  NodeId id{static_cast<int>(strand), static_cast<int>(pos_[strand])};
  return opt_.allowed_in_window && opt_.allowed_in_window(id);
}

bool InterleavingStream::descend_from(std::size_t first_strand) {
  for (std::size_t s = first_strand; s < pos_.size(); ++s) {
    if (!admissible(s)) continue;
    order_.push_back({static_cast<int>(s), static_cast<int>(pos_[s])});
    chosen_.push_back(s);
    ++pos_[s];
    return true;
  }
  return false;
}

void InterleavingStream::pop() {
  --pos_[chosen_.back()];
  chosen_.pop_back();
  order_.pop_back();
}

std::optional<Interleaving> InterleavingStream::advance() {
  if (done_) return std::nullopt;
  bool descending = !started_;
  started_ = true;
  while (true) {
    if (descending) {
      while (order_.size() < total_)
        if (!descend_from(0)) break;
      if (order_.size() == total_) return Interleaving{order_};
    }
    // Backtrack to the deepest position with an untried strand.
    descending = false;
    while (!chosen_.empty()) {
      std::size_t last = chosen_.back();
      pop();
      if (descend_from(last + 1)) {
        descending = true;
        break;
      }
    }
    if (!descending) {
      done_ = true;
      return std::nullopt;
    }
  }
}

std::optional<Interleaving> InterleavingStream::next() {
  if (done_) return std::nullopt;
  auto next = advance();
  if (!next) return std::nullopt;
  if (produced_ == opt_.limit) {
    truncated_ = true;
    done_ = true;
    return std::nullopt;
  }
  ++produced_;
  return next;
}

std::vector<Interleaving> enumerate_interleavings(const SemiBundle& s, const InterleavingOptions& options,
                                                  bool* truncated) {
  InterleavingStream stream(s, options);
  std::vector<Interleaving> out;
  while (auto i = stream.next()) out.push_back(std::move(*i));
  if (truncated) *truncated = stream.truncated();
  return out;
}

std::vector<Interleaving> enumerate_interleavings(const SemiBundle& s, bool sdb_mode,
                                                  std::optional<std::pair<NodeId, NodeId>> markers,
                                                  std::size_t limit, bool* truncated) {
  InterleavingOptions o;
  o.sdb_mode = sdb_mode;
  o.markers = markers;
  o.limit = limit;
  return enumerate_interleavings(s, o, truncated);
}

}  // namespace dbsolve
