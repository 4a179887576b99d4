#include "submode/lca.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace submode {

LcaIndex::LcaIndex(const LeafColoredTree& t) {
  const std::int64_t n = t.size();
  depth_.assign(n, 0);
  first_.assign(n, -1);
  tour_.reserve(2 * n - 1);
  tour_depth_.reserve(2 * n - 1);

  // Iterative Euler tour: append a node on entry and again after each
  // child returns.
  struct Frame {
    NodeId v;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  stack.push_back({t.root(), 0});
  depth_[t.root()] = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const NodeId v = f.v;
    if (f.next_child == 0) {
      first_[v] = static_cast<std::int32_t>(tour_.size());
      tour_.push_back(v);
      tour_depth_.push_back(depth_[v]);
    }
    const auto kids = t.children(v);
    if (f.next_child < kids.size()) {
      const NodeId c = kids[f.next_child++];
      depth_[c] = depth_[v] + 1;
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        tour_.push_back(stack.back().v);
        tour_depth_.push_back(depth_[stack.back().v]);
      }
    }
  }

  tour_len_ = static_cast<std::int32_t>(tour_.size());
  levels_ = std::bit_width(static_cast<std::uint32_t>(tour_len_));
  table_.resize(static_cast<std::int64_t>(levels_) * tour_len_);
  for (std::int32_t i = 0; i < tour_len_; ++i) table_[i] = i;
  for (std::int32_t j = 1; j < levels_; ++j) {
    const std::int32_t half = 1 << (j - 1);
    const std::int64_t cur = static_cast<std::int64_t>(j) * tour_len_;
    const std::int64_t prev = cur - tour_len_;
    for (std::int32_t i = 0; i + (1 << j) <= tour_len_; ++i) {
      const std::int32_t a = table_[prev + i];
      const std::int32_t b = table_[prev + i + half];
      table_[cur + i] = tour_depth_[a] <= tour_depth_[b] ? a : b;
    }
  }
}

std::int32_t LcaIndex::rmq_pos(std::int32_t l, std::int32_t r) const {
  const std::int32_t j = std::bit_width(static_cast<std::uint32_t>(r - l + 1)) - 1;
  const std::int64_t row = static_cast<std::int64_t>(j) * tour_len_;
  const std::int32_t a = table_[row + l];
  const std::int32_t b = table_[row + r - (1 << j) + 1];
  return tour_depth_[a] <= tour_depth_[b] ? a : b;
}

NodeId LcaIndex::lca(NodeId u, NodeId v) const {
  std::int32_t l = first_[u];
  std::int32_t r = first_[v];
  if (l > r) std::swap(l, r);
  return tour_[rmq_pos(l, r)];
}

LevelAncestorIndex::LevelAncestorIndex(const LeafColoredTree& t) {
  n_ = t.size();
  depth_.assign(n_, 0);
  const std::vector<NodeId> order = bfs_order(t);
  for (NodeId v : order) {
    if (t.parent(v) != kNoNode) depth_[v] = depth_[t.parent(v)] + 1;
  }
  levels_ = std::max<std::int32_t>(1, std::bit_width(static_cast<std::uint64_t>(n_)));
  up_.resize(static_cast<std::int64_t>(levels_) * n_);
  for (NodeId v = 0; v < n_; ++v) {
    up_[v] = t.parent(v) == kNoNode ? v : t.parent(v);
  }
  for (std::int32_t j = 1; j < levels_; ++j) {
    const std::int64_t cur = static_cast<std::int64_t>(j) * n_;
    const std::int64_t prev = cur - n_;
    for (NodeId v = 0; v < n_; ++v) up_[cur + v] = up_[prev + up_[prev + v]];
  }
}

NodeId LevelAncestorIndex::ancestor_at_depth(NodeId v, std::int32_t d) const {
  std::int32_t lift = depth_[v] - d;
  if (lift < 0) throw std::invalid_argument("target depth below node");
  std::int32_t j = 0;
  while (lift != 0) {
    if (lift & 1) v = up_[static_cast<std::int64_t>(j) * n_ + v];
    lift >>= 1;
    ++j;
  }
  return v;
}

NodeId LevelAncestorIndex::child_toward(NodeId v, NodeId descendant) const {
  if (depth_[descendant] <= depth_[v] ||
      ancestor_at_depth(descendant, depth_[v]) != v) {
    throw std::invalid_argument("not a strict descendant");
  }
  return ancestor_at_depth(descendant, depth_[v] + 1);
}

}  // namespace submode
