#pragma once

#include <vector>

#include "submode/common.hpp"
#include "submode/tree.hpp"

namespace submode {

// Euler-tour + sparse-table lowest common ancestors.  O(N log N) build,
// O(1) query, immutable afterwards (concurrent reads are safe).
class LcaIndex {
 public:
  explicit LcaIndex(const LeafColoredTree& t);

  NodeId lca(NodeId u, NodeId v) const;
  std::int32_t depth(NodeId v) const { return depth_[v]; }
  const std::vector<std::int32_t>& depths() const { return depth_; }

 private:
  std::int32_t rmq_pos(std::int32_t l, std::int32_t r) const;

  std::vector<NodeId> tour_;
  std::vector<std::int32_t> tour_depth_;
  std::vector<std::int32_t> first_;
  std::vector<std::int32_t> depth_;
  // Sparse table of argmin positions over tour_depth_, levels concatenated.
  std::vector<std::int32_t> table_;
  std::int32_t levels_ = 0;
  std::int32_t tour_len_ = 0;
};

// Binary-lifting level ancestors: ancestor_at_depth in O(log N), and the
// derived "which child of v leads to this descendant" query.
class LevelAncestorIndex {
 public:
  explicit LevelAncestorIndex(const LeafColoredTree& t);

  std::int32_t depth(NodeId v) const { return depth_[v]; }

  // The ancestor of v at depth d; requires 0 <= d <= depth(v).
  NodeId ancestor_at_depth(NodeId v, std::int32_t d) const;

  // The child of v on the path to `descendant`.  Throws
  // std::invalid_argument unless `descendant` is a strict descendant.
  NodeId child_toward(NodeId v, NodeId descendant) const;

 private:
  std::vector<std::int32_t> depth_;
  std::vector<NodeId> up_;  // levels_ rows of n entries
  std::int32_t levels_ = 0;
  std::int64_t n_ = 0;
};

}  // namespace submode
