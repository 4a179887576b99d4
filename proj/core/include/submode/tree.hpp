#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "submode/common.hpp"

namespace submode {

// An ordered rooted tree where exactly the leaves carry colors.
// Stored as flat arrays: parent pointers plus a CSR child list, so
// traversals touch contiguous memory.  Immutable once validated.
class LeafColoredTree {
 public:
  // Assembles and validates a tree from an explicit structure.
  // `child_off`/`child_buf` give each node's children in order;
  // `color` holds kNoColor for internal nodes.  `delta` < 0 means
  // "derive as 1 + max observed color id".
  static LeafColoredTree from_structure(std::vector<NodeId> parent,
                                        std::vector<std::int64_t> child_off,
                                        std::vector<NodeId> child_buf,
                                        std::vector<ColorId> color,
                                        ColorId delta = -1);

  // Same, but child order is derived from `appearance`: children of a
  // node are ordered by their position in that sequence.  An empty
  // appearance means increasing node id.
  static LeafColoredTree from_parents(std::vector<NodeId> parent,
                                      std::vector<ColorId> color,
                                      ColorId delta = -1,
                                      std::span<const NodeId> appearance = {});

  NodeId root() const { return root_; }
  std::int64_t size() const { return static_cast<std::int64_t>(parent_.size()); }
  std::int64_t leaf_count() const { return leaf_count_; }
  ColorId num_colors() const { return num_colors_; }

  NodeId parent(NodeId v) const { return parent_[v]; }
  ColorId color(NodeId v) const { return color_[v]; }
  bool is_leaf(NodeId v) const { return child_off_[v] == child_off_[v + 1]; }
  std::int64_t degree(NodeId v) const { return child_off_[v + 1] - child_off_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_buf_.data() + child_off_[v],
            static_cast<std::size_t>(child_off_[v + 1] - child_off_[v])};
  }

  const std::vector<NodeId>& parents() const { return parent_; }
  const std::vector<ColorId>& colors() const { return color_; }

 private:
  LeafColoredTree() = default;

  std::vector<NodeId> parent_;
  std::vector<std::int64_t> child_off_;
  std::vector<NodeId> child_buf_;
  std::vector<ColorId> color_;
  NodeId root_ = kNoNode;
  std::int64_t leaf_count_ = 0;
  ColorId num_colors_ = 0;
};

// Text format: optional "#N=<n> DELTA=<d>" header, then one node per
// line as "node_id parent_id [color]" (root uses parent -1, color is
// present iff the node is a leaf).  Sibling order follows line order.
LeafColoredTree parse_tree(std::istream& in);
LeafColoredTree parse_tree_file(const std::string& path);

// Emits the same format, nodes in id order, with a header.  Reparsing
// yields the identical tree whenever sibling ids are increasing (which
// holds for all trees this library emits or generates).
void serialize_tree(const LeafColoredTree& t, std::ostream& out);

// Maps every original node to its representative after contracting all
// unary paths (each maximal chain of one-child nodes collapses onto its
// bottom node, which is the first descendant with != 1 children).
struct ContractionMap {
  std::vector<NodeId> representative;  // original id -> id in contracted tree
};

std::pair<LeafColoredTree, ContractionMap> contract_unary_paths(const LeafColoredTree& t);

// Leaves in depth-first visit order, plus each leaf's rank in that
// order (-1 for internal nodes).
struct LeafOrder {
  std::vector<NodeId> leaves;
  std::vector<std::int32_t> rank;
};

LeafOrder leaf_order(const LeafColoredTree& t);

// Every subtree owns a contiguous rank interval [lo, hi] of the leaf
// order; both bounds inclusive.
struct LeafInterval {
  std::int32_t lo;
  std::int32_t hi;
};

std::vector<LeafInterval> subtree_leaf_intervals(const LeafColoredTree& t,
                                                 const LeafOrder& order);

// Nodes in breadth-first order from the root: every parent precedes its
// children, so iterating the result backwards is a bottom-up sweep.
std::vector<NodeId> bfs_order(const LeafColoredTree& t);

// Number of leaf descendants per node (a leaf counts itself).
std::vector<std::int32_t> subtree_leaf_counts(const LeafColoredTree& t);

}  // namespace submode
