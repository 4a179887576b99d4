#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "submode/common.hpp"
#include "submode/lca.hpp"
#include "submode/stacktree.hpp"
#include "submode/tree.hpp"

namespace submode {

// Per color i, the leaves of T colored i in leaf-order rank order,
// stored CSR style.
struct LeafList {
  std::vector<std::int64_t> off;  // num_colors + 1 offsets
  std::vector<NodeId> leaves;

  std::span<const NodeId> of(ColorId i) const {
    return {leaves.data() + off[i],
            static_cast<std::size_t>(off[i + 1] - off[i])};
  }
};

LeafList build_leaf_lists(const LeafColoredTree& t, const LeafOrder& order);

// The induced tree over one color class: leaves are the color-i leaves
// of T, internal nodes are the pairwise LCAs of those leaves (deduped),
// and phi maps every node back to the corresponding node of T.  phi is
// injective and order/ancestry preserving; no node has exactly one
// child.
struct SingleColorTree {
  std::vector<NodeId> phi;     // node -> node of T
  std::vector<NodeId> parent;  // within this tree, kNoNode at root
  NodeId root = kNoNode;
  std::int32_t num_leaves = 0;  // leaves occupy ids 0..num_leaves-1

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }
  bool is_leaf(NodeId u) const { return u < num_leaves; }
};

SingleColorTree build_single_color_tree(const LcaIndex& lca,
                                        std::span<const NodeId> color_leaves);

// All single-color trees plus a reverse index: for every node v of T,
// the (color, node) pairs with phi_color(node) == v.
struct SingleColorForest {
  std::vector<SingleColorTree> trees;
  std::vector<std::int64_t> rev_off;  // per node of T
  struct RevEntry {
    ColorId color;
    NodeId node;  // node id within trees[color]
  };
  std::vector<RevEntry> rev;

  std::span<const RevEntry> at(NodeId v) const {
    return {rev.data() + rev_off[v],
            static_cast<std::size_t>(rev_off[v + 1] - rev_off[v])};
  }
};

SingleColorForest split_forest(const LeafColoredTree& t, const LcaIndex& lca,
                               const LeafOrder& order);

// Leaf-descendant counts for every node of every single-color tree
// (leaves count 1); counts[i][u] is the number of color-i leaves in the
// subtree of T rooted at phi_i(u).
struct SubtreeCountTable {
  std::vector<std::vector<std::int32_t>> counts;
};

SubtreeCountTable count_colors(const SingleColorForest& forest);

// Debug dump for fixture diffing: per tree, node lines in the tree file
// format extended with a phi= column.
void serialize_forest(const SingleColorForest& forest, std::ostream& out);

}  // namespace submode
