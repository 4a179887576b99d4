#pragma once

#include <cstdint>
#include <vector>

#include "submode/common.hpp"

namespace submode {

// Builds the smallest tree whose leaves are a given left-to-right
// sequence, where the join of leaves j-1 and j sits at a known depth
// (depth of their lowest common ancestor, or LCP value for suffixes).
// Internal nodes are created only at those join depths and always end
// up with at least two children, so the result has < 2m nodes.
//
// Node ids: leaves are 0..m-1 in input order; internal nodes follow in
// creation order.  `depth[u]` is the leaf's own depth or the join
// depth; `origin[u - m]` records which separator index created the
// internal node u (callers map it back to a concrete LCA or LCP slot).
struct StackTree {
  std::vector<NodeId> parent;       // kNoNode at the root
  std::vector<std::int32_t> depth;
  std::vector<std::int32_t> origin;  // per internal node, in creation order
  NodeId root = kNoNode;
  std::int32_t num_leaves = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }
  bool is_leaf(NodeId u) const { return u < num_leaves; }
};

// `leaf_depth[j]` is the depth of leaf j; `sep_depth[j]` (for j >= 1)
// is the join depth of leaves j-1 and j, strictly smaller than both
// leaf depths.
inline StackTree build_stack_tree(const std::vector<std::int32_t>& leaf_depth,
                                  const std::vector<std::int32_t>& sep_depth) {
  const std::int32_t m = static_cast<std::int32_t>(leaf_depth.size());
  StackTree out;
  out.num_leaves = m;
  if (m == 0) return out;
  out.parent.assign(m, kNoNode);
  out.depth.assign(leaf_depth.begin(), leaf_depth.end());
  out.parent.reserve(2 * m);
  out.depth.reserve(2 * m);
  out.origin.reserve(m);
  if (m == 1) {
    out.root = 0;
    return out;
  }

  // The stack holds the rightmost root-to-leaf path of the tree built
  // so far, shallowest at the bottom.
  std::vector<NodeId> stack;
  stack.reserve(64);
  stack.push_back(0);
  for (std::int32_t j = 1; j < m; ++j) {
    const std::int32_t d = sep_depth[j];
    // Pop everything deeper than the join, attaching each popped node
    // to what lies beneath it; splice a new node at depth d if the
    // stack bottoms out shallower than that.
    while (true) {
      const NodeId top = stack.back();
      if (out.depth[top] <= d) break;
      stack.pop_back();
      if (!stack.empty() && out.depth[stack.back()] >= d) {
        out.parent[top] = stack.back();
      } else {
        const NodeId nu = static_cast<NodeId>(out.parent.size());
        out.parent.push_back(kNoNode);
        out.depth.push_back(d);
        out.origin.push_back(j);
        out.parent[top] = nu;
        stack.push_back(nu);
      }
    }
    stack.push_back(j);
  }
  // Flush: attach the remaining path; the bottom entry is the root.
  while (stack.size() > 1) {
    const NodeId top = stack.back();
    stack.pop_back();
    out.parent[top] = stack.back();
  }
  out.root = stack.front();
  return out;
}

}  // namespace submode
