#include "submode/forest.hpp"

#include <numeric>
#include <ostream>

namespace submode {

LeafList build_leaf_lists(const LeafColoredTree& t, const LeafOrder& order) {
  LeafList ll;
  ll.off.assign(t.num_colors() + 1, 0);
  for (NodeId leaf : order.leaves) ++ll.off[t.color(leaf) + 1];
  std::partial_sum(ll.off.begin(), ll.off.end(), ll.off.begin());
  ll.leaves.resize(order.leaves.size());
  std::vector<std::int64_t> cursor(ll.off.begin(), ll.off.end() - 1);
  for (NodeId leaf : order.leaves) ll.leaves[cursor[t.color(leaf)]++] = leaf;
  return ll;
}

SingleColorTree build_single_color_tree(const LcaIndex& lca,
                                        std::span<const NodeId> color_leaves) {
  const std::int32_t m = static_cast<std::int32_t>(color_leaves.size());
  std::vector<std::int32_t> leaf_depth(m);
  std::vector<std::int32_t> sep_depth(m, 0);
  std::vector<NodeId> sep_node(m, kNoNode);
  for (std::int32_t j = 0; j < m; ++j) {
    leaf_depth[j] = lca.depth(color_leaves[j]);
    if (j > 0) {
      sep_node[j] = lca.lca(color_leaves[j - 1], color_leaves[j]);
      sep_depth[j] = lca.depth(sep_node[j]);
    }
  }
  StackTree st = build_stack_tree(leaf_depth, sep_depth);

  SingleColorTree out;
  out.parent = std::move(st.parent);
  out.root = st.root;
  out.num_leaves = m;
  out.phi.resize(out.parent.size());
  for (std::int32_t j = 0; j < m; ++j) out.phi[j] = color_leaves[j];
  for (std::size_t k = 0; k < st.origin.size(); ++k) {
    out.phi[m + k] = sep_node[st.origin[k]];
  }
  return out;
}

SingleColorForest split_forest(const LeafColoredTree& t, const LcaIndex& lca,
                               const LeafOrder& order) {
  SingleColorForest f;
  const LeafList ll = build_leaf_lists(t, order);
  f.trees.reserve(t.num_colors());
  for (ColorId i = 0; i < t.num_colors(); ++i) {
    f.trees.push_back(build_single_color_tree(lca, ll.of(i)));
  }

  f.rev_off.assign(t.size() + 1, 0);
  for (const SingleColorTree& tree : f.trees) {
    for (NodeId u = 0; u < tree.size(); ++u) ++f.rev_off[tree.phi[u] + 1];
  }
  std::partial_sum(f.rev_off.begin(), f.rev_off.end(), f.rev_off.begin());
  f.rev.resize(f.rev_off.back());
  std::vector<std::int64_t> cursor(f.rev_off.begin(), f.rev_off.end() - 1);
  for (ColorId i = 0; i < t.num_colors(); ++i) {
    const SingleColorTree& tree = f.trees[i];
    for (NodeId u = 0; u < tree.size(); ++u) {
      f.rev[cursor[tree.phi[u]]++] = {i, u};
    }
  }
  return f;
}

SubtreeCountTable count_colors(const SingleColorForest& forest) {
  SubtreeCountTable table;
  table.counts.reserve(forest.trees.size());
  for (const SingleColorTree& tree : forest.trees) {
    std::vector<std::int32_t> cnt(tree.size(), 0);
    // Kahn-style fold: release a node into its parent once all of its
    // children have been folded.
    std::vector<std::int32_t> pending(tree.size(), 0);
    for (NodeId u = 0; u < tree.size(); ++u) {
      if (tree.parent[u] != kNoNode) ++pending[tree.parent[u]];
    }
    std::vector<NodeId> ready;
    ready.reserve(tree.num_leaves);
    for (NodeId u = 0; u < tree.num_leaves; ++u) {
      cnt[u] = 1;
      ready.push_back(u);
    }
    while (!ready.empty()) {
      const NodeId u = ready.back();
      ready.pop_back();
      const NodeId p = tree.parent[u];
      if (p == kNoNode) continue;
      cnt[p] += cnt[u];
      if (--pending[p] == 0) ready.push_back(p);
    }
    table.counts.push_back(std::move(cnt));
  }
  return table;
}

void serialize_forest(const SingleColorForest& forest, std::ostream& out) {
  for (std::size_t i = 0; i < forest.trees.size(); ++i) {
    const SingleColorTree& tree = forest.trees[i];
    out << "# tree color=" << i << " size=" << tree.size()
        << " root=" << tree.root << "\n";
    for (NodeId u = 0; u < tree.size(); ++u) {
      out << u << ' ' << tree.parent[u];
      if (tree.is_leaf(u)) out << ' ' << i;
      out << " phi=" << tree.phi[u] << "\n";
    }
  }
}

}  // namespace submode
