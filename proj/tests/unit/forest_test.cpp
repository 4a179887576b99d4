#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "submode/forest.hpp"
#include "submode/generate.hpp"
#include "submode/stacktree.hpp"

using namespace submode;

namespace {

// The count parked at the single-color-tree node mapping to `target`,
// or -1 when the color has no node there.
std::int32_t count_at(const SingleColorForest& forest, const SubtreeCountTable& table,
                      ColorId color, NodeId target) {
  const SingleColorTree& tree = forest.trees[color];
  for (NodeId u = 0; u < tree.size(); ++u) {
    if (tree.phi[u] == target) return table.counts[color][u];
  }
  return -1;
}

}  // namespace

TEST_CASE("stack builder reproduces the green tree by hand") {
  // Green leaves sit at depths 3,4,3,2 with joins at d(2), b(1), a(0).
  const StackTree st = build_stack_tree({3, 4, 3, 2}, {0, 2, 1, 0});
  CHECK(st.size() == 7);
  CHECK(st.num_leaves == 4);
  CHECK(st.root == 6);
  CHECK(st.parent == std::vector<NodeId>{4, 4, 5, 6, 5, 6, kNoNode});
  CHECK(st.depth == std::vector<std::int32_t>{3, 4, 3, 2, 2, 1, 0});
  CHECK(st.origin == std::vector<std::int32_t>{1, 2, 3});
}

TEST_CASE("stack builder merges equal join depths into one node") {
  const StackTree st = build_stack_tree({2, 2, 2}, {0, 1, 1});
  CHECK(st.size() == 4);
  CHECK(st.root == 3);
  CHECK(st.parent == std::vector<NodeId>{3, 3, 3, kNoNode});
}

TEST_CASE("stack builder handles single and empty inputs") {
  CHECK(build_stack_tree({5}, {0}).size() == 1);
  CHECK(build_stack_tree({}, {}).size() == 0);
}

TEST_CASE("leaf lists group leaves by color in rank order") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LeafOrder order = leaf_order(t);
  const LeafList lists = build_leaf_lists(t, order);
  CHECK(std::vector<NodeId>(lists.of(0).begin(), lists.of(0).end()) ==
        std::vector<NodeId>{7, 11, 13, 16});
  CHECK(std::vector<NodeId>(lists.of(1).begin(), lists.of(1).end()) ==
        std::vector<NodeId>{10, 14});
  CHECK(std::vector<NodeId>(lists.of(2).begin(), lists.of(2).end()) ==
        std::vector<NodeId>{8, 17});
  CHECK(std::vector<NodeId>(lists.of(3).begin(), lists.of(3).end()) ==
        std::vector<NodeId>{12, 15, 18});
}

TEST_CASE("the worked tree splits into the four expected color trees") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LcaIndex lca(t);
  const LeafOrder order = leaf_order(t);
  const SingleColorForest forest = split_forest(t, lca, order);
  REQUIRE(forest.trees.size() == 4);

  const SubtreeCountTable table = count_colors(forest);

  // Green: leaves l0 l3 l5 l8, internals at d, b, a with counts 2, 3, 4.
  CHECK(forest.trees[0].size() == 7);
  CHECK(count_at(forest, table, 0, fixtures::kD) == 2);
  CHECK(count_at(forest, table, 0, fixtures::kB) == 3);
  CHECK(count_at(forest, table, 0, fixtures::kA) == 4);
  CHECK(count_at(forest, table, 0, 7) == 1);

  // Red and blue: two leaves each, one internal at the root.
  CHECK(forest.trees[1].size() == 3);
  CHECK(count_at(forest, table, 1, fixtures::kA) == 2);
  CHECK(forest.trees[2].size() == 3);
  CHECK(count_at(forest, table, 2, fixtures::kA) == 2);

  // Orange: leaves l4 l7 l10, internals at c (2) and the root (3).
  CHECK(forest.trees[3].size() == 5);
  CHECK(count_at(forest, table, 3, fixtures::kC) == 2);
  CHECK(count_at(forest, table, 3, fixtures::kA) == 3);
  CHECK(count_at(forest, table, 3, fixtures::kE) == -1);

  // Total forest size comes in under twice the leaf count.
  std::int64_t total = 0;
  for (const auto& tree : forest.trees) total += tree.size();
  CHECK(total == 18);
  CHECK(total < 2 * t.leaf_count());

  // Reverse index: the root hosts one node of every color, h none.
  CHECK(forest.at(fixtures::kA).size() == 4);
  CHECK(forest.at(fixtures::kH).size() == 0);
  CHECK(forest.at(fixtures::kD).size() == 1);
  CHECK(forest.at(fixtures::kD)[0].color == 0);
}

TEST_CASE("single color class of one leaf becomes a one-node tree") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LcaIndex lca(t);
  const std::vector<NodeId> one = {10};
  const SingleColorTree tree = build_single_color_tree(lca, one);
  CHECK(tree.size() == 1);
  CHECK(tree.root == 0);
  CHECK(tree.phi[0] == 10);
  CHECK(tree.is_leaf(0));
}

TEST_CASE("color trees preserve ancestry and counts on random trees") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const LeafColoredTree t = generate_random_tree(250, 6, 4, seed);
    const LcaIndex lca(t);
    const LeafOrder order = leaf_order(t);
    const SingleColorForest forest = split_forest(t, lca, order);
    const SubtreeCountTable table = count_colors(forest);
    const auto hist = oracles::subtree_histograms(t);

    std::int64_t total = 0;
    for (ColorId i = 0; i < t.num_colors(); ++i) {
      const SingleColorTree& tree = forest.trees[i];
      total += tree.size();
      for (NodeId u = 0; u < tree.size(); ++u) {
        // No unary nodes, phi strictly deepens along edges, and the
        // parked count equals the subtree's tally of this color.
        const NodeId p = tree.parent[u];
        if (p != kNoNode) {
          CHECK(oracles::is_ancestor_of(t, tree.phi[p], tree.phi[u]));
          CHECK(tree.phi[p] != tree.phi[u]);
        }
        CHECK(table.counts[i][u] == hist[tree.phi[u]][i]);
        if (!tree.is_leaf(u)) {
          std::int32_t kids = 0;
          for (NodeId w = 0; w < tree.size(); ++w) kids += tree.parent[w] == u;
          CHECK(kids >= 2);
        }
      }
      // phi is injective within one tree.
      std::map<NodeId, int> uses;
      for (const NodeId v : tree.phi) ++uses[v];
      for (const auto& [v, n] : uses) CHECK(n == 1);
    }
    CHECK(total < 2 * t.leaf_count());

    // The reverse index is exactly the inverse of phi.
    std::int64_t rev_total = 0;
    for (NodeId v = 0; v < t.size(); ++v) {
      for (const auto& e : forest.at(v)) {
        CHECK(forest.trees[e.color].phi[e.node] == v);
        ++rev_total;
      }
    }
    CHECK(rev_total == total);
  }
}
