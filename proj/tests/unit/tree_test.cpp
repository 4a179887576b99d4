#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "submode/generate.hpp"
#include "submode/tree.hpp"

using namespace submode;

TEST_CASE("worked tree builds with the expected shape") {
  const LeafColoredTree t = fixtures::worked_tree();
  CHECK(t.size() == 19);
  CHECK(t.root() == 0);
  CHECK(t.leaf_count() == 11);
  CHECK(t.num_colors() == 4);
  CHECK(t.degree(fixtures::kD) == 3);
  const auto kids = t.children(fixtures::kD);
  REQUIRE(kids.size() == 3);
  CHECK(kids[0] == 7);
  CHECK(kids[1] == 8);
  CHECK(kids[2] == fixtures::kH);
  CHECK(t.is_leaf(7));
  CHECK_FALSE(t.is_leaf(fixtures::kH));
  CHECK(t.color(7) == 0);
  CHECK(t.color(fixtures::kH) == kNoColor);
}

TEST_CASE("tree file parses to the in-code fixture") {
  const LeafColoredTree t = parse_tree_file(fixtures::data_path("fig2.tree"));
  CHECK(t.parents() == fixtures::worked_tree_parents());
  CHECK(t.colors() == fixtures::worked_tree_colors());
  CHECK(t.num_colors() == 4);
}

TEST_CASE("serialize then parse is the identity on id-ordered trees") {
  const LeafColoredTree t = fixtures::worked_tree();
  std::stringstream s;
  serialize_tree(t, s);
  const LeafColoredTree u = parse_tree(s);
  CHECK(u.parents() == t.parents());
  CHECK(u.colors() == t.colors());
  CHECK(u.num_colors() == t.num_colors());
}

TEST_CASE("parser rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::stringstream s(text);
    return parse_tree(s);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("0 -1 0\n0 -1 1\n"), ParseError);       // duplicate id
  CHECK_THROWS_AS(parse("0 1\n1 0 2\n"), ParseError);           // two-node cycle, no root
  CHECK_THROWS_AS(parse("0 -1\n1 -1 0\n"), ParseError);         // multiple roots
  CHECK_THROWS_AS(parse("0 -1\n2 0 1\n"), ParseError);          // non-dense ids
  CHECK_THROWS_AS(parse("0 -1\n1 5 0\n"), ParseError);          // parent out of range
  CHECK_THROWS_AS(parse("0 -1\n1 0\n"), ParseError);            // uncolored leaf
  CHECK_THROWS_AS(parse("0 -1 3\n1 0 0\n"), ParseError);        // colored internal
  CHECK_THROWS_AS(parse("#N=3 DELTA=1\n0 -1\n1 0 0\n"), ParseError);  // header N off
  CHECK_THROWS_AS(parse("#N=2 DELTA=1\n0 -1\n1 0 7\n"), ParseError);  // color >= DELTA
  CHECK_THROWS_AS(parse("0 -1\n1 0 0 9\n"), ParseError);        // extra field
}

TEST_CASE("from_parents validates structure") {
  CHECK_THROWS_AS(LeafColoredTree::from_parents({}, {}), ParseError);
  CHECK_THROWS_AS(LeafColoredTree::from_parents({1, 0}, {0, 0}), ParseError);
  CHECK_THROWS_AS(LeafColoredTree::from_parents({-1, 0, 1}, {-1, -1, 5}, 3), ParseError);
}

TEST_CASE("single node tree is a colored root") {
  const LeafColoredTree t = LeafColoredTree::from_parents({-1}, {0});
  CHECK(t.size() == 1);
  CHECK(t.leaf_count() == 1);
  CHECK(t.is_leaf(t.root()));
  CHECK(t.num_colors() == 1);
}

TEST_CASE("leaf order ranks match the picture labels") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LeafOrder order = leaf_order(t);
  const std::vector<NodeId> expect = {7, 8, 10, 11, 12, 13, 14, 15, 16, 17, 18};
  CHECK(order.leaves == expect);
  CHECK(order.rank[10] == 2);
  CHECK(order.rank[18] == 10);
  CHECK(order.rank[fixtures::kD] == -1);
}

TEST_CASE("subtree leaf intervals are the contiguous rank ranges") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LeafOrder order = leaf_order(t);
  const auto iv = subtree_leaf_intervals(t, order);
  CHECK(iv[fixtures::kA].lo == 0);
  CHECK(iv[fixtures::kA].hi == 10);
  CHECK(iv[fixtures::kB].lo == 0);
  CHECK(iv[fixtures::kB].hi == 5);
  CHECK(iv[fixtures::kC].lo == 6);
  CHECK(iv[fixtures::kC].hi == 10);
  CHECK(iv[fixtures::kH].lo == 2);
  CHECK(iv[fixtures::kH].hi == 3);
  CHECK(iv[10].lo == 2);
  CHECK(iv[10].hi == 2);
}

TEST_CASE("subtree leaf counts agree with interval widths") {
  const LeafColoredTree t = fixtures::worked_tree();
  const auto counts = subtree_leaf_counts(t);
  CHECK(counts[fixtures::kA] == 11);
  CHECK(counts[fixtures::kB] == 6);
  CHECK(counts[fixtures::kD] == 4);
  CHECK(counts[fixtures::kH] == 2);
  CHECK(counts[7] == 1);
}

TEST_CASE("bfs order puts every parent before its children") {
  const LeafColoredTree t = generate_random_tree(500, 6, 4, 11);
  const auto order = bfs_order(t);
  REQUIRE(static_cast<std::int64_t>(order.size()) == t.size());
  std::vector<std::int32_t> pos(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::int32_t>(i);
  for (NodeId v = 0; v < t.size(); ++v) {
    if (t.parent(v) != kNoNode) CHECK(pos[t.parent(v)] < pos[v]);
  }
}

TEST_CASE("unary contraction dissolves exactly the one-child nodes") {
  // root -> x -> y -> {leaf0, z -> leaf1}: x and y form a unary chain
  // under the root, and z is unary above leaf1.
  const LeafColoredTree t = LeafColoredTree::from_parents(
      {-1, 0, 1, 2, 2, 4}, {-1, -1, -1, 0, -1, 1});
  const auto [c, map] = contract_unary_paths(t);
  CHECK(c.size() == 3);           // the branching node, two leaves
  CHECK(c.leaf_count() == 2);
  CHECK(map.representative[0] == map.representative[2]);
  CHECK(map.representative[1] == map.representative[2]);
  CHECK(map.representative[4] == map.representative[5]);
  CHECK(c.is_leaf(map.representative[5]));
  // Colors survive the move.
  CHECK(c.color(map.representative[3]) == 0);
  CHECK(c.color(map.representative[5]) == 1);
}

TEST_CASE("contraction is the identity on trees without unary nodes") {
  const LeafColoredTree t = fixtures::worked_tree();
  const auto [c, map] = contract_unary_paths(t);
  CHECK(c.size() == t.size());
  for (NodeId v = 0; v < t.size(); ++v) CHECK(map.representative[v] == v);
}

TEST_CASE("random trees satisfy the structural invariants") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const LeafColoredTree t = generate_random_tree(200, 5, 3, seed);
    REQUIRE(t.size() == 200);
    const LeafOrder order = leaf_order(t);
    const auto iv = subtree_leaf_intervals(t, order);
    const auto counts = subtree_leaf_counts(t);
    for (NodeId v = 0; v < t.size(); ++v) {
      // Interval width equals the leaf count; children tile the parent.
      CHECK(iv[v].hi - iv[v].lo + 1 == counts[v]);
      if (!t.is_leaf(v)) {
        std::int64_t sum = 0;
        for (const NodeId c : t.children(v)) {
          CHECK(iv[c].lo >= iv[v].lo);
          CHECK(iv[c].hi <= iv[v].hi);
          sum += counts[c];
        }
        CHECK(sum == counts[v]);
      }
    }
    // Round trip through the text format.
    std::stringstream s;
    serialize_tree(t, s);
    const LeafColoredTree back = parse_tree(s);
    CHECK(back.parents() == t.parents());
    CHECK(back.colors() == t.colors());
  }
}
