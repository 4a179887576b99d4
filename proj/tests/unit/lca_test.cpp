#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "submode/generate.hpp"
#include "submode/lca.hpp"

using namespace submode;

TEST_CASE("lca answers on the worked tree") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LcaIndex lca(t);
  CHECK(lca.lca(7, 11) == fixtures::kD);   // l0, l3 meet at d
  CHECK(lca.lca(7, 13) == fixtures::kB);   // l0, l5 meet at b
  CHECK(lca.lca(7, 16) == fixtures::kA);   // l0, l8 meet at the root
  CHECK(lca.lca(10, 11) == fixtures::kH);
  CHECK(lca.lca(12, 12) == 12);
  CHECK(lca.lca(7, fixtures::kD) == fixtures::kD);  // ancestor case
  CHECK(lca.lca(fixtures::kB, fixtures::kC) == fixtures::kA);
}

TEST_CASE("depths count edges from the root") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LcaIndex lca(t);
  CHECK(lca.depth(fixtures::kA) == 0);
  CHECK(lca.depth(fixtures::kD) == 2);
  CHECK(lca.depth(10) == 4);  // root, b, d, h, l2
}

TEST_CASE("level ancestors and child_toward") {
  const LeafColoredTree t = fixtures::worked_tree();
  const LevelAncestorIndex la(t);
  CHECK(la.depth(10) == 4);
  CHECK(la.ancestor_at_depth(10, 0) == fixtures::kA);
  CHECK(la.ancestor_at_depth(10, 2) == fixtures::kD);
  CHECK(la.ancestor_at_depth(10, 4) == 10);
  CHECK(la.child_toward(fixtures::kB, 10) == fixtures::kD);
  CHECK(la.child_toward(fixtures::kA, 18) == fixtures::kC);
  CHECK(la.child_toward(fixtures::kH, 11) == 11);
  CHECK_THROWS_AS(la.child_toward(fixtures::kD, fixtures::kE), std::invalid_argument);
  CHECK_THROWS_AS(la.child_toward(12, 12), std::invalid_argument);
  CHECK_THROWS_AS(la.child_toward(10, fixtures::kA), std::invalid_argument);
}

TEST_CASE("indexes agree with parent walking on random trees") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const LeafColoredTree t = generate_random_tree(300, 4, 5, seed);
    const LcaIndex lca(t);
    const LevelAncestorIndex la(t);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.size() - 1));
    for (int q = 0; q < 100; ++q) {
      const NodeId u = pick(rng), v = pick(rng);
      const NodeId w = oracles::walk_lca(t, u, v);
      CHECK(lca.lca(u, v) == w);
      CHECK(lca.depth(u) == oracles::walk_depth(t, u));
      if (w == u && u != v) {
        // v is a strict descendant: stepping down from u must land on
        // the child whose subtree holds v.
        const NodeId c = la.child_toward(u, v);
        CHECK(t.parent(c) == u);
        CHECK(oracles::is_ancestor_of(t, c, v));
      }
      const std::int32_t du = la.depth(u);
      std::uniform_int_distribution<std::int32_t> dpick(0, du);
      const std::int32_t d = dpick(rng);
      NodeId anc = u;
      for (std::int32_t i = 0; i < du - d; ++i) anc = t.parent(anc);
      CHECK(la.ancestor_at_depth(u, d) == anc);
    }
  }
}
