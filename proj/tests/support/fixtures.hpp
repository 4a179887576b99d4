#pragma once

// Shared hand-checked fixtures.  The "worked" tree is the 19-node,
// 4-color example every module's expected values are frozen against:
//
//                      a(0)
//              b(1)            c(2)
//          d(3)    e(4)     f(5)   g(6)
//      l0 l1 h(9)  l4 l5   l6 l7  l8 l9 l10
//           l2 l3
//
// Leaves in visit order l0..l10 are node ids 7 8 10 11 12 13 14 15 16
// 17 18 with colors 0 2 1 0 3 0 1 3 0 2 3 (0=green, 1=red, 2=blue,
// 3=orange).

#include <string>
#include <vector>

#include "submode/tree.hpp"

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must point at the fixture directory"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline const std::vector<submode::NodeId>& worked_tree_parents() {
  static const std::vector<submode::NodeId> p = {-1, 0, 0, 1, 1, 2, 2, 3, 3, 3,
                                                 9,  9, 4, 4, 5, 5, 6, 6, 6};
  return p;
}

inline const std::vector<submode::ColorId>& worked_tree_colors() {
  static const std::vector<submode::ColorId> c = {-1, -1, -1, -1, -1, -1, -1, 0, 2, -1,
                                                  1,  0,  3,  0,  1,  3,  0,  2, 3};
  return c;
}

inline submode::LeafColoredTree worked_tree() {
  return submode::LeafColoredTree::from_parents(worked_tree_parents(),
                                                worked_tree_colors(), 4);
}

// Node ids by their letter in the picture above.
constexpr submode::NodeId kA = 0, kB = 1, kC = 2, kD = 3, kE = 4, kF = 5,
                          kG = 6, kH = 9;

// The two-document byte collection used by every retrieval example.
inline std::vector<std::string> worked_docs() { return {"aaaab", "aab"}; }

}  // namespace fixtures
