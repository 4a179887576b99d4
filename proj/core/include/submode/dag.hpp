#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submode/common.hpp"

namespace submode {

// DAG whose sinks carry colors; validated acyclic on construction.
class SinkColoredDag {
 public:
  SinkColoredDag() = default;

  static SinkColoredDag from_edges(NodeId num_nodes,
                                   std::span<const std::pair<NodeId, NodeId>> edges,
                                   std::vector<ColorId> color, ColorId delta = -1);

  NodeId size() const { return static_cast<NodeId>(color_.size()); }
  ColorId num_colors() const { return delta_; }
  ColorId color(NodeId u) const { return color_[u]; }
  bool is_sink(NodeId u) const { return adj_off_[u] == adj_off_[u + 1]; }
  std::span<const NodeId> successors(NodeId u) const {
    return {adj_.data() + adj_off_[u],
            static_cast<std::size_t>(adj_off_[u + 1] - adj_off_[u])};
  }

 private:
  std::vector<std::int64_t> adj_off_;
  std::vector<NodeId> adj_;
  std::vector<ColorId> color_;
  ColorId delta_ = 0;
};

// Most frequent color among the distinct sinks reachable from u (u
// itself included when it is a sink); each sink counts once however
// many paths reach it.  Ties resolve to the smallest color id.
std::pair<ColorId, std::int64_t> dm_query(const SinkColoredDag& dag, NodeId u);

struct BoolMatrix {
  std::int32_t n = 0;
  std::vector<std::uint8_t> cells;  // row-major

  BoolMatrix() = default;
  explicit BoolMatrix(std::int32_t size) : n(size), cells(static_cast<std::size_t>(size) * size, 0) {}
  std::uint8_t at(std::int32_t i, std::int32_t j) const {
    return cells[static_cast<std::size_t>(i) * n + j];
  }
  std::uint8_t& at(std::int32_t i, std::int32_t j) {
    return cells[static_cast<std::size_t>(i) * n + j];
  }
  bool operator==(const BoolMatrix&) const = default;
};

// Matrix file: n, then n rows of A, then n rows of B; rows either
// space-separated 0/1 tokens or contiguous 01 strings.
std::pair<BoolMatrix, BoolMatrix> parse_bmm_input(std::istream& in);
std::pair<BoolMatrix, BoolMatrix> parse_bmm_file(const std::string& path);

// The layered reduction DAG: y(j,i) -> r(a_i) and r(b_j); r(a_i) ->
// A-side sink of color k iff A[i][k]; r(b_j) -> B-side sink of color k
// iff B[k][j].  Nodes that would end up as uncolored sinks (empty rows
// or columns) are not created; their query answers are 0 by fiat.
struct BmmDag {
  SinkColoredDag dag;
  std::int32_t n = 0;
  std::vector<NodeId> y_node;   // (j, i) -> node, kNoNode when skipped
  std::vector<NodeId> ra_node;  // i -> r(a_i)
  std::vector<NodeId> rb_node;  // j -> r(b_j)

  NodeId y(std::int32_t j, std::int32_t i) const {
    return y_node[static_cast<std::size_t>(j) * n + i];
  }
};

BmmDag build_bmm_dag(const BoolMatrix& a, const BoolMatrix& b);

// Boolean product through descendant-mode queries: (AB)[i][j] = 1 iff
// the mode frequency at y(j,i) is 2 and the candidate color verifies.
BoolMatrix bmm_via_dm(const BoolMatrix& a, const BoolMatrix& b);

// Debug dump: "nodes N", one "edge u v" per edge, one "sink u c" per sink.
void write_dag_edges(std::ostream& out, const SinkColoredDag& dag);

}  // namespace submode
