#include "submode/dag.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace submode {

SinkColoredDag SinkColoredDag::from_edges(NodeId num_nodes,
                                          std::span<const std::pair<NodeId, NodeId>> edges,
                                          std::vector<ColorId> color, ColorId delta) {
  if (num_nodes < 0) throw std::invalid_argument("negative node count");
  if (static_cast<NodeId>(color.size()) != num_nodes) {
    throw std::invalid_argument("color array size mismatch");
  }
  SinkColoredDag d;
  d.color_ = std::move(color);
  d.adj_off_.assign(num_nodes + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    ++d.adj_off_[u + 1];
  }
  for (NodeId u = 0; u < num_nodes; ++u) d.adj_off_[u + 1] += d.adj_off_[u];
  d.adj_.resize(edges.size());
  {
    std::vector<std::int64_t> cursor(d.adj_off_.begin(), d.adj_off_.end() - 1);
    for (const auto& [u, v] : edges) d.adj_[cursor[u]++] = v;
  }

  // Acyclicity by topological sort over in-degrees.
  std::vector<std::int64_t> indeg(num_nodes, 0);
  for (NodeId v : d.adj_) ++indeg[v];
  std::vector<NodeId> ready;
  for (NodeId u = 0; u < num_nodes; ++u) {
    if (indeg[u] == 0) ready.push_back(u);
  }
  NodeId seen = 0;
  while (!ready.empty()) {
    const NodeId u = ready.back();
    ready.pop_back();
    ++seen;
    for (NodeId v : d.successors(u)) {
      if (--indeg[v] == 0) ready.push_back(v);
    }
  }
  if (seen != num_nodes) throw std::invalid_argument("graph has a cycle");

  ColorId max_color = -1;
  for (NodeId u = 0; u < num_nodes; ++u) {
    if (d.is_sink(u)) {
      if (d.color_[u] < 0) throw std::invalid_argument("uncolored sink");
      max_color = std::max(max_color, d.color_[u]);
    } else if (d.color_[u] != kNoColor) {
      throw std::invalid_argument("colored non-sink");
    }
  }
  d.delta_ = delta < 0 ? max_color + 1 : delta;
  if (max_color >= d.delta_) {
    throw std::invalid_argument("sink color exceeds declared color count");
  }
  return d;
}

std::pair<ColorId, std::int64_t> dm_query(const SinkColoredDag& dag, NodeId u) {
  if (u < 0 || u >= dag.size()) throw std::invalid_argument("bad query node");
  std::vector<std::int64_t> hist(dag.num_colors(), 0);
  std::vector<bool> visited(dag.size(), false);
  std::vector<NodeId> stack{u};
  visited[u] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (dag.is_sink(v)) {
      ++hist[dag.color(v)];
      continue;
    }
    for (NodeId w : dag.successors(v)) {
      if (!visited[w]) {
        visited[w] = true;
        stack.push_back(w);
      }
    }
  }
  ColorId bc = kNoColor;
  std::int64_t bf = 0;
  for (ColorId c = 0; c < dag.num_colors(); ++c) {
    if (hist[c] > bf) {
      bf = hist[c];
      bc = c;
    }
  }
  return {bc, bf};
}

std::pair<BoolMatrix, BoolMatrix> parse_bmm_input(std::istream& in) {
  std::int64_t n = 0;
  if (!(in >> n) || n < 1) throw ParseError("matrix input must start with n >= 1");
  if (n > 4096) throw ParseError("matrix too large");
  BoolMatrix a(static_cast<std::int32_t>(n));
  BoolMatrix b(static_cast<std::int32_t>(n));
  const std::int64_t need = 2 * n * n;
  std::int64_t got = 0;
  std::string tok;
  while (got < need && in >> tok) {
    for (char ch : tok) {
      if (ch != '0' && ch != '1') {
        throw ParseError("matrix entries must be 0 or 1, got: " + tok);
      }
      if (got == need) throw ParseError("too many matrix entries");
      const std::int64_t cell = got < n * n ? got : got - n * n;
      auto& m = got < n * n ? a : b;
      m.cells[cell] = ch == '1' ? 1 : 0;
      ++got;
    }
  }
  if (got < need) throw ParseError("matrix input ended early");
  if (in >> tok) throw ParseError("trailing matrix input: " + tok);
  return {std::move(a), std::move(b)};
}

std::pair<BoolMatrix, BoolMatrix> parse_bmm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  return parse_bmm_input(in);
}

BmmDag build_bmm_dag(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("matrix sizes differ");
  const std::int32_t n = a.n;
  BmmDag out;
  out.n = n;
  out.y_node.assign(static_cast<std::size_t>(n) * n, kNoNode);
  out.ra_node.assign(n, kNoNode);
  out.rb_node.assign(n, kNoNode);

  std::vector<ColorId> color;
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto add_node = [&](ColorId c) {
    color.push_back(c);
    return static_cast<NodeId>(color.size() - 1);
  };

  // Two sink banks: color k twice, once per matrix side, so a shared
  // candidate shows up with frequency 2.
  std::vector<NodeId> sink_a(n), sink_b(n);
  for (std::int32_t k = 0; k < n; ++k) sink_a[k] = add_node(k);
  for (std::int32_t k = 0; k < n; ++k) sink_b[k] = add_node(k);

  for (std::int32_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::int32_t k = 0; k < n; ++k) any = any || a.at(i, k);
    if (!any) continue;  // would be an uncolored sink
    out.ra_node[i] = add_node(kNoColor);
    for (std::int32_t k = 0; k < n; ++k) {
      if (a.at(i, k)) edges.emplace_back(out.ra_node[i], sink_a[k]);
    }
  }
  for (std::int32_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::int32_t k = 0; k < n; ++k) any = any || b.at(k, j);
    if (!any) continue;
    out.rb_node[j] = add_node(kNoColor);
    for (std::int32_t k = 0; k < n; ++k) {
      if (b.at(k, j)) edges.emplace_back(out.rb_node[j], sink_b[k]);
    }
  }
  for (std::int32_t j = 0; j < n; ++j) {
    for (std::int32_t i = 0; i < n; ++i) {
      if (out.ra_node[i] == kNoNode && out.rb_node[j] == kNoNode) continue;
      const NodeId y = add_node(kNoColor);
      out.y_node[static_cast<std::size_t>(j) * n + i] = y;
      if (out.ra_node[i] != kNoNode) edges.emplace_back(y, out.ra_node[i]);
      if (out.rb_node[j] != kNoNode) edges.emplace_back(y, out.rb_node[j]);
    }
  }
  const NodeId num_nodes = static_cast<NodeId>(color.size());
  out.dag = SinkColoredDag::from_edges(num_nodes, edges, std::move(color), n);
  return out;
}

BoolMatrix bmm_via_dm(const BoolMatrix& a, const BoolMatrix& b) {
  const BmmDag d = build_bmm_dag(a, b);
  const std::int32_t n = d.n;
  BoolMatrix c(n);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      const NodeId y = d.y(j, i);
      if (y == kNoNode) continue;
      const auto [k, f] = dm_query(d.dag, y);
      if (f == 2 && a.at(i, k) && b.at(k, j)) c.at(i, j) = 1;
    }
  }
  return c;
}

void write_dag_edges(std::ostream& out, const SinkColoredDag& dag) {
  out << "nodes " << dag.size() << "\n";
  for (NodeId u = 0; u < dag.size(); ++u) {
    for (NodeId v : dag.successors(u)) out << "edge " << u << " " << v << "\n";
  }
  for (NodeId u = 0; u < dag.size(); ++u) {
    if (dag.is_sink(u)) out << "sink " << u << " " << dag.color(u) << "\n";
  }
}

}  // namespace submode
