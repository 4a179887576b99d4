#include "submode/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace submode {

namespace {

void fail(const std::string& msg) { throw ParseError(msg); }

}  // namespace

LeafColoredTree LeafColoredTree::from_structure(std::vector<NodeId> parent,
                                                std::vector<std::int64_t> child_off,
                                                std::vector<NodeId> child_buf,
                                                std::vector<ColorId> color,
                                                ColorId delta) {
  const std::int64_t n = static_cast<std::int64_t>(parent.size());
  if (n == 0) fail("tree is empty");
  if (static_cast<std::int64_t>(child_off.size()) != n + 1 ||
      static_cast<std::int64_t>(color.size()) != n ||
      child_off.front() != 0 ||
      child_off.back() != static_cast<std::int64_t>(child_buf.size())) {
    fail("inconsistent tree arrays");
  }

  LeafColoredTree t;
  t.parent_ = std::move(parent);
  t.child_off_ = std::move(child_off);
  t.child_buf_ = std::move(child_buf);
  t.color_ = std::move(color);

  t.root_ = kNoNode;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId p = t.parent_[v];
    if (p == kNoNode) {
      if (t.root_ != kNoNode) fail("multiple roots");
      t.root_ = v;
    } else if (p < 0 || p >= n) {
      fail("parent id out of range for node " + std::to_string(v));
    }
  }
  if (t.root_ == kNoNode) fail("cycle detected: no root node");

  // Reachability from the root via child lists doubles as the cycle
  // check: every node must be visited exactly once.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<NodeId> stack{t.root_};
  seen[t.root_] = 1;
  std::int64_t visited = 0;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    ++visited;
    for (NodeId c : t.children(v)) {
      if (c < 0 || c >= n) fail("child id out of range");
      if (t.parent_[c] != v) fail("child list disagrees with parent array");
      if (seen[c]) fail("cycle detected: node visited twice");
      seen[c] = 1;
      stack.push_back(c);
    }
  }
  if (visited != n) fail("cycle detected: unreachable nodes");

  ColorId max_color = -1;
  t.leaf_count_ = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (t.is_leaf(v)) {
      ++t.leaf_count_;
      if (t.color_[v] < 0) fail("uncolored leaf " + std::to_string(v));
      max_color = std::max(max_color, t.color_[v]);
    } else if (t.color_[v] != kNoColor) {
      fail("colored internal node " + std::to_string(v));
    }
  }
  if (delta < 0) {
    t.num_colors_ = max_color + 1;
  } else {
    if (max_color >= delta) fail("color id exceeds declared DELTA");
    t.num_colors_ = delta;
  }
  return t;
}

LeafColoredTree LeafColoredTree::from_parents(std::vector<NodeId> parent,
                                              std::vector<ColorId> color,
                                              ColorId delta,
                                              std::span<const NodeId> appearance) {
  const std::int64_t n = static_cast<std::int64_t>(parent.size());
  if (n == 0) fail("tree is empty");
  std::vector<std::int64_t> off(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId p = parent[v];
    if (p != kNoNode) {
      if (p < 0 || p >= n) fail("parent id out of range for node " + std::to_string(v));
      ++off[p + 1];
    }
  }
  std::partial_sum(off.begin(), off.end(), off.begin());
  std::vector<NodeId> buf(off.back());
  std::vector<std::int64_t> cursor(off.begin(), off.end() - 1);
  auto place = [&](NodeId v) {
    const NodeId p = parent[v];
    if (p != kNoNode) buf[cursor[p]++] = v;
  };
  if (appearance.empty()) {
    for (NodeId v = 0; v < n; ++v) place(v);
  } else {
    if (static_cast<std::int64_t>(appearance.size()) != n) fail("appearance order must list every node");
    for (NodeId v : appearance) place(v);
  }
  return from_structure(std::move(parent), std::move(off), std::move(buf),
                        std::move(color), delta);
}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

LeafColoredTree parse_tree(std::istream& in) {
  std::string line;
  std::int64_t header_n = -1;
  std::int64_t header_delta = -1;
  struct Row {
    NodeId id;
    NodeId parent;
    ColorId color;
  };
  std::vector<Row> rows;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t')) {
      sv.remove_suffix(1);
    }
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      // Optional header: "#N=<n> DELTA=<d>".
      std::istringstream hs{std::string(sv.substr(1))};
      std::string tok;
      while (hs >> tok) {
        std::int64_t val = 0;
        if (tok.rfind("N=", 0) == 0 && parse_int(tok.substr(2), val)) header_n = val;
        if (tok.rfind("DELTA=", 0) == 0 && parse_int(tok.substr(6), val)) header_delta = val;
      }
      continue;
    }
    std::istringstream ls{std::string(sv)};
    std::string a, b, c, extra;
    ls >> a >> b;
    const bool has_color = static_cast<bool>(ls >> c);
    if (ls >> extra) fail("line " + std::to_string(line_no) + ": too many fields");
    std::int64_t id = 0, par = 0, col = 0;
    if (a.empty() || b.empty() || !parse_int(a, id) || !parse_int(b, par) ||
        (has_color && !parse_int(c, col))) {
      fail("line " + std::to_string(line_no) + ": expected 'node_id parent_id [color]'");
    }
    if (has_color && col < 0) fail("line " + std::to_string(line_no) + ": negative color");
    rows.push_back(Row{static_cast<NodeId>(id), static_cast<NodeId>(par),
                       has_color ? static_cast<ColorId>(col) : kNoColor});
  }
  if (rows.empty()) fail("tree file has no node lines");
  const std::int64_t n = static_cast<std::int64_t>(rows.size());
  if (header_n >= 0 && header_n != n) fail("header N does not match node count");

  std::vector<NodeId> parent(n, kNoNode);
  std::vector<ColorId> color(n, kNoColor);
  std::vector<NodeId> appearance;
  appearance.reserve(n);
  std::vector<std::uint8_t> present(n, 0);
  for (const Row& r : rows) {
    if (r.id < 0 || r.id >= n) fail("node ids must be dense in [0, N)");
    if (present[r.id]) fail("duplicate node id " + std::to_string(r.id));
    present[r.id] = 1;
    parent[r.id] = r.parent;
    color[r.id] = r.color;
    appearance.push_back(r.id);
  }
  // Leaf/internal color consistency is checked structurally below; here
  // only ensure the declared colors respect the header.
  return LeafColoredTree::from_parents(std::move(parent), std::move(color),
                                       header_delta >= 0 ? static_cast<ColorId>(header_delta) : -1,
                                       appearance);
}

LeafColoredTree parse_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open tree file: " + path);
  return parse_tree(in);
}

void serialize_tree(const LeafColoredTree& t, std::ostream& out) {
  out << "#N=" << t.size() << " DELTA=" << t.num_colors() << "\n";
  for (NodeId v = 0; v < t.size(); ++v) {
    out << v << ' ' << t.parent(v);
    if (t.is_leaf(v)) out << ' ' << t.color(v);
    out << "\n";
  }
}

std::vector<NodeId> bfs_order(const LeafColoredTree& t) {
  std::vector<NodeId> order;
  order.reserve(t.size());
  order.push_back(t.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (NodeId c : t.children(order[i])) order.push_back(c);
  }
  return order;
}

std::pair<LeafColoredTree, ContractionMap> contract_unary_paths(const LeafColoredTree& t) {
  const std::int64_t n = t.size();
  const std::vector<NodeId> order = bfs_order(t);

  // Bottom node of each unary path: a one-child node inherits its only
  // child's representative.  Children precede parents when scanning the
  // BFS order backwards.
  std::vector<NodeId> rep(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    rep[v] = (t.degree(v) == 1) ? rep[t.children(v).front()] : v;
  }

  std::vector<NodeId> new_id(n, kNoNode);
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (rep[v] == v) new_id[v] = next++;
  }

  std::vector<NodeId> parent(next, kNoNode);
  std::vector<ColorId> color(next, kNoColor);
  std::vector<std::int64_t> off(next + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (rep[v] != v) continue;
    color[new_id[v]] = t.color(v);
    if (t.degree(v) != 1) off[new_id[v] + 1] = t.degree(v);
  }
  std::partial_sum(off.begin(), off.end(), off.begin());
  std::vector<NodeId> buf(off.back());
  std::vector<std::int64_t> cursor(off.begin(), off.end() - 1);
  for (NodeId v = 0; v < n; ++v) {
    if (rep[v] != v || t.degree(v) == 1) continue;
    for (NodeId c : t.children(v)) {
      const NodeId cc = new_id[rep[c]];
      buf[cursor[new_id[v]]++] = cc;
      parent[cc] = new_id[v];
    }
  }

  ContractionMap map;
  map.representative.resize(n);
  for (NodeId v = 0; v < n; ++v) map.representative[v] = new_id[rep[v]];

  LeafColoredTree contracted = LeafColoredTree::from_structure(
      std::move(parent), std::move(off), std::move(buf), std::move(color),
      t.num_colors());
  return {std::move(contracted), std::move(map)};
}

LeafOrder leaf_order(const LeafColoredTree& t) {
  LeafOrder lo;
  lo.rank.assign(t.size(), -1);
  lo.leaves.reserve(t.leaf_count());
  // Iterative DFS honoring child order: push children reversed.
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (t.is_leaf(v)) {
      lo.rank[v] = static_cast<std::int32_t>(lo.leaves.size());
      lo.leaves.push_back(v);
      continue;
    }
    const auto kids = t.children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return lo;
}

std::vector<LeafInterval> subtree_leaf_intervals(const LeafColoredTree& t,
                                                 const LeafOrder& order) {
  std::vector<LeafInterval> iv(t.size(), LeafInterval{0, -1});
  const std::vector<NodeId> bfs = bfs_order(t);
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    const NodeId v = *it;
    if (t.is_leaf(v)) {
      iv[v] = {order.rank[v], order.rank[v]};
    } else {
      const auto kids = t.children(v);
      iv[v] = {iv[kids.front()].lo, iv[kids.back()].hi};
    }
  }
  return iv;
}

std::vector<std::int32_t> subtree_leaf_counts(const LeafColoredTree& t) {
  std::vector<std::int32_t> cnt(t.size(), 0);
  const std::vector<NodeId> bfs = bfs_order(t);
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    const NodeId v = *it;
    if (t.is_leaf(v)) {
      cnt[v] = 1;
    } else {
      for (NodeId c : t.children(v)) cnt[v] += cnt[c];
    }
  }
  return cnt;
}

}  // namespace submode
