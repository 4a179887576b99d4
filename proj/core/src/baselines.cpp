#include "submode/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "submode/forest.hpp"
#include "submode/lca.hpp"
#include "submode/stacktree.hpp"

namespace submode {

namespace {

void check_cells(std::int64_t n, std::int64_t delta, std::int64_t budget,
                 const char* what) {
  if (delta > 0 && n > budget / delta) {
    throw ResourceLimitError(std::string(what) +
                             ": N*Delta exceeds the cell budget");
  }
}

}  // namespace

ModeTable ba1_all_modes(const LeafColoredTree& t, std::int64_t cell_budget) {
  const std::int64_t n = t.size();
  const ColorId delta = t.num_colors();
  check_cells(n, delta, cell_budget, "ba1");

  ModeTable out;
  out.c_max.assign(n, kNoColor);
  out.f_max.assign(n, 0);

  // Histograms live only along the current DFS path; a finished child
  // either moves its histogram to an empty parent or adds into it.
  std::vector<std::vector<std::int32_t>> pool;
  std::vector<std::int32_t> freelist;
  std::vector<std::int32_t> acc(n, -1);
  auto alloc = [&]() -> std::int32_t {
    if (!freelist.empty()) {
      const std::int32_t id = freelist.back();
      freelist.pop_back();
      return id;
    }
    pool.emplace_back(delta, 0);
    return static_cast<std::int32_t>(pool.size() - 1);
  };
  auto release = [&](std::int32_t id) {
    std::fill(pool[id].begin(), pool[id].end(), 0);
    freelist.push_back(id);
  };

  struct Frame {
    NodeId v;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{t.root(), 0}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    const NodeId v = fr.v;
    if (t.is_leaf(v)) {
      out.c_max[v] = t.color(v);
      out.f_max[v] = 1;
      stack.pop_back();
      if (!stack.empty()) {
        const NodeId p = stack.back().v;
        if (acc[p] < 0) acc[p] = alloc();
        ++pool[acc[p]][t.color(v)];
      }
      continue;
    }
    const auto kids = t.children(v);
    if (fr.next_child < kids.size()) {
      ++stack.back().next_child;
      stack.push_back({kids[fr.next_child], 0});
      continue;
    }
    // Subtree complete: read the mode off the histogram.
    std::vector<std::int32_t>& h = pool[acc[v]];
    ColorId bc = kNoColor;
    std::int32_t bf = 0;
    for (ColorId i = 0; i < delta; ++i) {
      if (h[i] > bf) {
        bf = h[i];
        bc = i;
      }
    }
    out.c_max[v] = bc;
    out.f_max[v] = bf;
    stack.pop_back();
    if (stack.empty()) {
      release(acc[v]);
    } else {
      const NodeId p = stack.back().v;
      if (acc[p] < 0) {
        acc[p] = acc[v];  // transfer, no copy
      } else {
        std::vector<std::int32_t>& hp = pool[acc[p]];
        for (ColorId i = 0; i < delta; ++i) hp[i] += h[i];
        release(acc[v]);
      }
    }
    acc[v] = -1;
  }
  return out;
}

RangeModeIndex::RangeModeIndex(std::vector<ColorId> data, std::int32_t num_blocks)
    : data_(std::move(data)), n_(static_cast<std::int32_t>(data_.size())) {
  if (n_ == 0) throw std::invalid_argument("range-mode array is empty");
  if (num_blocks < 1 || num_blocks > n_) {
    throw std::invalid_argument("block count must be in [1, N]");
  }
  block_ = (n_ + num_blocks - 1) / num_blocks;
  s_ = (n_ + block_ - 1) / block_;

  delta_ = 0;
  for (ColorId c : data_) {
    if (c < 0) throw std::invalid_argument("negative color in range-mode array");
    delta_ = std::max(delta_, c + 1);
  }

  occ_off_.assign(delta_ + 1, 0);
  for (ColorId c : data_) ++occ_off_[c + 1];
  std::partial_sum(occ_off_.begin(), occ_off_.end(), occ_off_.begin());
  occ_.resize(n_);
  rank_.resize(n_);
  {
    std::vector<std::int64_t> cursor(occ_off_.begin(), occ_off_.end() - 1);
    for (std::int32_t pos = 0; pos < n_; ++pos) {
      const ColorId c = data_[pos];
      rank_[pos] = static_cast<std::int32_t>(cursor[c] - occ_off_[c]);
      occ_[cursor[c]++] = pos;
    }
  }

  // Block-span modes by rightward scans: row p covers spans [p, q].
  span_color_.assign(static_cast<std::int64_t>(s_) * s_, kNoColor);
  span_freq_.assign(static_cast<std::int64_t>(s_) * s_, 0);
  std::vector<std::int32_t> cnt(delta_, 0);
  for (std::int32_t bp = 0; bp < s_; ++bp) {
    std::fill(cnt.begin(), cnt.end(), 0);
    ColorId bc = kNoColor;
    std::int32_t bf = 0;
    for (std::int32_t bq = bp; bq < s_; ++bq) {
      const std::int32_t lo = bq * block_;
      const std::int32_t hi = std::min(n_, lo + block_);
      for (std::int32_t pos = lo; pos < hi; ++pos) {
        const ColorId c = data_[pos];
        const std::int32_t f = ++cnt[c];
        if (f > bf || (f == bf && c < bc)) {
          bf = f;
          bc = c;
        }
      }
      span_color_[static_cast<std::int64_t>(bp) * s_ + bq] = bc;
      span_freq_[static_cast<std::int64_t>(bp) * s_ + bq] = bf;
    }
  }
}

std::pair<ColorId, std::int32_t> RangeModeIndex::query(std::int32_t i,
                                                       std::int32_t j) const {
  if (i < 0 || j >= n_ || i > j) throw std::invalid_argument("bad query range");
  const std::int32_t bi = i / block_;
  const std::int32_t bj = j / block_;
  ColorId bc = kNoColor;
  std::int32_t bf = 0;
  if (bj - bi >= 2) {
    const std::int64_t idx = static_cast<std::int64_t>(bi + 1) * s_ + (bj - 1);
    bc = span_color_[idx];
    bf = span_freq_[idx];
  }

  // Prefix elements: only a color's first occurrence in the range can
  // start a winning count; extend from the current best so each element
  // costs O(1) plus any strict improvement.
  const std::int32_t prefix_end = std::min(j, (bi + 1) * block_ - 1);
  for (std::int32_t pos = i; pos <= prefix_end; ++pos) {
    const ColorId c = data_[pos];
    const std::int32_t r = rank_[pos];
    const std::int64_t off = occ_off_[c];
    const std::int64_t len = occ_off_[c + 1] - off;
    if (r > 0 && occ_[off + r - 1] >= i) continue;
    std::int32_t f = 1;
    if (bf >= 1) {
      if (r + bf >= len || occ_[off + r + bf] > j) continue;
      f = bf + 1;
    }
    while (r + f < len && occ_[off + r + f] <= j) ++f;
    if (f > bf || (f == bf && c < bc)) {
      bf = f;
      bc = c;
    }
  }
  if (bj > bi) {
    const std::int32_t suffix_start = bj * block_;
    for (std::int32_t pos = j; pos >= suffix_start; --pos) {
      const ColorId c = data_[pos];
      const std::int32_t r = rank_[pos];
      const std::int64_t off = occ_off_[c];
      const std::int64_t len = occ_off_[c + 1] - off;
      if (r + 1 < len && occ_[off + r + 1] <= j) continue;
      std::int32_t f = 1;
      if (bf >= 1) {
        if (r - bf < 0 || occ_[off + r - bf] < i) continue;
        f = bf + 1;
      }
      while (r - f >= 0 && occ_[off + r - f] >= i) ++f;
      if (f > bf || (f == bf && c < bc)) {
        bf = f;
        bc = c;
      }
    }
  }
  return {bc, bf};
}

ModeTable ba2_all_modes(const LeafColoredTree& t, std::int64_t cell_budget) {
  check_cells(t.size(), t.num_colors(), cell_budget, "ba2");
  const LeafOrder order = leaf_order(t);
  const std::vector<LeafInterval> iv = subtree_leaf_intervals(t, order);
  std::vector<ColorId> a(order.leaves.size());
  for (std::size_t r = 0; r < order.leaves.size(); ++r) a[r] = t.color(order.leaves[r]);
  const std::int32_t s = static_cast<std::int32_t>(
      std::max<double>(1.0, std::ceil(std::sqrt(static_cast<double>(a.size())))));
  const RangeModeIndex idx(std::move(a), s);

  ModeTable out;
  out.c_max.resize(t.size());
  out.f_max.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const auto [c, f] = idx.query(iv[v].lo, iv[v].hi);
    out.c_max[v] = c;
    out.f_max[v] = f;
  }
  return out;
}

namespace {

// A tournament group: the induced tree over some set of colors, kept as
// per-node (phi target, best frequency/color over the group's colors).
struct Group {
  std::vector<NodeId> leaf_tc;     // tc leaf ids, rank order
  std::vector<std::int32_t> leaf_rank;
  std::vector<NodeId> phi;         // all nodes, leaves first
  std::vector<std::int32_t> ann_f;
  std::vector<ColorId> ann_c;

  bool empty() const { return leaf_tc.empty(); }
};

struct MergeScratch {
  std::vector<std::int32_t> epoch;
  std::vector<std::int32_t> f;
  std::vector<ColorId> c;
  std::int32_t cur = 0;
};

Group merge_groups(const LeafColoredTree& tc, const LcaIndex& lca, Group a,
                   Group b, MergeScratch& scratch) {
  if (a.empty()) return b;
  if (b.empty()) return a;

  ++scratch.cur;
  const std::int32_t epoch = scratch.cur;
  auto stamp = [&](const Group& g) {
    for (std::size_t u = g.leaf_tc.size(); u < g.phi.size(); ++u) {
      const NodeId x = g.phi[u];
      if (scratch.epoch[x] != epoch) {
        scratch.epoch[x] = epoch;
        scratch.f[x] = g.ann_f[u];
        scratch.c[x] = g.ann_c[u];
      } else if (g.ann_f[u] > scratch.f[x] ||
                 (g.ann_f[u] == scratch.f[x] && g.ann_c[u] < scratch.c[x])) {
        scratch.f[x] = g.ann_f[u];
        scratch.c[x] = g.ann_c[u];
      }
    }
  };
  stamp(a);
  stamp(b);

  Group m;
  const std::size_t total = a.leaf_tc.size() + b.leaf_tc.size();
  m.leaf_tc.reserve(total);
  m.leaf_rank.reserve(total);
  std::size_t ia = 0, ib = 0;
  while (ia < a.leaf_tc.size() || ib < b.leaf_tc.size()) {
    const bool take_a = ib == b.leaf_tc.size() ||
                        (ia < a.leaf_tc.size() && a.leaf_rank[ia] < b.leaf_rank[ib]);
    if (take_a) {
      m.leaf_tc.push_back(a.leaf_tc[ia]);
      m.leaf_rank.push_back(a.leaf_rank[ia]);
      ++ia;
    } else {
      m.leaf_tc.push_back(b.leaf_tc[ib]);
      m.leaf_rank.push_back(b.leaf_rank[ib]);
      ++ib;
    }
  }

  const std::int32_t ml = static_cast<std::int32_t>(m.leaf_tc.size());
  std::vector<std::int32_t> leaf_depth(ml);
  std::vector<std::int32_t> sep_depth(ml, 0);
  std::vector<NodeId> sep_node(ml, kNoNode);
  for (std::int32_t jj = 0; jj < ml; ++jj) {
    leaf_depth[jj] = lca.depth(m.leaf_tc[jj]);
    if (jj > 0) {
      sep_node[jj] = lca.lca(m.leaf_tc[jj - 1], m.leaf_tc[jj]);
      sep_depth[jj] = lca.depth(sep_node[jj]);
    }
  }
  StackTree st = build_stack_tree(leaf_depth, sep_depth);

  m.phi.resize(st.size());
  m.ann_f.assign(st.size(), 0);
  m.ann_c.assign(st.size(), kNoColor);
  for (std::int32_t jj = 0; jj < ml; ++jj) {
    m.phi[jj] = m.leaf_tc[jj];
    m.ann_f[jj] = 1;
    m.ann_c[jj] = tc.color(m.leaf_tc[jj]);
  }
  for (std::size_t kk = 0; kk < st.origin.size(); ++kk) {
    const NodeId u = static_cast<NodeId>(ml + kk);
    const NodeId x = sep_node[st.origin[kk]];
    m.phi[u] = x;
    if (scratch.epoch[x] == epoch) {
      m.ann_f[u] = scratch.f[x];
      m.ann_c[u] = scratch.c[x];
    }
  }

  // Fold children into parents (Kahn order): a child's best pair stays
  // valid at every ancestor within the merged tree.
  std::vector<std::int32_t> pending(st.size(), 0);
  for (NodeId u = 0; u < st.size(); ++u) {
    if (st.parent[u] != kNoNode) ++pending[st.parent[u]];
  }
  std::vector<NodeId> ready;
  for (NodeId u = 0; u < ml; ++u) ready.push_back(u);
  while (!ready.empty()) {
    const NodeId u = ready.back();
    ready.pop_back();
    const NodeId pp = st.parent[u];
    if (pp == kNoNode) continue;
    if (m.ann_f[u] > m.ann_f[pp] ||
        (m.ann_f[u] == m.ann_f[pp] && m.ann_c[u] < m.ann_c[pp])) {
      m.ann_f[pp] = m.ann_f[u];
      m.ann_c[pp] = m.ann_c[u];
    }
    if (--pending[pp] == 0) ready.push_back(pp);
  }
  return m;
}

}  // namespace

ModeTable ba3_all_modes(const LeafColoredTree& t) {
  auto [tc, cmap] = contract_unary_paths(t);
  const LcaIndex lca(tc);
  const LeafOrder order = leaf_order(tc);
  const SingleColorForest forest = split_forest(tc, lca, order);
  const SubtreeCountTable counts = count_colors(forest);

  std::vector<Group> groups;
  groups.reserve(tc.num_colors());
  for (ColorId i = 0; i < tc.num_colors(); ++i) {
    const SingleColorTree& tree = forest.trees[i];
    Group g;
    g.leaf_tc.assign(tree.phi.begin(), tree.phi.begin() + tree.num_leaves);
    g.leaf_rank.resize(tree.num_leaves);
    for (std::int32_t j = 0; j < tree.num_leaves; ++j) {
      g.leaf_rank[j] = order.rank[g.leaf_tc[j]];
    }
    g.phi = tree.phi;
    g.ann_f = counts.counts[i];
    g.ann_c.assign(tree.size(), i);
    groups.push_back(std::move(g));
  }

  MergeScratch scratch;
  scratch.epoch.assign(tc.size(), 0);
  scratch.f.assign(tc.size(), 0);
  scratch.c.assign(tc.size(), kNoColor);
  while (groups.size() > 1) {
    std::vector<Group> next;
    next.reserve((groups.size() + 1) / 2);
    for (std::size_t g = 0; g + 1 < groups.size(); g += 2) {
      next.push_back(merge_groups(tc, lca, std::move(groups[g]),
                                  std::move(groups[g + 1]), scratch));
    }
    if (groups.size() % 2 == 1) next.push_back(std::move(groups.back()));
    groups = std::move(next);
  }

  std::vector<ColorId> c(tc.size(), kNoColor);
  std::vector<std::int32_t> f(tc.size(), 0);
  const Group& top = groups.front();
  for (std::size_t u = 0; u < top.phi.size(); ++u) {
    c[top.phi[u]] = top.ann_c[u];
    f[top.phi[u]] = top.ann_f[u];
  }
  for (NodeId v = 0; v < tc.size(); ++v) {
    if (c[v] == kNoColor) throw std::logic_error("tournament left a node unannotated");
  }

  ModeTable out;
  out.c_max.resize(t.size());
  out.f_max.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const NodeId r = cmap.representative[v];
    out.c_max[v] = c[r];
    out.f_max[v] = f[r];
  }
  return out;
}

HistogramTable brute_all_modes(const LeafColoredTree& t, std::int64_t cell_budget) {
  const std::int64_t n = t.size();
  const ColorId delta = t.num_colors();
  check_cells(n, delta, cell_budget, "brute");

  HistogramTable h;
  h.delta = delta;
  h.counts.assign(n * static_cast<std::int64_t>(delta), 0);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    std::int64_t* row = h.counts.data() + static_cast<std::int64_t>(v) * delta;
    stack.push_back(v);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      if (t.is_leaf(u)) {
        ++row[t.color(u)];
      } else {
        for (NodeId ch : t.children(u)) stack.push_back(ch);
      }
    }
  }
  return h;
}

std::pair<ColorId, std::int64_t> histogram_mode(const HistogramTable& h, NodeId v) {
  const auto row = h.row(v);
  ColorId bc = kNoColor;
  std::int64_t bf = -1;
  for (ColorId i = 0; i < h.delta; ++i) {
    if (row[i] > bf) {
      bf = row[i];
      bc = i;
    }
  }
  return {bc, bf};
}

std::pair<ColorId, std::int64_t> histogram_anti_mode(const HistogramTable& h, NodeId v) {
  const auto row = h.row(v);
  ColorId bc = kNoColor;
  std::int64_t bf = std::numeric_limits<std::int64_t>::max();
  for (ColorId i = 0; i < h.delta; ++i) {
    if (row[i] < bf) {
      bf = row[i];
      bc = i;
    }
  }
  return {bc, bf};
}

}  // namespace submode
