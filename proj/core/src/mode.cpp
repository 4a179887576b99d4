#include "submode/mode.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "submode/lca.hpp"

namespace submode {

namespace {

// Shared preprocessing: contract unary paths (dissolved nodes share
// their representative's answers), then split into single-color trees
// and count leaf descendants.
struct SplitPipeline {
  LeafColoredTree tc;
  ContractionMap cmap;
  LeafOrder order;
  SingleColorForest forest;
  SubtreeCountTable counts;
};

SplitPipeline run_split(const LeafColoredTree& t) {
  auto [tc, cmap] = contract_unary_paths(t);
  const LcaIndex lca(tc);
  LeafOrder order = leaf_order(tc);
  SingleColorForest forest = split_forest(tc, lca, order);
  SubtreeCountTable counts = count_colors(forest);
  return SplitPipeline{std::move(tc), std::move(cmap), std::move(order),
                       std::move(forest), std::move(counts)};
}

}  // namespace

ModeTable scm_all_modes(const LeafColoredTree& t) {
  SplitPipeline p = run_split(t);
  const LeafColoredTree& tc = p.tc;
  const std::int64_t n = tc.size();

  std::vector<ColorId> c(n, kNoColor);
  std::vector<std::int32_t> f(n, 0);
  const std::vector<NodeId> order = bfs_order(tc);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (tc.is_leaf(v)) {
      c[v] = tc.color(v);
      f[v] = 1;
      continue;
    }
    ColorId bc = kNoColor;
    std::int32_t bf = 0;
    auto offer = [&](std::int32_t ff, ColorId cc) {
      if (ff > bf || (ff == bf && cc < bc)) {
        bf = ff;
        bc = cc;
      }
    };
    // A child's best pair stays valid at the parent; counts parked at v
    // (colors whose leaves fork here) supply the rest.
    for (NodeId ch : tc.children(v)) offer(f[ch], c[ch]);
    for (const auto& e : p.forest.at(v)) {
      offer(p.counts.counts[e.color][e.node], e.color);
    }
    c[v] = bc;
    f[v] = bf;
  }

  ModeTable out;
  out.c_max.resize(t.size());
  out.f_max.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const NodeId r = p.cmap.representative[v];
    out.c_max[v] = c[r];
    out.f_max[v] = f[r];
  }
  return out;
}

AntiModeTable scm_anti_modes(const LeafColoredTree& t) {
  SplitPipeline p = run_split(t);
  const LeafColoredTree& tc = p.tc;
  const std::int64_t n = tc.size();
  const ColorId delta = tc.num_colors();
  const LevelAncestorIndex la(tc);

  // distinct(v) = leaves(v) - sum over parked internal forest nodes u in
  // v's subtree of (children(u) - 1): each color contributes exactly
  // (its leaf count under v) - 1 through the forks below v.
  std::vector<std::int32_t> weight(n, 0);
  for (const SingleColorTree& tree : p.forest.trees) {
    std::vector<std::int32_t> deg(tree.size(), 0);
    for (NodeId u = 0; u < tree.size(); ++u) {
      if (tree.parent[u] != kNoNode) ++deg[tree.parent[u]];
    }
    for (NodeId u = tree.num_leaves; u < tree.size(); ++u) {
      weight[tree.phi[u]] += deg[u] - 1;
    }
  }
  const std::vector<NodeId> order = bfs_order(tc);
  std::vector<std::int32_t> distinct = subtree_leaf_counts(tc);
  {
    std::vector<std::int32_t> sub(weight);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId v = *it;
      for (NodeId ch : tc.children(v)) sub[v] += sub[ch];
      distinct[v] -= sub[v];
    }
  }

  // Absent-color witnesses.  Sweeping leaves left to right while
  // answering nodes at their interval's right end reduces "find a color
  // with no occurrence in [lo, hi]" to "is the stalest color's last
  // occurrence before lo" -- a min-tournament over last positions.
  std::vector<ColorId> witness(n, kNoColor);
  if (delta >= 2) {
    const std::vector<LeafInterval> iv = subtree_leaf_intervals(tc, p.order);
    std::int64_t tsize = 1;
    while (tsize < delta) tsize <<= 1;
    std::vector<std::int32_t> pos(2 * tsize, -1);
    std::vector<ColorId> who(2 * tsize, kNoColor);
    for (ColorId i = 0; i < delta; ++i) who[tsize + i] = i;
    for (std::int64_t u = tsize - 1; u >= 1; --u) {
      // Left-biased min keeps the smallest color id on ties and makes
      // slots beyond delta (pos -1, no color) lose to real colors only
      // when a real color is also unseen -- seed them as +inf instead.
      who[u] = who[2 * u];
      pos[u] = pos[2 * u];
    }
    for (std::int64_t s = tsize + delta; s < 2 * tsize; ++s) {
      pos[s] = std::numeric_limits<std::int32_t>::max();
    }
    for (std::int64_t u = tsize - 1; u >= 1; --u) {
      if (pos[2 * u] <= pos[2 * u + 1]) {
        pos[u] = pos[2 * u];
        who[u] = who[2 * u];
      } else {
        pos[u] = pos[2 * u + 1];
        who[u] = who[2 * u + 1];
      }
    }
    auto bump = [&](ColorId i, std::int32_t at) {
      std::int64_t u = tsize + i;
      pos[u] = at;
      for (u >>= 1; u >= 1; u >>= 1) {
        if (pos[2 * u] <= pos[2 * u + 1]) {
          pos[u] = pos[2 * u];
          who[u] = who[2 * u];
        } else {
          pos[u] = pos[2 * u + 1];
          who[u] = who[2 * u + 1];
        }
      }
    };
    // Nodes bucketed by interval right end.
    std::vector<NodeId> bucket_head(p.order.leaves.size(), kNoNode);
    std::vector<NodeId> bucket_next(n, kNoNode);
    for (NodeId v = 0; v < n; ++v) {
      bucket_next[v] = bucket_head[iv[v].hi];
      bucket_head[iv[v].hi] = v;
    }
    for (std::int32_t r = 0; r < static_cast<std::int32_t>(p.order.leaves.size()); ++r) {
      bump(tc.color(p.order.leaves[r]), r);
      for (NodeId v = bucket_head[r]; v != kNoNode; v = bucket_next[v]) {
        if (pos[1] < iv[v].lo) witness[v] = who[1];
      }
    }
  }

  // Arrival slots: the best (frequency, color) pushed into each node,
  // plus a handle -- the tree node owning that color mass -- so the
  // pair can keep descending through fork-free stretches.
  std::vector<std::int32_t> slot_f(n, std::numeric_limits<std::int32_t>::max());
  std::vector<ColorId> slot_c(n, kNoColor);
  std::vector<NodeId> slot_h(n, kNoNode);
  auto arrive = [&](NodeId v, std::int32_t ff, ColorId cc, NodeId hh) {
    if (ff < slot_f[v] || (ff == slot_f[v] && cc < slot_c[v])) {
      slot_f[v] = ff;
      slot_c[v] = cc;
      slot_h[v] = hh;
    }
  };

  // Counts parked at a node drop to the child owning them.  Doing all
  // of these up front is safe: arrivals only ever min-combine.
  for (ColorId i = 0; i < delta; ++i) {
    const SingleColorTree& tree = p.forest.trees[i];
    for (NodeId w = 0; w < tree.size(); ++w) {
      if (tree.parent[w] == kNoNode) continue;
      const NodeId v = tree.phi[tree.parent[w]];
      arrive(la.child_toward(v, tree.phi[w]), p.counts.counts[i][w], i, tree.phi[w]);
    }
  }

  std::vector<std::int32_t> f(n, 0);
  std::vector<ColorId> c(n, kNoColor);
  std::vector<NodeId> handle(n, kNoNode);
  for (NodeId v : order) {
    if (distinct[v] < delta) {
      f[v] = 0;
      c[v] = witness[v];
    } else if (tc.is_leaf(v)) {
      f[v] = 1;  // only reachable when delta == 1
      c[v] = tc.color(v);
    } else if (v == tc.root()) {
      std::int32_t bf = std::numeric_limits<std::int32_t>::max();
      ColorId bc = kNoColor;
      for (ColorId i = 0; i < delta; ++i) {
        const std::int32_t total = p.forest.trees[i].num_leaves;
        if (total < bf) {
          bf = total;
          bc = i;
        }
      }
      f[v] = bf;
      c[v] = bc;
      handle[v] = p.forest.trees[bc].phi[p.forest.trees[bc].root];
    } else {
      if (slot_c[v] == kNoColor) throw std::logic_error("anti-mode push missed a node");
      f[v] = slot_f[v];
      c[v] = slot_c[v];
      handle[v] = slot_h[v];
    }

    // Continue this node's own pair downward when its color has no
    // parked count here (all of its mass sits under one child).
    if (f[v] >= 1 && !tc.is_leaf(v)) {
      bool parked = false;
      for (const auto& e : p.forest.at(v)) {
        if (e.color == c[v]) {
          parked = true;
          break;
        }
      }
      if (!parked) arrive(la.child_toward(v, handle[v]), f[v], c[v], handle[v]);
    }
  }

  AntiModeTable out;
  out.c_min.resize(t.size());
  out.f_min.resize(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    const NodeId r = p.cmap.representative[v];
    out.c_min[v] = c[r];
    out.f_min[v] = f[r];
  }
  return out;
}

TopKTable scm_top_k(const LeafColoredTree& t, std::int32_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  SplitPipeline p = run_split(t);
  const LeafColoredTree& tc = p.tc;
  const std::int64_t n = tc.size();
  const ColorId delta = tc.num_colors();
  const std::int32_t ks = static_cast<std::int32_t>(std::min<std::int64_t>(k, delta));

  TopKTable table(n, ks);
  struct Cand {
    ColorId c;
    std::int32_t f;
  };
  std::vector<Cand> cand;
  std::vector<std::int32_t> stamp(delta, -1);
  std::vector<std::int32_t> at(delta, 0);

  const std::vector<NodeId> order = bfs_order(tc);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (tc.is_leaf(v)) {
      table.mutable_length(v) = 1;
      table.mutable_colors(v)[0] = tc.color(v);
      table.mutable_freqs(v)[0] = 1;
      continue;
    }
    cand.clear();
    auto offer = [&](ColorId cc, std::int32_t ff) {
      if (stamp[cc] == v) {
        // Same color from several sources: the parked count dominates
        // any child pair, so keeping the max is exact.
        cand[at[cc]].f = std::max(cand[at[cc]].f, ff);
        return;
      }
      stamp[cc] = v;
      at[cc] = static_cast<std::int32_t>(cand.size());
      cand.push_back({cc, ff});
    };
    for (NodeId ch : tc.children(v)) {
      const auto cs = table.colors(ch);
      const auto fs = table.freqs(ch);
      for (std::size_t j = 0; j < cs.size(); ++j) offer(cs[j], fs[j]);
    }
    for (const auto& e : p.forest.at(v)) {
      offer(e.color, p.counts.counts[e.color][e.node]);
    }
    const auto by_rank = [](const Cand& a, const Cand& b) {
      return a.f > b.f || (a.f == b.f && a.c < b.c);
    };
    if (static_cast<std::int32_t>(cand.size()) > ks) {
      std::nth_element(cand.begin(), cand.begin() + (ks - 1), cand.end(), by_rank);
      cand.resize(ks);
    }
    table.mutable_length(v) = static_cast<std::int32_t>(cand.size());
    for (std::size_t j = 0; j < cand.size(); ++j) {
      table.mutable_colors(v)[j] = cand[j].c;
      table.mutable_freqs(v)[j] = cand[j].f;
    }
  }

  // Lists were stored unordered.  Two stable counting passes (color
  // ascending, then frequency descending) order every list at once.
  struct Entry {
    NodeId v;
    ColorId c;
    std::int32_t f;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(n) * ks);
  for (NodeId v = 0; v < n; ++v) {
    const auto cs = table.colors(v);
    const auto fs = table.freqs(v);
    for (std::size_t j = 0; j < cs.size(); ++j) entries.push_back({v, cs[j], fs[j]});
  }
  const std::int64_t max_f = tc.leaf_count();
  std::vector<Entry> tmp(entries.size());
  {
    std::vector<std::int64_t> cnt(delta + 1, 0);
    for (const Entry& e : entries) ++cnt[e.c + 1];
    std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
    for (const Entry& e : entries) tmp[cnt[e.c]++] = e;
  }
  {
    std::vector<std::int64_t> cnt(max_f + 2, 0);
    for (const Entry& e : tmp) ++cnt[max_f - e.f + 1];
    std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
    for (const Entry& e : tmp) entries[cnt[max_f - e.f]++] = e;
  }
  std::vector<std::int32_t> cursor(n, 0);
  for (const Entry& e : entries) {
    const std::int32_t j = cursor[e.v]++;
    table.mutable_colors(e.v)[j] = e.c;
    table.mutable_freqs(e.v)[j] = e.f;
  }

  TopKTable out(t.size(), ks);
  for (NodeId v = 0; v < t.size(); ++v) {
    const NodeId r = p.cmap.representative[v];
    out.mutable_length(v) = table.length(r);
    std::copy_n(table.colors(r).data(), table.length(r), out.mutable_colors(v));
    std::copy_n(table.freqs(r).data(), table.length(r), out.mutable_freqs(v));
  }
  return out;
}

ModeTable node_colored_modes(const std::vector<NodeId>& parent,
                             const std::vector<ColorId>& color,
                             ColorId delta) {
  const std::int64_t n = static_cast<std::int64_t>(parent.size());
  if (n == 0 || color.size() != parent.size()) {
    throw std::invalid_argument("parent and color arrays must be nonempty and equal length");
  }
  for (std::int64_t v = 0; v < n; ++v) {
    if (color[v] < 0) throw std::invalid_argument("uncolored node " + std::to_string(v));
  }
  std::vector<std::uint8_t> internal(n, 0);
  for (std::int64_t v = 0; v < n; ++v) {
    if (parent[v] != kNoNode) internal[parent[v]] = 1;
  }
  // Each internal node hands its color to a fresh leaf child; original
  // leaves keep theirs.
  std::vector<NodeId> parent2(parent.begin(), parent.end());
  std::vector<ColorId> color2(n, kNoColor);
  for (std::int64_t v = 0; v < n; ++v) {
    if (internal[v]) {
      parent2.push_back(static_cast<NodeId>(v));
      color2.push_back(color[v]);
    } else {
      color2[v] = color[v];
    }
  }
  const LeafColoredTree t =
      LeafColoredTree::from_parents(std::move(parent2), std::move(color2), delta);
  ModeTable full = scm_all_modes(t);
  full.c_max.resize(n);
  full.f_max.resize(n);
  return full;
}

void write_mode_table(const ModeTable& m, std::ostream& out) {
  for (std::size_t v = 0; v < m.c_max.size(); ++v) {
    out << v << ' ' << m.c_max[v] << ' ' << m.f_max[v] << "\n";
  }
}

void write_anti_mode_table(const AntiModeTable& a, std::ostream& out) {
  for (std::size_t v = 0; v < a.c_min.size(); ++v) {
    out << v << ' ' << a.c_min[v] << ' ' << a.f_min[v] << "\n";
  }
}

void write_combined_table(const ModeTable& m, const AntiModeTable& a, std::ostream& out) {
  for (std::size_t v = 0; v < m.c_max.size(); ++v) {
    out << v << ' ' << m.c_max[v] << ' ' << m.f_max[v] << ' ' << a.c_min[v]
        << ' ' << a.f_min[v] << "\n";
  }
}

void write_top_k_table(const TopKTable& k, std::ostream& out) {
  for (NodeId v = 0; v < k.nodes(); ++v) {
    out << v;
    const auto cs = k.colors(v);
    const auto fs = k.freqs(v);
    for (std::size_t j = 0; j < cs.size(); ++j) out << ' ' << cs[j] << ' ' << fs[j];
    out << "\n";
  }
}

std::uint64_t frequency_checksum(const ModeTable& m) {
  Fnv64 h;
  for (std::int32_t f : m.f_max) h.add(static_cast<std::uint64_t>(f));
  return h.value();
}

}  // namespace submode
