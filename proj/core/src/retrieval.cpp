#include "submode/retrieval.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace submode {

DocRetrievalIndex DocRetrievalIndex::build(DocumentCollection docs, std::int32_t k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  DocRetrievalIndex idx;
  idx.gst = GeneralizedSuffixTree::build(std::move(docs));
  const LeafColoredTree view = idx.gst.as_leaf_colored_tree();
  idx.modes = scm_all_modes(view);
  idx.anti = scm_anti_modes(view);
  idx.topk = scm_top_k(view, k);
  return idx;
}

DocHit dr1(const DocRetrievalIndex& idx, std::string_view pattern) {
  const Locus loc = idx.gst.spell(pattern);
  if (!loc.full) return {};
  return {idx.modes.c_max[loc.node], idx.modes.f_max[loc.node]};
}

DocHit dr_bottom1(const DocRetrievalIndex& idx, std::string_view pattern) {
  const Locus loc = idx.gst.spell(pattern);
  if (!loc.full) return {};
  return {idx.anti.c_min[loc.node], idx.anti.f_min[loc.node]};
}

std::vector<DocHit> dr_topk(const DocRetrievalIndex& idx, std::string_view pattern,
                            std::int32_t k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > idx.topk.k()) {
    throw std::invalid_argument("index was built for a smaller k");
  }
  const Locus loc = idx.gst.spell(pattern);
  if (!loc.full) return {};
  const auto colors = idx.topk.colors(loc.node);
  const auto freqs = idx.topk.freqs(loc.node);
  const std::int32_t take = std::min<std::int32_t>(k, idx.topk.length(loc.node));
  std::vector<DocHit> out(take);
  for (std::int32_t i = 0; i < take; ++i) out[i] = {colors[i], freqs[i]};
  return out;
}

std::int64_t upm_mine(const DocRetrievalIndex& idx, std::int64_t epsilon,
                      const std::function<bool(const UniformPattern&)>& sink) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  const GeneralizedSuffixTree& g = idx.gst;
  std::int64_t emitted = 0;
  for (NodeId v = 0; v < g.size(); ++v) {
    if (v == g.root()) continue;
    const std::int64_t spread =
        static_cast<std::int64_t>(idx.modes.f_max[v]) - idx.anti.f_min[v];
    if (spread > epsilon) continue;
    const std::int64_t lo = g.string_depth(g.parent(v)) + 1;
    const std::int64_t rep = g.rep_start(v);
    // Clip at the first delimiter; a delimiter sits at the same offset
    // of every occurrence of str(v), so any representative works.
    const std::int64_t hi =
        std::min(g.string_depth(v), g.next_delimiter_at(rep) - rep);
    if (lo > hi) continue;
    ++emitted;
    if (!sink({v, lo, hi})) break;
  }
  return emitted;
}

std::string upm_expand(const GeneralizedSuffixTree& gst, NodeId node, std::int64_t len) {
  if (node < 0 || node >= gst.size()) throw std::invalid_argument("bad node id");
  if (len < 1 || len > gst.string_depth(node)) {
    throw std::invalid_argument("length outside the node's edge interval");
  }
  const std::int64_t rep = gst.rep_start(node);
  std::string out;
  if (gst.sigma() <= 256) {
    out.reserve(len);
    for (std::int64_t t = 0; t < len; ++t) {
      out.push_back(static_cast<char>(static_cast<unsigned char>(gst.letter(rep + t))));
    }
  } else {
    for (std::int64_t t = 0; t < len; ++t) {
      if (t) out.push_back(' ');
      out += std::to_string(gst.letter(rep + t));
    }
  }
  return out;
}

std::int64_t cqs(const DocRetrievalIndex& idx, std::string_view pattern,
                 std::int64_t q, std::int64_t epsilon) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  const std::int64_t plen = static_cast<std::int64_t>(pattern.size());
  if (q > plen) return 0;

  std::vector<std::int32_t> sym(plen);
  for (std::int64_t i = 0; i < plen; ++i) {
    sym[i] = static_cast<std::int32_t>(static_cast<unsigned char>(pattern[i]));
  }
  const std::int64_t wins = plen - q + 1;

  // Pass 1: count each distinct q-gram inside the pattern.  Rolling
  // fingerprints pick the bucket; actual window comparison settles it.
  struct Gram {
    std::int64_t first;
    std::int64_t count;
    bool tested;
  };
  constexpr std::uint64_t kBase = 0x100000001b3ULL;
  std::uint64_t power = 1;
  for (std::int64_t t = 1; t < q; ++t) power *= kBase;
  std::vector<std::uint64_t> fp(wins);
  std::uint64_t h = 0;
  for (std::int64_t t = 0; t < q; ++t) h = h * kBase + static_cast<std::uint64_t>(sym[t] + 1);
  fp[0] = h;
  for (std::int64_t i = 1; i < wins; ++i) {
    h = (h - static_cast<std::uint64_t>(sym[i - 1] + 1) * power) * kBase +
        static_cast<std::uint64_t>(sym[i + q - 1] + 1);
    fp[i] = h;
  }
  auto same_window = [&](std::int64_t a, std::int64_t b) {
    return std::equal(sym.begin() + a, sym.begin() + a + q, sym.begin() + b);
  };
  std::unordered_map<std::uint64_t, std::vector<Gram>> grams;
  grams.reserve(static_cast<std::size_t>(wins));
  for (std::int64_t i = 0; i < wins; ++i) {
    auto& bucket = grams[fp[i]];
    bool found = false;
    for (Gram& e : bucket) {
      if (same_window(e.first, i)) {
        ++e.count;
        found = true;
        break;
      }
    }
    if (!found) bucket.push_back({i, 1, false});
  }

  // Pass 2: matching-statistics walk.  (u, l) is the deepest explicit
  // node with sd(u) <= l on the match of P[i..i+l); edge_child is the
  // edge holding the implicit end when l > sd(u).
  const GeneralizedSuffixTree& g = idx.gst;
  std::int64_t answer = 0;
  NodeId u = g.root();
  NodeId edge_child = kNoNode;
  std::int64_t l = 0;
  for (std::int64_t i = 0; i < wins; ++i) {
    while (l < q) {
      const std::int32_t s = sym[i + l];
      if (s < 0 || s >= g.sigma()) break;
      if (l == g.string_depth(u)) {
        const NodeId c = g.child_with(u, s);
        if (c == kNoNode) break;
        edge_child = c;
        ++l;
        if (l == g.string_depth(c)) u = c;
      } else {
        if (g.letter(g.rep_start(edge_child) + l) != s) break;
        ++l;
        if (l == g.string_depth(edge_child)) u = edge_child;
      }
    }
    if (l == q) {
      const NodeId locus = l == g.string_depth(u) ? u : edge_child;
      auto& bucket = grams[fp[i]];
      for (Gram& e : bucket) {
        if (!same_window(e.first, i)) continue;
        if (!e.tested) {
          e.tested = true;
          const std::int64_t f_max = idx.modes.f_max[locus];
          const std::int64_t f_min = idx.anti.f_min[locus];
          if (e.count >= f_min - epsilon && e.count <= f_max + epsilon) ++answer;
        }
        break;
      }
    }
    if (i + 1 == wins) break;
    // Shift the window: drop the first letter via the suffix link,
    // then re-descend the remainder by edge jumps (it is known to
    // occur, so only first letters need looking at).
    if (l > 0) {
      const std::int64_t target = l - 1;
      NodeId v = u == g.root() ? g.root() : g.suffix_link(u);
      std::int64_t d = g.string_depth(v);
      NodeId ec = kNoNode;
      while (d < target) {
        const NodeId c = g.child_with(v, sym[i + 1 + d]);
        if (c == kNoNode) throw std::logic_error("suffix-link walk lost its match");
        const std::int64_t cd = g.string_depth(c);
        if (cd <= target) {
          v = c;
          d = cd;
        } else {
          ec = c;
          break;
        }
      }
      u = v;
      l = target;
      edge_child = ec;
    }
  }
  return answer;
}

}  // namespace submode
