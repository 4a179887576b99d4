#include "submode/suffix.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "submode/lca.hpp"
#include "submode/stacktree.hpp"

namespace submode {

std::int64_t DocumentCollection::total_length() const {
  std::int64_t n = 0;
  for (const auto& d : documents) n += static_cast<std::int64_t>(d.size());
  return n;
}

DocumentCollection DocumentCollection::from_strings(const std::vector<std::string>& docs) {
  DocumentCollection out;
  out.sigma = 256;
  out.documents.reserve(docs.size());
  for (const std::string& d : docs) {
    std::vector<std::int32_t> sym(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      sym[i] = static_cast<std::int32_t>(static_cast<unsigned char>(d[i]));
    }
    out.documents.push_back(std::move(sym));
  }
  return out;
}

namespace {

std::string strip_cr(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  return line;
}

std::vector<std::int32_t> bytes_of(const std::string& s) {
  std::vector<std::int32_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = static_cast<std::int32_t>(static_cast<unsigned char>(s[i]));
  }
  return out;
}

}  // namespace

DocumentCollection parse_documents(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(strip_cr(std::move(line)));

  std::size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  if (first == lines.size()) throw ParseError("no documents in input");

  DocumentCollection out;
  if (lines[first][0] == '>') {
    out.sigma = 256;
    std::vector<std::int32_t> cur;
    bool open = false;
    for (std::size_t i = first; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      if (lines[i][0] == '>') {
        if (open) {
          if (cur.empty()) throw ParseError("empty FASTA record");
          out.documents.push_back(std::move(cur));
          cur.clear();
        }
        open = true;
        continue;
      }
      const std::vector<std::int32_t> b = bytes_of(lines[i]);
      cur.insert(cur.end(), b.begin(), b.end());
    }
    if (!open) throw ParseError("no documents in input");
    if (cur.empty()) throw ParseError("empty FASTA record");
    out.documents.push_back(std::move(cur));
    return out;
  }

  if (lines[first].rfind("#SIGMA=", 0) == 0) {
    const std::string_view val = std::string_view(lines[first]).substr(7);
    std::int32_t sigma = 0;
    const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), sigma);
    if (ec != std::errc() || p != val.data() + val.size() || sigma < 1) {
      throw ParseError("bad #SIGMA header: " + lines[first]);
    }
    out.sigma = sigma;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      std::vector<std::int32_t> doc;
      std::istringstream ss(lines[i]);
      std::int64_t v = 0;
      while (ss >> v) {
        if (v < 0 || v >= sigma) {
          throw ParseError("letter " + std::to_string(v) + " outside alphabet [0, " +
                           std::to_string(sigma) + ")");
        }
        doc.push_back(static_cast<std::int32_t>(v));
      }
      if (!ss.eof()) throw ParseError("bad integer document line: " + lines[i]);
      if (doc.empty()) throw ParseError("empty document line");
      out.documents.push_back(std::move(doc));
    }
    if (out.documents.empty()) throw ParseError("no documents in input");
    return out;
  }

  out.sigma = 256;
  for (std::size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    out.documents.push_back(bytes_of(lines[i]));
  }
  return out;
}

DocumentCollection parse_documents_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open documents file: " + path);
  return parse_documents(in);
}

std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> s,
                                             std::int32_t alphabet) {
  const std::int32_t n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> sa(n);
  if (n == 0) return sa;
  std::vector<std::int32_t> rnk(n), nrnk(n), tmp(n);
  {
    std::vector<std::int32_t> cnt(alphabet + 1, 0);
    for (std::int32_t i = 0; i < n; ++i) ++cnt[s[i] + 1];
    for (std::int32_t c = 0; c < alphabet; ++c) cnt[c + 1] += cnt[c];
    for (std::int32_t i = 0; i < n; ++i) sa[cnt[s[i]]++] = i;
    rnk[sa[0]] = 0;
    for (std::int32_t j = 1; j < n; ++j) {
      rnk[sa[j]] = rnk[sa[j - 1]] + (s[sa[j]] != s[sa[j - 1]] ? 1 : 0);
    }
  }
  std::vector<std::int32_t> cnt(n + 1);
  for (std::int32_t k = 1; rnk[sa[n - 1]] != n - 1; k <<= 1) {
    // Order by second key: suffixes too short to have one come first.
    std::int32_t p = 0;
    for (std::int32_t i = n - k; i < n; ++i) tmp[p++] = i;
    for (std::int32_t j = 0; j < n; ++j) {
      if (sa[j] >= k) tmp[p++] = sa[j] - k;
    }
    // Stable counting sort by first key.
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::int32_t i = 0; i < n; ++i) ++cnt[rnk[i] + 1];
    for (std::int32_t r = 0; r < n; ++r) cnt[r + 1] += cnt[r];
    for (std::int32_t i = 0; i < n; ++i) sa[cnt[rnk[tmp[i]]]++] = tmp[i];

    auto key2 = [&](std::int32_t i) { return i + k < n ? rnk[i + k] : -1; };
    nrnk[sa[0]] = 0;
    for (std::int32_t j = 1; j < n; ++j) {
      const bool same = rnk[sa[j]] == rnk[sa[j - 1]] && key2(sa[j]) == key2(sa[j - 1]);
      nrnk[sa[j]] = nrnk[sa[j - 1]] + (same ? 0 : 1);
    }
    rnk.swap(nrnk);
  }
  return sa;
}

std::vector<std::int32_t> build_lcp_array(std::span<const std::int32_t> s,
                                          std::span<const std::int32_t> sa) {
  const std::int32_t n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> lcp(n, 0), rank(n);
  for (std::int32_t j = 0; j < n; ++j) rank[sa[j]] = j;
  std::int32_t h = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::int32_t prev = sa[rank[i] - 1];
    while (i + h < n && prev + h < n && s[i + h] == s[prev + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

namespace {

std::uint64_t edge_key(NodeId parent, std::int32_t letter) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(parent)) << 32) |
         static_cast<std::uint32_t>(letter);
}

}  // namespace

GeneralizedSuffixTree GeneralizedSuffixTree::build(DocumentCollection docs) {
  if (docs.documents.empty()) throw std::invalid_argument("empty document collection");
  if (docs.sigma < 1) throw std::invalid_argument("alphabet size must be positive");

  GeneralizedSuffixTree g;
  g.sigma_ = docs.sigma;
  g.num_docs_ = docs.num_docs();

  const std::int64_t total = docs.total_length() + g.num_docs_;
  if (total >= std::numeric_limits<std::int32_t>::max()) {
    throw ResourceLimitError("text too large for 32-bit suffix positions");
  }
  g.text_.reserve(total);
  g.doc_of_pos_.reserve(total);
  for (ColorId d = 0; d < g.num_docs_; ++d) {
    const auto& doc = docs.documents[d];
    if (doc.empty()) throw std::invalid_argument("empty document");
    for (std::int32_t c : doc) {
      if (c < 0 || c >= g.sigma_) {
        throw std::invalid_argument("document letter outside [0, sigma)");
      }
      g.text_.push_back(c);
      g.doc_of_pos_.push_back(d);
    }
    g.text_.push_back(g.sigma_ + d);  // unique per-document delimiter
    g.doc_of_pos_.push_back(d);
  }
  const std::int32_t n = static_cast<std::int32_t>(g.text_.size());

  g.sa_ = build_suffix_array(g.text_, g.sigma_ + g.num_docs_);
  g.lcp_ = build_lcp_array(g.text_, g.sa_);

  std::vector<std::int32_t> leaf_depth(n);
  for (std::int32_t i = 0; i < n; ++i) leaf_depth[i] = n - g.sa_[i];
  const StackTree st = build_stack_tree(leaf_depth, g.lcp_);

  g.num_leaves_ = n;
  g.root_ = st.root;
  g.parent_ = st.parent;
  g.sd_.assign(st.depth.begin(), st.depth.end());

  const NodeId m = static_cast<NodeId>(g.parent_.size());
  g.rep_start_.assign(m, -1);
  for (std::int32_t i = 0; i < n; ++i) g.rep_start_[i] = g.sa_[i];
  // Every internal node has at least one child with a smaller id (the
  // node it adopted when it was spliced in), so one ascending pass
  // settles all representatives.
  for (NodeId u = 0; u < m; ++u) {
    const NodeId p = g.parent_[u];
    if (p != kNoNode && g.rep_start_[p] < 0) g.rep_start_[p] = g.rep_start_[u];
  }

  g.child_off_.assign(m + 1, 0);
  for (NodeId u = 0; u < m; ++u) {
    if (g.parent_[u] != kNoNode) ++g.child_off_[g.parent_[u] + 1];
  }
  for (NodeId u = 0; u < m; ++u) g.child_off_[u + 1] += g.child_off_[u];
  g.child_buf_.resize(m - 1 >= 0 ? m - 1 : 0);
  {
    std::vector<std::int32_t> cursor(g.child_off_.begin(), g.child_off_.end() - 1);
    for (NodeId u = 0; u < m; ++u) {
      if (g.parent_[u] != kNoNode) g.child_buf_[cursor[g.parent_[u]]++] = u;
    }
  }

  g.interval_.assign(m, LeafInterval{std::numeric_limits<std::int32_t>::max(), -1});
  {
    std::vector<std::int32_t> pending(m, 0);
    for (NodeId u = 0; u < m; ++u) {
      if (g.parent_[u] != kNoNode) ++pending[g.parent_[u]];
    }
    std::vector<NodeId> ready;
    for (std::int32_t i = 0; i < n; ++i) {
      g.interval_[i] = {i, i};
      ready.push_back(i);
    }
    while (!ready.empty()) {
      const NodeId u = ready.back();
      ready.pop_back();
      const NodeId p = g.parent_[u];
      if (p == kNoNode) continue;
      g.interval_[p].lo = std::min(g.interval_[p].lo, g.interval_[u].lo);
      g.interval_[p].hi = std::max(g.interval_[p].hi, g.interval_[u].hi);
      if (--pending[p] == 0) ready.push_back(p);
    }
  }

  g.child_index_.reserve(static_cast<std::size_t>(m));
  for (NodeId u = 0; u < m; ++u) {
    const NodeId p = g.parent_[u];
    if (p == kNoNode) continue;
    const std::int32_t first = g.text_[g.rep_start_[u] + g.sd_[p]];
    g.child_index_.emplace(edge_key(p, first), u);
  }

  g.next_delim_.resize(n);
  std::int64_t nearest = n - 1;
  for (std::int32_t pos = n - 1; pos >= 0; --pos) {
    if (g.text_[pos] >= g.sigma_) nearest = pos;
    g.next_delim_[pos] = nearest;
  }

  // Suffix links off the LCA identity: the link of lca(leaf_p, leaf_q)
  // is lca of the leaves for the suffixes one position later.
  g.slink_.assign(m, kNoNode);
  g.slink_[g.root_] = g.root_;
  {
    std::vector<std::int32_t> isa(n);
    for (std::int32_t j = 0; j < n; ++j) isa[g.sa_[j]] = j;
    const LeafColoredTree view = g.as_leaf_colored_tree();
    const LcaIndex lca(view);
    for (NodeId u = n; u < m; ++u) {
      if (u == g.root_) continue;
      if (g.sd_[u] <= 1) {
        g.slink_[u] = g.root_;
        continue;
      }
      const NodeId lp = isa[g.sa_[g.interval_[u].lo] + 1];
      const NodeId lq = isa[g.sa_[g.interval_[u].hi] + 1];
      g.slink_[u] = lca.lca(lp, lq);
    }
  }
  return g;
}

NodeId GeneralizedSuffixTree::child_with(NodeId v, std::int32_t letter) const {
  const auto it = child_index_.find(edge_key(v, letter));
  return it == child_index_.end() ? kNoNode : it->second;
}

Locus GeneralizedSuffixTree::spell(std::span<const std::int32_t> pattern) const {
  NodeId u = root_;
  std::int64_t matched = 0;
  const std::int64_t plen = static_cast<std::int64_t>(pattern.size());
  while (matched < plen) {
    const std::int32_t sym = pattern[matched];
    if (sym < 0 || sym >= sigma_) return {u, matched, false, false};
    const NodeId c = child_with(u, sym);
    if (c == kNoNode) return {u, matched, false, false};
    const std::int64_t edge_len = sd_[c] - sd_[u];
    std::int64_t t = 0;
    while (t < edge_len && matched < plen) {
      if (text_[rep_start_[c] + sd_[u] + t] != pattern[matched]) {
        return {c, matched, false, true};
      }
      ++t;
      ++matched;
    }
    if (t < edge_len) return {c, matched, true, true};
    u = c;
  }
  return {u, matched, true, false};
}

Locus GeneralizedSuffixTree::spell(std::string_view pattern) const {
  std::vector<std::int32_t> sym(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    sym[i] = static_cast<std::int32_t>(static_cast<unsigned char>(pattern[i]));
  }
  return spell(std::span<const std::int32_t>(sym));
}

LeafColoredTree GeneralizedSuffixTree::as_leaf_colored_tree() const {
  std::vector<ColorId> colors(parent_.size(), kNoColor);
  for (std::int32_t i = 0; i < num_leaves_; ++i) colors[i] = doc_of_pos_[sa_[i]];
  return LeafColoredTree::from_parents(parent_, colors, num_docs_);
}

}  // namespace submode
