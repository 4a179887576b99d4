#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "submode/common.hpp"
#include "submode/tree.hpp"

namespace submode {

// Documents over an integer alphabet [0, sigma).  The concatenation
// appends the unique delimiter sigma+i after document i, so delimiters
// compare larger than every regular letter.
struct DocumentCollection {
  std::int32_t sigma = 0;
  std::vector<std::vector<std::int32_t>> documents;

  std::int32_t num_docs() const { return static_cast<std::int32_t>(documents.size()); }
  std::int64_t total_length() const;  // letters only, no delimiters

  // Byte documents (sigma = 256).
  static DocumentCollection from_strings(const std::vector<std::string>& docs);
};

// Three input shapes, picked by the first non-empty line: FASTA when it
// starts with '>', integer lines under a "#SIGMA=<s>" header, otherwise
// plain text with one document per line (empty lines skipped).
DocumentCollection parse_documents(std::istream& in);
DocumentCollection parse_documents_file(const std::string& path);

// Where spelling a pattern stopped.  `node` is the nearest explicit
// node at or below the match end; `on_edge` says the end lies strictly
// inside the edge entering `node`.
struct Locus {
  NodeId node = kNoNode;
  std::int64_t matched = 0;
  bool full = false;
  bool on_edge = false;
};

// Suffix tree of the delimiter-joined collection.  Nodes are ids with
// leaves first (leaf i = i-th suffix in suffix-array order), internals
// in construction order.  Built from the suffix array + LCP array with
// the same stack discipline as the single-color forest.
class GeneralizedSuffixTree {
 public:
  GeneralizedSuffixTree() = default;

  static GeneralizedSuffixTree build(DocumentCollection docs);

  NodeId root() const { return root_; }
  NodeId size() const { return static_cast<NodeId>(parent_.size()); }
  std::int32_t num_leaves() const { return num_leaves_; }
  std::int32_t num_docs() const { return num_docs_; }
  std::int32_t sigma() const { return sigma_; }
  bool is_leaf(NodeId v) const { return v < num_leaves_; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_buf_.data() + child_off_[v],
            static_cast<std::size_t>(child_off_[v + 1] - child_off_[v])};
  }
  std::int64_t string_depth(NodeId v) const { return sd_[v]; }
  // Internal nodes only; the root links to itself.
  NodeId suffix_link(NodeId v) const { return slink_[v]; }
  ColorId doc_of_leaf(NodeId leaf) const { return doc_of_pos_[sa_[leaf]]; }
  std::int64_t suffix_start(NodeId leaf) const { return sa_[leaf]; }
  // Start of one occurrence of str(v) in the text.
  std::int64_t rep_start(NodeId v) const { return rep_start_[v]; }
  std::int32_t letter(std::int64_t pos) const { return text_[pos]; }
  std::int64_t text_length() const { return static_cast<std::int64_t>(text_.size()); }
  bool is_delimiter(std::int32_t symbol) const { return symbol >= sigma_; }
  // First delimiter position at or after pos (always exists).
  std::int64_t next_delimiter_at(std::int64_t pos) const { return next_delim_[pos]; }
  // Suffix-order interval of the leaves below v, both ends inclusive.
  LeafInterval leaf_interval(NodeId v) const { return interval_[v]; }

  NodeId child_with(NodeId v, std::int32_t letter) const;

  Locus spell(std::span<const std::int32_t> pattern) const;
  Locus spell(std::string_view pattern) const;  // bytes as letters

  // The tree as a subtree-mode instance: leaf color = owning document.
  LeafColoredTree as_leaf_colored_tree() const;

 private:
  std::int32_t sigma_ = 0;
  std::int32_t num_docs_ = 0;
  std::vector<std::int32_t> text_;
  std::vector<ColorId> doc_of_pos_;
  std::vector<std::int64_t> next_delim_;
  std::vector<std::int32_t> sa_;
  std::vector<std::int32_t> lcp_;

  std::int32_t num_leaves_ = 0;
  NodeId root_ = kNoNode;
  std::vector<NodeId> parent_;
  std::vector<std::int64_t> sd_;
  std::vector<std::int32_t> child_off_;
  std::vector<NodeId> child_buf_;
  std::vector<std::int64_t> rep_start_;
  std::vector<NodeId> slink_;
  std::vector<LeafInterval> interval_;
  std::unordered_map<std::uint64_t, NodeId> child_index_;
};

// Plain suffix array + LCP over an integer sequence (exposed for
// tests).  Prefix doubling with counting sorts, O(n log n).
std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> s,
                                             std::int32_t alphabet);
std::vector<std::int32_t> build_lcp_array(std::span<const std::int32_t> s,
                                          std::span<const std::int32_t> sa);

}  // namespace submode
