#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "submode/common.hpp"
#include "submode/mode.hpp"
#include "submode/suffix.hpp"

namespace submode {

// Suffix tree annotated with the per-node frequency tables; implicit
// loci read their answers from the nearest explicit descendant.
struct DocRetrievalIndex {
  GeneralizedSuffixTree gst;
  ModeTable modes;
  AntiModeTable anti;
  TopKTable topk;

  // `k` caps later dr_topk queries.
  static DocRetrievalIndex build(DocumentCollection docs, std::int32_t k = 1);
};

struct DocHit {
  ColorId doc = kNoColor;  // kNoColor when the pattern occurs nowhere
  std::int64_t freq = 0;
};

// Document with the most / fewest occurrences of the pattern; the
// bottom answer may report frequency 0 with an absent document.
DocHit dr1(const DocRetrievalIndex& idx, std::string_view pattern);
DocHit dr_bottom1(const DocRetrievalIndex& idx, std::string_view pattern);

// The k highest-count documents, frequency descending then document id
// ascending.  Zero-count documents are never reported, so the list can
// be shorter than k.
std::vector<DocHit> dr_topk(const DocRetrievalIndex& idx, std::string_view pattern,
                            std::int32_t k);

// Compact uniform pattern: the prefixes of str(node) with lengths
// lo..hi (inclusive), clipped so no emitted prefix crosses a delimiter.
struct UniformPattern {
  NodeId node = kNoNode;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Streams one compact record per node whose subtree satisfies
// f_max - f_min <= epsilon.  The sink returns false to stop early;
// the return value counts the records handed to the sink.
std::int64_t upm_mine(const DocRetrievalIndex& idx, std::int64_t epsilon,
                      const std::function<bool(const UniformPattern&)>& sink);

// The length-`len` prefix of str(node); byte alphabets render as raw
// bytes, wider alphabets as space-separated integers.
std::string upm_expand(const GeneralizedSuffixTree& gst, NodeId node, std::int64_t len);

// Number of distinct q-grams Q of the pattern that occur in the
// collection with |occ_pattern(Q)| within [f_min - epsilon, f_max + epsilon]
// of Q's locus.  q larger than the pattern yields 0.
std::int64_t cqs(const DocRetrievalIndex& idx, std::string_view pattern,
                 std::int64_t q, std::int64_t epsilon);

}  // namespace submode
