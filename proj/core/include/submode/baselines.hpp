#pragma once

#include <span>
#include <vector>

#include "submode/common.hpp"
#include "submode/mode.hpp"
#include "submode/tree.hpp"

namespace submode {

// Reference baselines.  All return the same ModeTable as scm_all_modes
// up to tie choice; frequencies are always identical.

// Bottom-up full-histogram accumulation, O(N * Delta) time.  Refuses
// when N * Delta exceeds `cell_budget` cells.
ModeTable ba1_all_modes(const LeafColoredTree& t,
                        std::int64_t cell_budget = kDefaultCellBudget);

// Range-mode index over an integer array (block decomposition): an
// s x s table of block-span modes built by rightward scans, plus
// per-color occurrence lists with per-position ranks.  Build O(s * N),
// query O(N / s) amortized.
class RangeModeIndex {
 public:
  RangeModeIndex(std::vector<ColorId> data, std::int32_t num_blocks);

  // Mode of data[i..j], both inclusive; returns {color, frequency}.
  std::pair<ColorId, std::int32_t> query(std::int32_t i, std::int32_t j) const;

  std::int32_t size() const { return n_; }
  std::int32_t block_size() const { return block_; }

 private:
  std::vector<ColorId> data_;
  std::int32_t n_;
  std::int32_t s_;
  std::int32_t block_;
  ColorId delta_ = 0;
  std::vector<ColorId> span_color_;        // s*s block-span table
  std::vector<std::int32_t> span_freq_;
  std::vector<std::int64_t> occ_off_;      // per-color occurrence lists
  std::vector<std::int32_t> occ_;
  std::vector<std::int32_t> rank_;         // position -> index in its color's list
};

// Subtree modes through the leaf-order reduction: a subtree's leaves
// form a contiguous rank interval, so each node is one range-mode
// query with s = ceil(sqrt(N_L)).  O(N * sqrt(N)) overall.
ModeTable ba2_all_modes(const LeafColoredTree& t,
                        std::int64_t cell_budget = kDefaultCellBudget);

// Tournament of single-color trees: pair color groups by id, merge
// each pair's induced trees, and carry per-node best (frequency, color)
// annotations through the merged trees.  O(N log Delta).
ModeTable ba3_all_modes(const LeafColoredTree& t);

// Ground truth at test scale: one independent subtree walk per node.
struct HistogramTable {
  ColorId delta = 0;
  std::vector<std::int64_t> counts;  // N x delta, row per node

  std::span<const std::int64_t> row(NodeId v) const {
    return {counts.data() + static_cast<std::int64_t>(v) * delta,
            static_cast<std::size_t>(delta)};
  }
};

HistogramTable brute_all_modes(const LeafColoredTree& t,
                               std::int64_t cell_budget = kDefaultCellBudget);

// Readers over a histogram row with the library's tie rule (smallest
// color id).  Anti-modes range over all delta colors.
std::pair<ColorId, std::int64_t> histogram_mode(const HistogramTable& h, NodeId v);
std::pair<ColorId, std::int64_t> histogram_anti_mode(const HistogramTable& h, NodeId v);

}  // namespace submode
