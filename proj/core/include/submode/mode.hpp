#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "submode/common.hpp"
#include "submode/forest.hpp"
#include "submode/tree.hpp"

namespace submode {

// Per node: a most frequent leaf color in the subtree and its count.
// Ties resolve to the smallest color id.
struct ModeTable {
  std::vector<ColorId> c_max;
  std::vector<std::int32_t> f_max;
};

// Per node: a least frequent color over ALL num_colors() colors, so
// f_min is 0 (with an absent color as witness) whenever some color does
// not occur in the subtree.
struct AntiModeTable {
  std::vector<ColorId> c_min;
  std::vector<std::int32_t> f_min;
};

// Per node: the k largest per-color counts with attaining colors,
// sorted by frequency descending (ties by color id ascending).  Lists
// are truncated to the number of distinct colors in the subtree.
class TopKTable {
 public:
  TopKTable() : TopKTable(0, 1) {}
  TopKTable(std::int64_t nodes, std::int32_t k)
      : k_(k), len_(nodes, 0), colors_(nodes * k, kNoColor), freqs_(nodes * k, 0) {}

  std::int32_t k() const { return k_; }
  std::int64_t nodes() const { return static_cast<std::int64_t>(len_.size()); }
  std::int32_t length(NodeId v) const { return len_[v]; }
  std::span<const ColorId> colors(NodeId v) const {
    return {colors_.data() + static_cast<std::int64_t>(v) * k_,
            static_cast<std::size_t>(len_[v])};
  }
  std::span<const std::int32_t> freqs(NodeId v) const {
    return {freqs_.data() + static_cast<std::int64_t>(v) * k_,
            static_cast<std::size_t>(len_[v])};
  }

  // Mutable access for builders.
  std::int32_t& mutable_length(NodeId v) { return len_[v]; }
  ColorId* mutable_colors(NodeId v) { return colors_.data() + static_cast<std::int64_t>(v) * k_; }
  std::int32_t* mutable_freqs(NodeId v) { return freqs_.data() + static_cast<std::int64_t>(v) * k_; }

 private:
  std::int32_t k_;
  std::vector<std::int32_t> len_;
  std::vector<ColorId> colors_;
  std::vector<std::int32_t> freqs_;
};

// Linear-time subtree modes: contract unary paths, split the tree into
// single-color trees, count leaf descendants there, then merge counts
// bottom-up (children's best pairs vs. the counts parked at each node).
ModeTable scm_all_modes(const LeafColoredTree& t);

// Subtree anti-modes over all colors.  Positive minima travel top-down:
// counts parked at a node push toward the child owning them, and a
// node's own pair continues toward its owning child when no count is
// parked at the node.  Nodes missing at least one color (detected from
// the forest's distinct-color counts) report 0 with an absent color.
AntiModeTable scm_anti_modes(const LeafColoredTree& t);

// Subtree top-k: the bottom-up merge keeps the k best per-color counts
// per node (linear-time selection), then a single global counting sort
// by frequency orders every list.  O(kN) overall.
TopKTable scm_top_k(const LeafColoredTree& t, std::int32_t k);

// Modes for trees where EVERY node carries a color: each internal node
// gets an extra leaf child holding its color, then the leaf-colored
// algorithm runs and answers are read back at the original ids.
ModeTable node_colored_modes(const std::vector<NodeId>& parent,
                             const std::vector<ColorId>& color,
                             ColorId delta = -1);

// Answer tables as text: "node_id c_max f_max" per line, extended to
// "node_id c_max f_max c_min f_min" when anti-modes are present.
void write_mode_table(const ModeTable& m, std::ostream& out);
void write_anti_mode_table(const AntiModeTable& a, std::ostream& out);
void write_combined_table(const ModeTable& m, const AntiModeTable& a, std::ostream& out);
void write_top_k_table(const TopKTable& k, std::ostream& out);

// Checksum over the frequency column only (colors may differ between
// algorithms at ties).
std::uint64_t frequency_checksum(const ModeTable& m);

}  // namespace submode
