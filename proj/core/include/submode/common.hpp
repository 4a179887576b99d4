#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace submode {

// Node and color ids are dense non-negative indices.  -1 marks "none"
// (no parent, no color, absent answer).
using NodeId = std::int32_t;
using ColorId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr ColorId kNoColor = -1;

// Malformed input (tree files, document files, matrices, patterns).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it would exceed a configured
// memory budget (quadratic baselines on large instances).
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Default budget for histogram-shaped working sets, in cells.
inline constexpr std::int64_t kDefaultCellBudget = std::int64_t{1} << 32;

// FNV-1a over a stream of integers; used for answer-table checksums.
struct Fnv64 {
  std::uint64_t state = 1469598103934665603ull;

  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      state ^= (x >> (8 * i)) & 0xffu;
      state *= 1099511628211ull;
    }
  }
  std::uint64_t value() const { return state; }
};

}  // namespace submode
