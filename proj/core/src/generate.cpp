#include "submode/generate.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace submode {

LeafColoredTree generate_random_tree(std::int64_t nodes, ColorId delta,
                                     std::int32_t max_arity, std::uint64_t seed) {
  if (nodes < 1) throw std::invalid_argument("node count must be positive");
  if (nodes > std::numeric_limits<NodeId>::max() - 1) {
    throw ResourceLimitError("tree too large for 32-bit node ids");
  }
  if (delta < 1) throw std::invalid_argument("color count must be positive");
  if (max_arity < 1) throw std::invalid_argument("max arity must be positive");

  std::mt19937_64 rng(seed);
  std::vector<NodeId> parent(nodes, kNoNode);
  std::vector<std::int32_t> arity(nodes, 0);
  std::vector<NodeId> open{0};  // nodes that may still take children
  for (NodeId v = 1; v < nodes; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t slot = pick(rng);
    const NodeId p = open[slot];
    parent[v] = p;
    if (++arity[p] == max_arity) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(v);
  }

  std::vector<ColorId> color(nodes, kNoColor);
  std::uniform_int_distribution<ColorId> pick_color(0, delta - 1);
  for (NodeId v = 0; v < nodes; ++v) {
    if (arity[v] == 0) color[v] = pick_color(rng);
  }
  return LeafColoredTree::from_parents(std::move(parent), std::move(color), delta);
}

DocumentCollection generate_random_documents(std::int32_t num_docs,
                                             std::int64_t total_length,
                                             std::int32_t sigma, std::uint64_t seed) {
  if (num_docs < 1) throw std::invalid_argument("document count must be positive");
  if (total_length < num_docs) throw std::invalid_argument("need at least one letter per document");
  if (sigma < 1 || sigma > 26) throw std::invalid_argument("sigma must be in [1, 26]");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> pick(0, sigma - 1);
  DocumentCollection out;
  out.sigma = 256;
  out.documents.resize(num_docs);
  for (std::int32_t d = 0; d < num_docs; ++d) {
    const std::int64_t len = total_length / num_docs + (d < total_length % num_docs ? 1 : 0);
    auto& doc = out.documents[d];
    doc.resize(len);
    for (std::int64_t i = 0; i < len; ++i) doc[i] = 'a' + pick(rng);
  }
  return out;
}

}  // namespace submode
