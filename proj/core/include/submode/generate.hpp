#pragma once

#include <cstdint>

#include "submode/suffix.hpp"
#include "submode/tree.hpp"

namespace submode {

// Random tree by uniform attachment: each new node picks a uniform
// parent among nodes still under `max_arity` children.  Childless
// nodes end up as leaves with uniform colors in [0, delta).
LeafColoredTree generate_random_tree(std::int64_t nodes, ColorId delta,
                                     std::int32_t max_arity, std::uint64_t seed);

// Random byte documents over {'a', ...} of size sigma (<= 26), total
// length split evenly.
DocumentCollection generate_random_documents(std::int32_t num_docs,
                                             std::int64_t total_length,
                                             std::int32_t sigma, std::uint64_t seed);

}  // namespace submode
