#pragma once

#include <cstddef>

namespace lqflab {

/// Enumeration caps and parallelism. Defaults: 24 nodes for schedule and
/// clique enumeration, 16 nodes for sweeps over all 2^|V|-1 subsets.
struct Limits {
    std::size_t max_nodes = 24;
    std::size_t max_subset_nodes = 16;
    unsigned jobs = 1;
};

}  // namespace lqflab
