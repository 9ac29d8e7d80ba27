#pragma once

#include <cstddef>

#include "lqflab/graph.hpp"

namespace lqflab {

InterferenceGraph cycle_graph(std::size_t n);
InterferenceGraph path_graph(std::size_t n);
InterferenceGraph complete_graph(std::size_t n);
InterferenceGraph empty_graph(std::size_t n);

/// N pairs (2i-1, 2i); link 2i-1 interferes with 2j for every j != i.
/// Three pairs give the six-cycle.
InterferenceGraph pair_bipartite_graph(std::size_t pairs);

}  // namespace lqflab
