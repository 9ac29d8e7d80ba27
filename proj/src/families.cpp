#include "lqflab/families.hpp"

#include "lqflab/errors.hpp"

namespace lqflab {

InterferenceGraph cycle_graph(std::size_t n) {
    if (n < 3) throw InvalidArgument("a cycle needs at least 3 nodes");
    InterferenceGraph g(n);
    for (Node v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

InterferenceGraph path_graph(std::size_t n) {
    InterferenceGraph g(n);
    for (Node v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

InterferenceGraph complete_graph(std::size_t n) {
    InterferenceGraph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

InterferenceGraph empty_graph(std::size_t n) { return InterferenceGraph(n); }

InterferenceGraph pair_bipartite_graph(std::size_t pairs) {
    if (pairs < 2) throw InvalidArgument("need at least 2 pairs");
    InterferenceGraph g(2 * pairs);
    for (std::size_t i = 0; i < pairs; ++i)
        for (std::size_t j = 0; j < pairs; ++j)
            if (i != j) g.add_edge(2 * i, 2 * j + 1);
    return g;
}

}  // namespace lqflab
