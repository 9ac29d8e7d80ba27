#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lqflab/config.hpp"

namespace lqflab {

/// Node index, 0-based inside the library. Text formats and the CLI use 1-based.
using Node = std::size_t;

/// Hard ceiling of the bitset representation.
inline constexpr std::size_t kMaxGraphNodes = 64;

/// Sorted set of nodes backed by a 64-bit mask.
class NodeSet {
public:
    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t mask) : mask_(mask) {}
    NodeSet(std::initializer_list<Node> nodes);

    static NodeSet all(std::size_t n) { return NodeSet(n >= 64 ? ~0ULL : ((1ULL << n) - 1)); }
    static NodeSet from_vector(const std::vector<Node>& nodes);

    std::uint64_t mask() const { return mask_; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool empty() const { return mask_ == 0; }
    bool contains(Node v) const { return v < 64 && ((mask_ >> v) & 1U); }
    bool subset_of(NodeSet o) const { return (mask_ & ~o.mask_) == 0; }
    Node max_node() const { return 63 - static_cast<Node>(std::countl_zero(mask_)); }

    void insert(Node v) { mask_ |= 1ULL << v; }
    void erase(Node v) { mask_ &= ~(1ULL << v); }

    std::vector<Node> to_vector() const;
    /// Position of `v` among the members (its index in to_vector()).
    std::size_t rank_of(Node v) const { return static_cast<std::size_t>(std::popcount(mask_ & ((1ULL << v) - 1))); }

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t m = mask_; m; m &= m - 1) f(static_cast<Node>(std::countr_zero(m)));
    }

    friend NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.mask_ | b.mask_); }
    friend NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.mask_ & b.mask_); }
    friend NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.mask_ & ~b.mask_); }
    friend bool operator==(NodeSet a, NodeSet b) = default;

    /// Lexicographic comparison of the sorted member lists.
    friend bool lex_less(NodeSet a, NodeSet b);
    /// Size first, then lexicographic.
    friend bool size_lex_less(NodeSet a, NodeSet b);

    /// "{1,3,5}" with 1-based labels.
    std::string str() const;

private:
    std::uint64_t mask_ = 0;
};

bool lex_less(NodeSet a, NodeSet b);
bool size_lex_less(NodeSet a, NodeSet b);

/// Undirected simple graph on nodes 0..n-1; nodes are physical links and
/// edges mark interference.
class InterferenceGraph {
public:
    InterferenceGraph() = default;
    explicit InterferenceGraph(std::size_t node_count);
    InterferenceGraph(std::size_t node_count, const std::vector<std::pair<Node, Node>>& edges);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const;
    NodeSet nodes() const { return NodeSet::all(node_count()); }
    NodeSet neighbors(Node v) const { return NodeSet(adj_.at(v)); }
    bool adjacent(Node u, Node v) const { return (adj_.at(u) >> v) & 1U; }

    /// Rejects self-loops, duplicates and out-of-range endpoints.
    void add_edge(Node u, Node v);

    /// Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<Node, Node>> edges() const;

    InterferenceGraph complement() const;

    /// Stable textual key; equal for identical labelled graphs.
    std::string canonical_key() const;

    friend bool operator==(const InterferenceGraph&, const InterferenceGraph&) = default;

private:
    std::vector<std::uint64_t> adj_;
};

/// G_S together with the map from its local indices back to the parent graph.
struct InducedSubgraph {
    InterferenceGraph graph;
    std::vector<Node> to_parent;  // local index -> parent node, increasing
};

InducedSubgraph induced_subgraph(const InterferenceGraph& g, NodeSet s);

bool is_independent(const InterferenceGraph& g, NodeSet s);
bool is_maximal_independent(const InterferenceGraph& g, NodeSet s);

/// All maximal schedules of a graph: columns are maximal independent sets in
/// lexicographic order of their member lists.
class ScheduleMatrix {
public:
    ScheduleMatrix() = default;
    ScheduleMatrix(std::size_t node_count, std::vector<NodeSet> columns)
        : node_count_(node_count), columns_(std::move(columns)) {}

    std::size_t rows() const { return node_count_; }
    std::size_t cols() const { return columns_.size(); }
    const std::vector<NodeSet>& columns() const { return columns_; }
    const NodeSet& column(std::size_t k) const { return columns_[k]; }
    bool entry(std::size_t row, std::size_t col) const { return columns_[col].contains(row); }

private:
    std::size_t node_count_ = 0;
    std::vector<NodeSet> columns_;
};

/// Pivoting Bron-Kerbosch on the complement graph.
ScheduleMatrix enumerate_maximal_schedules(const InterferenceGraph& g, const Limits& limits = {});

/// Maximal cliques, lexicographically ordered.
std::vector<NodeSet> enumerate_maximal_cliques(const InterferenceGraph& g, const Limits& limits = {});

/// All non-empty subsets in size-then-lexicographic order.
class SubsetRange {
public:
    class iterator {
    public:
        using value_type = NodeSet;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(std::size_t n, std::size_t k, std::uint64_t mask) : n_(n), k_(k), mask_(mask) {}
        NodeSet operator*() const { return NodeSet(mask_); }
        iterator& operator++();
        iterator operator++(int) {
            iterator t = *this;
            ++*this;
            return t;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.k_ == b.k_ && a.mask_ == b.mask_; }

    private:
        std::size_t n_ = 0;
        std::size_t k_ = 0;
        std::uint64_t mask_ = 0;
    };

    explicit SubsetRange(std::size_t n) : n_(n) {}
    iterator begin() const;
    iterator end() const { return iterator(n_, n_ + 1, 0); }
    std::size_t size() const { return n_ >= 64 ? ~std::size_t{0} : (std::size_t{1} << n_) - 1; }

private:
    std::size_t n_;
};

/// Checks the configured sweep limit, then returns the range.
SubsetRange nonempty_subsets(const InterferenceGraph& g, const Limits& limits = {});

/// Same subsets materialized into a vector.
std::vector<NodeSet> nonempty_subset_list(const InterferenceGraph& g, const Limits& limits = {});

}  // namespace lqflab
