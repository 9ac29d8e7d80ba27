#include "lqflab/graph.hpp"

#include <algorithm>

#include "lqflab/errors.hpp"

namespace lqflab {

NodeSet::NodeSet(std::initializer_list<Node> nodes) {
    for (Node v : nodes) {
        if (v >= kMaxGraphNodes) throw InvalidArgument("node index out of range");
        insert(v);
    }
}

NodeSet NodeSet::from_vector(const std::vector<Node>& nodes) {
    NodeSet s;
    for (Node v : nodes) {
        if (v >= kMaxGraphNodes) throw InvalidArgument("node index out of range");
        s.insert(v);
    }
    return s;
}

std::vector<Node> NodeSet::to_vector() const {
    std::vector<Node> out;
    out.reserve(size());
    for_each([&](Node v) { out.push_back(v); });
    return out;
}

std::string NodeSet::str() const {
    std::string out = "{";
    bool first = true;
    for_each([&](Node v) {
        if (!first) out += ',';
        out += std::to_string(v + 1);
        first = false;
    });
    return out + "}";
}

bool lex_less(NodeSet a, NodeSet b) {
    // The first differing member decides; a proper prefix sorts first.
    const std::uint64_t diff = a.mask() ^ b.mask();
    if (diff == 0) return false;
    const Node v = static_cast<Node>(std::countr_zero(diff));
    const std::uint64_t above = v == 63 ? 0 : (~0ULL << (v + 1));
    // Past the common prefix the side holding v is smaller unless the other side has ended.
    if (a.contains(v)) return (b.mask() & above) != 0;
    return (a.mask() & above) == 0;
}

bool size_lex_less(NodeSet a, NodeSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

InterferenceGraph::InterferenceGraph(std::size_t node_count) {
    if (node_count == 0) throw InvalidArgument("graph needs at least one node");
    if (node_count > kMaxGraphNodes)
        throw ResourceLimit("graph has " + std::to_string(node_count) + " nodes", kMaxGraphNodes);
    adj_.assign(node_count, 0);
}

InterferenceGraph::InterferenceGraph(std::size_t node_count, const std::vector<std::pair<Node, Node>>& edges)
    : InterferenceGraph(node_count) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void InterferenceGraph::add_edge(Node u, Node v) {
    if (u >= node_count() || v >= node_count()) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop on node " + std::to_string(u + 1));
    if (adjacent(u, v))
        throw InvalidArgument("duplicate edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
    adj_[u] |= 1ULL << v;
    adj_[v] |= 1ULL << u;
}

std::size_t InterferenceGraph::edge_count() const {
    std::size_t twice = 0;
    for (auto m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
    return twice / 2;
}

std::vector<std::pair<Node, Node>> InterferenceGraph::edges() const {
    std::vector<std::pair<Node, Node>> out;
    for (Node u = 0; u < node_count(); ++u)
        NodeSet(adj_[u]).for_each([&](Node v) {
            if (u < v) out.emplace_back(u, v);
        });
    return out;
}

InterferenceGraph InterferenceGraph::complement() const {
    InterferenceGraph c(node_count());
    const std::uint64_t all = nodes().mask();
    for (Node v = 0; v < node_count(); ++v) c.adj_[v] = all & ~adj_[v] & ~(1ULL << v);
    return c;
}

std::string InterferenceGraph::canonical_key() const {
    std::string key = std::to_string(node_count());
    for (auto [u, v] : edges()) {
        key += ';';
        key += std::to_string(u);
        key += '-';
        key += std::to_string(v);
    }
    return key;
}

InducedSubgraph induced_subgraph(const InterferenceGraph& g, NodeSet s) {
    if (s.empty()) throw InvalidArgument("induced subgraph of an empty node set");
    if (!s.subset_of(g.nodes())) throw InvalidArgument("node set " + s.str() + " is not within the graph");
    InducedSubgraph out{InterferenceGraph(s.size()), s.to_vector()};
    for (std::size_t i = 0; i < out.to_parent.size(); ++i)
        for (std::size_t j = i + 1; j < out.to_parent.size(); ++j)
            if (g.adjacent(out.to_parent[i], out.to_parent[j])) out.graph.add_edge(i, j);
    return out;
}

bool is_independent(const InterferenceGraph& g, NodeSet s) {
    if (!s.subset_of(g.nodes())) throw InvalidArgument("node set " + s.str() + " is not within the graph");
    bool ok = true;
    s.for_each([&](Node v) { ok = ok && (g.neighbors(v) & s).empty(); });
    return ok;
}

bool is_maximal_independent(const InterferenceGraph& g, NodeSet s) {
    if (!is_independent(g, s)) return false;
    bool maximal = true;
    (g.nodes() - s).for_each([&](Node v) { maximal = maximal && !(g.neighbors(v) & s).empty(); });
    return maximal;
}

namespace {

void check_node_limit(const InterferenceGraph& g, const Limits& limits, const char* what) {
    if (g.node_count() > limits.max_nodes)
        throw ResourceLimit(std::string(what) + " on " + std::to_string(g.node_count()) + " nodes exceeds max_nodes",
                            limits.max_nodes);
}

// Tomita-style pivoting Bron-Kerbosch; `adj` is the relation whose cliques are reported.
void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   std::vector<NodeSet>& out) {
    if (p == 0 && x == 0) {
        out.emplace_back(r);
        return;
    }
    std::uint64_t pivot_nbrs = 0;
    int best = -1;
    for (std::uint64_t cand = p | x; cand; cand &= cand - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(cand));
        const int cover = std::popcount(p & adj[u]);
        if (cover > best) {
            best = cover;
            pivot_nbrs = adj[u];
        }
    }
    for (std::uint64_t todo = p & ~pivot_nbrs; todo; todo &= todo - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(todo));
        const std::uint64_t bit = 1ULL << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= ~bit;
        x |= bit;
    }
}

std::vector<NodeSet> maximal_cliques_of(const InterferenceGraph& g) {
    std::vector<std::uint64_t> adj(g.node_count());
    for (Node v = 0; v < g.node_count(); ++v) adj[v] = g.neighbors(v).mask();
    std::vector<NodeSet> out;
    bron_kerbosch(adj, 0, g.nodes().mask(), 0, out);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace

ScheduleMatrix enumerate_maximal_schedules(const InterferenceGraph& g, const Limits& limits) {
    check_node_limit(g, limits, "maximal schedule enumeration");
    return ScheduleMatrix(g.node_count(), maximal_cliques_of(g.complement()));
}

std::vector<NodeSet> enumerate_maximal_cliques(const InterferenceGraph& g, const Limits& limits) {
    check_node_limit(g, limits, "maximal clique enumeration");
    return maximal_cliques_of(g);
}

SubsetRange::iterator& SubsetRange::iterator::operator++() {
    // Next k-combination in lexicographic order, else the first (k+1)-combination.
    std::vector<Node> c = NodeSet(mask_).to_vector();
    std::size_t i = k_;
    while (i > 0 && c[i - 1] == n_ - k_ + (i - 1)) --i;
    if (i == 0) {
        ++k_;
        mask_ = k_ > n_ ? 0 : NodeSet::all(k_).mask();
        return *this;
    }
    ++c[i - 1];
    for (std::size_t j = i; j < k_; ++j) c[j] = c[j - 1] + 1;
    mask_ = NodeSet::from_vector(c).mask();
    return *this;
}

SubsetRange::iterator SubsetRange::begin() const {
    if (n_ == 0) return end();
    return iterator(n_, 1, 1);
}

SubsetRange nonempty_subsets(const InterferenceGraph& g, const Limits& limits) {
    if (g.node_count() > limits.max_subset_nodes)
        throw ResourceLimit("subset sweep over " + std::to_string(g.node_count()) + " nodes exceeds max_subset_nodes",
                            limits.max_subset_nodes);
    return SubsetRange(g.node_count());
}

std::vector<NodeSet> nonempty_subset_list(const InterferenceGraph& g, const Limits& limits) {
    std::vector<NodeSet> out;
    for (NodeSet s : nonempty_subsets(g, limits)) out.push_back(s);
    return out;
}

}  // namespace lqflab
