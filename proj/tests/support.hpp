#pragma once

// Shared fixtures and brute-force reference implementations for the tests.
// Nothing here calls the simplex solver or the Bron-Kerbosch enumerator.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "lqflab/families.hpp"
#include "lqflab/graph.hpp"
#include "lqflab/lp.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/rational.hpp"

namespace testsupport {

using namespace lqflab;

inline Rational R(long n, long d = 1) { return Rational(n, d); }

inline RateVector rates(const InterferenceGraph& g, std::string_view csv) {
    return RateVector::over(g, parse_rational_list(csv, true));
}

inline RateVector uniform(const InterferenceGraph& g, const Rational& x) {
    return RateVector::over(g, RationalVector(g.node_count(), x));
}

/// Rate vectors on the six-cycle.
inline RationalVector skewed_rates(const Rational& eps) {
    RationalVector v(6, R(1, 3) + eps);
    v[0] = R(5, 12) + eps;
    return v;
}
inline RationalVector lambda1() { return RationalVector(6, R(7, 10) * (R(1, 2) - R(1, 1000))); }
inline RationalVector lambda2() {
    RationalVector v(6, R(1, 2) - R(2, 1000));
    v[0] = R(1, 2) - R(1, 1000);
    return v;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    /// Uniform over {0, 1/den, ..., hi} for a random den in [1, max_den].
    Rational rational(const Rational& hi, long max_den = 24) {
        const long den = 1 + static_cast<long>(below(static_cast<std::uint64_t>(max_den)));
        const Rational scaled = hi * Rational(den);
        const long top = static_cast<long>(scaled.to_double());
        return Rational(static_cast<long>(below(static_cast<std::uint64_t>(top) + 1)), den);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Subsets of the node set, maximal among those passing `keep`.
template <class Keep>
std::vector<NodeSet> brute_maximal(std::size_t n, Keep keep) {
    std::vector<NodeSet> good;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
        if (keep(NodeSet(m))) good.emplace_back(m);
    std::vector<NodeSet> out;
    for (NodeSet s : good) {
        bool maximal = true;
        for (NodeSet t : good)
            if (t != s && s.subset_of(t)) maximal = false;
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](NodeSet a, NodeSet b) {
        const auto va = a.to_vector();
        const auto vb = b.to_vector();
        return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });
    return out;
}

inline bool brute_independent(const InterferenceGraph& g, NodeSet s) {
    for (auto [u, v] : g.edges())
        if (s.contains(u) && s.contains(v)) return false;
    return true;
}

inline bool brute_clique(const InterferenceGraph& g, NodeSet s) {
    const auto nodes = s.to_vector();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (!g.adjacent(nodes[i], nodes[j])) return false;
    return true;
}

inline std::vector<NodeSet> brute_mis(const InterferenceGraph& g) {
    return brute_maximal(g.node_count(), [&](NodeSet s) { return brute_independent(g, s); });
}

inline std::vector<NodeSet> brute_cliques(const InterferenceGraph& g) {
    return brute_maximal(g.node_count(), [&](NodeSet s) { return brute_clique(g, s); });
}

inline InterferenceGraph random_graph(Rng& rng, std::size_t n, double p) {
    InterferenceGraph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v)
            if (rng.coin(p)) g.add_edge(u, v);
    return g;
}

/// Solves the square system A x = b by Gauss-Jordan; nullopt if singular.
inline std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        const Rational inv = Rational(1) / a[c][c];
        for (std::size_t j = c; j < n; ++j) a[c][j] *= inv;
        b[c] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            const Rational f = a[r][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    return b;
}

/// Optimal value of a bounded LP with nonnegative variables by exhaustive
/// vertex enumeration; nullopt when infeasible. Small problems only.
inline std::optional<Rational> vertex_lp(const LPProblem& p) {
    const std::size_t n = p.objective.size();
    const std::size_t m = p.rhs.size();
    // Candidate tight constraints: the m rows, then x_j = 0.
    const std::size_t total = m + n;
    std::optional<Rational> best;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    if (n > total) return std::nullopt;
    while (true) {
        std::vector<RationalVector> a;
        RationalVector b;
        for (std::size_t k : pick) {
            RationalVector row(n);
            if (k < m) {
                for (std::size_t j = 0; j < n; ++j) row[j] = p.constraints(k, j);
                b.push_back(p.rhs[k]);
            } else {
                row[k - m] = 1;
                b.push_back(0);
            }
            a.push_back(std::move(row));
        }
        if (auto x = solve_square(a, b); x && primal_feasible(p, *x)) {
            Rational v;
            for (std::size_t j = 0; j < n; ++j) v += p.objective[j] * (*x)[j];
            const bool better = !best || (p.sense == Sense::Minimize ? v < *best : v > *best);
            if (better) best = v;
        }
        // Next combination.
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == total - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

/// Schedule matrix of a graph from the brute-force enumerator.
inline ScheduleMatrix brute_schedules(const InterferenceGraph& g) { return ScheduleMatrix(g.node_count(), brute_mis(g)); }

/// chi_f by enumerating vertices of its dual: max lambda'y s.t. M'y <= e, y >= 0.
inline Rational chi_by_dual_vertices(const ScheduleMatrix& m, const RationalVector& lambda) {
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective = lambda;
    p.constraints = RationalMatrix(m.cols(), m.rows());
    for (std::size_t k = 0; k < m.cols(); ++k) m.column(k).for_each([&](Node v) { p.constraints(k, v) = 1; });
    p.relations.assign(m.cols(), Relation::LessEqual);
    p.rhs.assign(m.cols(), 1);
    p.bounds.assign(m.rows(), VarBound::NonNegative);
    return *vertex_lp(p);
}

/// phi_f by enumerating vertices of max e'beta s.t. M beta <= lambda.
inline Rational phi_by_vertices(const ScheduleMatrix& m, const RationalVector& lambda) {
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(m.cols(), 1);
    p.constraints = RationalMatrix(m.rows(), m.cols());
    for (std::size_t k = 0; k < m.cols(); ++k) m.column(k).for_each([&](Node v) { p.constraints(v, k) = 1; });
    p.relations.assign(m.rows(), Relation::LessEqual);
    p.rhs = lambda;
    p.bounds.assign(m.cols(), VarBound::NonNegative);
    return *vertex_lp(p);
}

/// Mixed sampler: uniform boxes, scaled schedule mixtures, sparse and 0/1 vectors.
inline RateVector sample_rates(const InterferenceGraph& g, const ScheduleMatrix& m, Rng& rng) {
    const std::size_t n = g.node_count();
    RationalVector v(n);
    switch (rng.below(4)) {
        case 0:
            for (auto& x : v) x = rng.rational(R(1), 12);
            break;
        case 1: {
            RationalVector w(m.cols());
            Rational total;
            for (auto& x : w) total += (x = rng.rational(R(1), 6));
            if (total.is_zero()) w[0] = total = 1;
            const Rational scale = R(1, 2) + rng.rational(R(7, 10), 20);  // 1/2 .. 6/5
            for (std::size_t k = 0; k < m.cols(); ++k)
                m.column(k).for_each([&](Node u) { v[u] += scale * w[k] / total; });
            break;
        }
        case 2:
            for (auto& x : v)
                if (rng.coin(0.5)) x = rng.rational(R(1), 10);
            break;
        default:
            for (auto& x : v) x = rng.coin(0.4) ? 1 : 0;
            break;
    }
    return RateVector::over(g, std::move(v));
}

}  // namespace testsupport
