#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lqflab/graph.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/rational.hpp"

namespace lqflab {

/// A sigma-local pooling factor with the pair (mu, nu) in Co(M_S) attaining it:
/// value * mu >= nu componentwise on `minimizing_set`.
struct PoolingFactor {
    NodeSet subject;         // the set, the single link, or all nodes for the graph factor
    Rational value;          // in (0, 1]
    NodeSet minimizing_set;  // the S achieving `value`
    RationalVector mu;       // indexed by minimizing_set members
    RationalVector nu;
    RationalVector mu_weights;  // mixing weights over the columns of M_S, sum 1
    RationalVector nu_weights;
};

/// sigma*_S via  min e't  s.t.  M_S t >= M_S beta, e'beta = 1, t, beta >= 0.
/// The optimal t equals sigma * alpha for the mixing weights alpha of mu.
PoolingFactor sigma_set(const InterferenceGraph& g, NodeSet s, const Limits& limits = {});

/// sigma*_l: minimum of sigma*_S over all S containing l (exhaustive sweep).
PoolingFactor sigma_link(const InterferenceGraph& g, Node l, const Limits& limits = {});

/// Per-link factors plus the overall factor sigma*(G) = min_l sigma*_l.
/// Ties go to the first minimizing set in size-then-lexicographic order.
struct SigmaSummary {
    std::vector<PoolingFactor> per_link;
    PoolingFactor overall;

    RationalVector link_values() const;
};
SigmaSummary sigma_summary(const InterferenceGraph& g, const Limits& limits = {});

PoolingFactor sigma_graph(const InterferenceGraph& g, const Limits& limits = {});

/// Exact check that a factor's witness satisfies value*mu >= nu with mu, nu in Co(M_S).
bool verify_pooling_witness(const InterferenceGraph& g, const PoolingFactor& f, const Limits& limits = {});

/// lambda in Sigma*(G) Lambda: some mu in Co(M_V) has lambda_l <= sigma*_l mu_l for every l.
bool in_sigma_scaled_capacity(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
bool in_sigma_scaled_capacity(const InterferenceGraph& g, const RateVector& lambda,
                              std::span<const Rational> link_factors, const Limits& limits = {});

/// LP behind the Sigma*Lambda test: min e'alpha s.t. diag(sigma) M alpha >= lambda.
/// Member iff value <= 1; `dual` then certifies non-membership when value > 1.
OracleValue sigma_scaled_load(const InterferenceGraph& g, const RateVector& lambda,
                              std::span<const Rational> link_factors, const Limits& limits = {});

/// chi_f(G_S, lambda) / phi_f(G_S, lambda); nullopt stands for +infinity (a/0).
/// `lambda` may be indexed by S or by any superset of S.
std::optional<Rational> duality_ratio(const InterferenceGraph& g, NodeSet s, const RateVector& lambda,
                                      const Limits& limits = {});

}  // namespace lqflab
