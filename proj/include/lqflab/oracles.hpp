#pragma once

#include <memory>
#include <optional>

#include "lqflab/graph.hpp"
#include "lqflab/lp.hpp"
#include "lqflab/rational.hpp"

namespace lqflab {

/// Nonnegative rational rates indexed by a node set of some parent graph.
/// Entry i belongs to the i-th smallest member of `index()`.
class RateVector {
public:
    RateVector() = default;
    RateVector(NodeSet index, RationalVector values);

    /// Rates over all nodes of `g`.
    static RateVector over(const InterferenceGraph& g, RationalVector values);
    static RateVector zeros(const InterferenceGraph& g);

    NodeSet index() const { return index_; }
    const RationalVector& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    /// Rate of parent node `v`.
    const Rational& at_node(Node v) const;

    friend bool operator==(const RateVector&, const RateVector&) = default;

private:
    NodeSet index_;
    RationalVector values_;
};

/// [lambda]_S, keeping parent indices.
RateVector restrict(const RateVector& lambda, NodeSet s);

/// Schedule matrix of `g`, built once per distinct labelled graph and shared.
/// Safe to call concurrently; callers see either no entry or a complete one.
std::shared_ptr<const ScheduleMatrix> cached_schedules(const InterferenceGraph& g, const Limits& limits = {});

/// Schedule matrix of G_S (rows follow the increasing members of S).
std::shared_ptr<const ScheduleMatrix> cached_schedules(const InterferenceGraph& g, NodeSet s, const Limits& limits = {});

enum class OracleKind { ChiF, PhiF, TauF };
const char* to_string(OracleKind k);

/// Optimal value of one of the fractional LPs with its witness.
/// `weights` are the mixing weights on the schedule columns (alpha or beta);
/// for tau_f the optimal shift d equals `value`. An infeasible tau_f LP has
/// `neg_infinity` set, no value and no weights.
struct OracleValue {
    OracleKind kind = OracleKind::ChiF;
    bool neg_infinity = false;
    Rational value;
    RationalVector weights;
    /// LP dual of the row constraints; for chi_f it is a fractional weighting
    /// y >= 0 with m'y <= 1 on every schedule m and lambda'y = chi_f.
    RationalVector dual;
};

/// min e'alpha  s.t.  M alpha >= lambda, alpha >= 0.
OracleValue chi_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
/// max e'beta   s.t.  M beta <= lambda, beta >= 0.
OracleValue phi_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
/// max d  s.t.  d e + M beta = lambda, e'beta = 1, beta >= 0, d free.
OracleValue tau_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});

/// Same LPs against an explicit schedule matrix (rows must match lambda).
OracleValue chi_f(const ScheduleMatrix& m, const RationalVector& lambda);
OracleValue phi_f(const ScheduleMatrix& m, const RationalVector& lambda);
OracleValue tau_f(const ScheduleMatrix& m, const RationalVector& lambda);

/// Re-substitutes a witness into its defining LP exactly.
bool verify_oracle_witness(const ScheduleMatrix& m, const RationalVector& lambda, const OracleValue& v);

/// lambda in the capacity region: chi_f <= 1.
bool in_capacity_region(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});

/// Optimum of  max t  s.t.  M alpha >= lambda + t e, e'alpha <= 1, alpha >= 0.
struct InteriorMargin {
    Rational t;
    RationalVector weights;
    /// Separating weights u >= 0, e'u = 1, with m'u <= lambda'u + t for every schedule m.
    RationalVector separator;
};
InteriorMargin capacity_margin(const ScheduleMatrix& m, const RationalVector& lambda);

/// lambda strictly dominated by some point of Co(M_V): margin t* > 0.
bool in_capacity_interior(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});

/// Every maximal clique Q has sum_{i in Q} lambda_i <= 1.
bool clique_constraints_hold(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});

/// lambda is a 0/1 vector whose support is independent in g.
bool is_extreme_point(const InterferenceGraph& g, const RateVector& lambda);

}  // namespace lqflab
