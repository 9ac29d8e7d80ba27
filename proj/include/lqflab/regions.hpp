#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "lqflab/graph.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/pooling.hpp"
#include "lqflab/rational.hpp"

namespace lqflab {

enum class Region { Lambda, LambdaInterior, SigmaLambda, Omega, DeltaC, DeltaR };

/// "lambda", "lambda-o", "sigma-lambda", "omega", "delta-c", "delta-r".
const char* to_string(Region r);
std::optional<Region> parse_region(std::string_view name);
inline constexpr Region kAllRegions[] = {Region::Lambda, Region::LambdaInterior, Region::SigmaLambda,
                                         Region::Omega,  Region::DeltaC,         Region::DeltaR};

/// Membership decision. A non-member carries a certificate:
///  - Lambda, SigmaLambda: witness_set = V, witness_vector = y >= 0 with
///    m'(diag(sigma) y) <= 1 for every schedule m and lambda'y = witness_scalar > 1
///    (sigma = 1 for Lambda);
///  - LambdaInterior: witness_set = V, witness_vector = u >= 0, e'u = 1, with
///    m'u <= lambda'u for every schedule m; witness_scalar = t* <= 0;
///  - Omega: [lambda]_S > nu = M_S beta strictly; witness_scalar = min slack;
///  - DeltaC, DeltaR: [lambda]_S = d e + M_S beta with d = witness_scalar >= 0.
/// For Omega and Delta, witness_vector is nu and witness_weights is beta.
struct RegionVerdict {
    Region region = Region::Lambda;
    bool member = false;
    std::optional<NodeSet> witness_set;
    RationalVector witness_vector;
    RationalVector witness_weights;
    std::optional<Rational> witness_scalar;
    /// Deciding LP value where one exists: chi_f for Lambda, the margin t*
    /// for LambdaInterior, the scaled load for SigmaLambda.
    std::optional<Rational> value;
};

/// Rank of the extended schedule matrix (M_S, e).
struct RankReport {
    NodeSet subject;
    std::size_t rank = 0;
    bool high_rank = false;
};
RankReport rank_report(const InterferenceGraph& g, NodeSet s, const Limits& limits = {});

/// Result of a single-set test; `nu` and `weights` are indexed by members of S.
struct SetTest {
    bool member = false;
    /// Pi_S: the margin t*; Gamma_S: tau_f (absent when -infinity).
    std::optional<Rational> value;
    RationalVector nu;
    RationalVector weights;
};

/// lambda in Pi_S: max t s.t. M_S beta + t e <= [lambda]_S, e'beta = 1 has t* > 0.
/// The empty set is never dominated. `lambda` may be indexed by any superset of S.
SetTest in_pi(const InterferenceGraph& g, NodeSet s, const RateVector& lambda, const Limits& limits = {});

/// lambda in Gamma_S: tau_f(G_S, [lambda]_S) finite and >= 0. Empty S gives false.
SetTest in_gamma(const InterferenceGraph& g, NodeSet s, const RateVector& lambda, const Limits& limits = {});

/// Caches what the deciders share for one graph: the subset list, the
/// high-rank flags and the link pooling factors. Thread-safe.
class RegionAnalyzer {
public:
    explicit RegionAnalyzer(InterferenceGraph g, const Limits& limits = {});
    ~RegionAnalyzer();
    RegionAnalyzer(const RegionAnalyzer&) = delete;
    RegionAnalyzer& operator=(const RegionAnalyzer&) = delete;

    const InterferenceGraph& graph() const { return graph_; }
    const Limits& limits() const { return limits_; }

    /// Non-empty subsets in size-then-lexicographic order.
    const std::vector<NodeSet>& subsets() const;
    /// Subsets whose extended schedule matrix has rank |S|.
    const std::vector<NodeSet>& high_rank_subsets() const;
    const SigmaSummary& sigma() const;

    RegionVerdict decide(Region r, const RateVector& lambda) const;
    /// All six verdicts in the order of kAllRegions.
    std::vector<RegionVerdict> report(const RateVector& lambda) const;
    /// Re-checks a non-member certificate exactly; a member verdict is
    /// re-decided and must carry no witness.
    bool verify(const RateVector& lambda, const RegionVerdict& v) const;

private:
    RegionVerdict decide_omega(const RateVector& lambda) const;
    RegionVerdict decide_delta(const RateVector& lambda, const std::vector<NodeSet>& sets, Region r) const;

    struct Lazy;
    InterferenceGraph graph_;
    Limits limits_;
    std::unique_ptr<Lazy> lazy_;
};

RegionVerdict in_omega(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
RegionVerdict in_delta_c(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
RegionVerdict in_delta_r(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits = {});
std::vector<RegionVerdict> region_report(const InterferenceGraph& g, const RateVector& lambda,
                                         const Limits& limits = {});
bool verify_witness(const InterferenceGraph& g, const RateVector& lambda, const RegionVerdict& v,
                    const Limits& limits = {});

}  // namespace lqflab
