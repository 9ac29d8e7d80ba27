#include "lqflab/regions.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

#include "lqflab/errors.hpp"
#include "lqflab/matrix.hpp"
#include "parallel.hpp"
#include "schedule_util.hpp"

namespace lqflab {

using detail::column_dot;
using detail::mix;
using detail::sum;

const char* to_string(Region r) {
    switch (r) {
        case Region::Lambda: return "lambda";
        case Region::LambdaInterior: return "lambda-o";
        case Region::SigmaLambda: return "sigma-lambda";
        case Region::Omega: return "omega";
        case Region::DeltaC: return "delta-c";
        case Region::DeltaR: return "delta-r";
    }
    return "unknown";
}

std::optional<Region> parse_region(std::string_view name) {
    for (Region r : kAllRegions)
        if (name == to_string(r)) return r;
    return std::nullopt;
}

namespace {

void check_set(const InterferenceGraph& g, NodeSet s) {
    if (!s.subset_of(g.nodes())) throw InvalidArgument("node set " + s.str() + " outside the graph");
}

void check_full(const InterferenceGraph& g, const RateVector& lambda) {
    if (lambda.index() != g.nodes())
        throw InvalidArgument("rate vector has " + std::to_string(lambda.size()) + " entries for a graph with " +
                              std::to_string(g.node_count()) + " nodes");
}

bool valid_mixture(const ScheduleMatrix& m, const RationalVector& beta) {
    return beta.size() == m.cols() && detail::all_nonnegative(beta) && sum(beta) == Rational(1);
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

RankReport rank_report(const InterferenceGraph& g, NodeSet s, const Limits& limits) {
    if (s.empty()) throw InvalidArgument("rank of an empty node set");
    check_set(g, s);
    const auto m = cached_schedules(g, s, limits);
    RationalMatrix a = detail::schedule_block(*m, 0, 1);
    for (std::size_t i = 0; i < m->rows(); ++i) a(i, m->cols()) = 1;
    RankReport out;
    out.subject = s;
    out.rank = rank(a);
    out.high_rank = out.rank == s.size();
    return out;
}

SetTest in_pi(const InterferenceGraph& g, NodeSet s, const RateVector& lambda, const Limits& limits) {
    check_set(g, s);
    if (s.empty()) return {};
    const RationalVector rates = restrict(lambda, s).values();
    const auto m = cached_schedules(g, s, limits);
    const std::size_t k = m->cols();
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(k + 1, 0);
    p.objective[k] = 1;
    p.constraints = detail::schedule_block(*m, 1, 1);
    for (std::size_t i = 0; i < m->rows(); ++i) p.constraints(i, k) = 1;
    for (std::size_t j = 0; j < k; ++j) p.constraints(m->rows(), j) = 1;
    p.relations.assign(m->rows() + 1, Relation::LessEqual);
    p.relations[m->rows()] = Relation::Equal;
    p.rhs = rates;
    p.rhs.emplace_back(1);
    p.bounds.assign(k + 1, VarBound::NonNegative);
    p.bounds[k] = VarBound::Free;
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("domination LP is always feasible and bounded");
    SetTest out;
    out.value = *r.value;
    out.member = r.value->sign() > 0;
    out.weights.assign(r.primal.begin(), r.primal.begin() + static_cast<std::ptrdiff_t>(k));
    out.nu = mix(*m, out.weights);
    return out;
}

SetTest in_gamma(const InterferenceGraph& g, NodeSet s, const RateVector& lambda, const Limits& limits) {
    check_set(g, s);
    if (s.empty()) return {};
    const auto m = cached_schedules(g, s, limits);
    OracleValue tau = tau_f(*m, restrict(lambda, s).values());
    SetTest out;
    if (tau.neg_infinity) return out;
    out.member = tau.value.sign() >= 0;
    out.value = tau.value;
    out.nu = mix(*m, tau.weights);
    out.weights = std::move(tau.weights);
    return out;
}

struct RegionAnalyzer::Lazy {
    std::once_flag subsets_once;
    std::vector<NodeSet> subsets;
    std::once_flag rank_once;
    std::vector<NodeSet> high_rank;
    std::once_flag sigma_once;
    SigmaSummary sigma;
};

RegionAnalyzer::RegionAnalyzer(InterferenceGraph g, const Limits& limits)
    : graph_(std::move(g)), limits_(limits), lazy_(std::make_unique<Lazy>()) {
    if (graph_.node_count() == 0) throw InvalidArgument("graph has no nodes");
}

RegionAnalyzer::~RegionAnalyzer() = default;

const std::vector<NodeSet>& RegionAnalyzer::subsets() const {
    std::call_once(lazy_->subsets_once, [&] { lazy_->subsets = nonempty_subset_list(graph_, limits_); });
    return lazy_->subsets;
}

const std::vector<NodeSet>& RegionAnalyzer::high_rank_subsets() const {
    std::call_once(lazy_->rank_once, [&] {
        const auto& sets = subsets();
        std::vector<char> high(sets.size(), 0);
        detail::parallel_for(sets.size(), limits_.jobs,
                             [&](std::size_t i) { high[i] = rank_report(graph_, sets[i], limits_).high_rank; });
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (high[i]) lazy_->high_rank.push_back(sets[i]);
    });
    return lazy_->high_rank;
}

const SigmaSummary& RegionAnalyzer::sigma() const {
    std::call_once(lazy_->sigma_once, [&] { lazy_->sigma = sigma_summary(graph_, limits_); });
    return lazy_->sigma;
}

RegionVerdict RegionAnalyzer::decide(Region r, const RateVector& lambda) const {
    check_full(graph_, lambda);
    RegionVerdict v;
    v.region = r;
    switch (r) {
        case Region::Lambda: {
            OracleValue chi = chi_f(*cached_schedules(graph_, limits_), lambda.values());
            v.value = chi.value;
            v.member = chi.value <= Rational(1);
            if (!v.member) {
                v.witness_set = graph_.nodes();
                v.witness_scalar = dot(lambda.values(), chi.dual);
                v.witness_vector = std::move(chi.dual);
            }
            return v;
        }
        case Region::LambdaInterior: {
            InteriorMargin margin = capacity_margin(*cached_schedules(graph_, limits_), lambda.values());
            v.value = margin.t;
            v.member = margin.t.sign() > 0;
            if (!v.member) {
                v.witness_set = graph_.nodes();
                v.witness_scalar = margin.t;
                v.witness_vector = std::move(margin.separator);
            }
            return v;
        }
        case Region::SigmaLambda: {
            const RationalVector factors = sigma().link_values();
            OracleValue load = sigma_scaled_load(graph_, lambda, factors, limits_);
            v.value = load.value;
            v.member = load.value <= Rational(1);
            if (!v.member) {
                v.witness_set = graph_.nodes();
                v.witness_scalar = dot(lambda.values(), load.dual);
                v.witness_vector = std::move(load.dual);
            }
            return v;
        }
        case Region::Omega: return decide_omega(lambda);
        case Region::DeltaC: return decide_delta(lambda, subsets(), r);
        case Region::DeltaR: return decide_delta(lambda, high_rank_subsets(), r);
    }
    throw InvalidArgument("unknown region");
}

RegionVerdict RegionAnalyzer::decide_omega(const RateVector& lambda) const {
    const auto& sets = subsets();
    const auto first_pi = detail::first_match(sets.size(), limits_.jobs, [&](std::size_t i) {
        return in_pi(graph_, sets[i], lambda, limits_).member;
    });
    // Matching-number form of the same region; both must agree.
    const auto first_phi = detail::first_match(sets.size(), limits_.jobs, [&](std::size_t i) {
        const auto m = cached_schedules(graph_, sets[i], limits_);
        return phi_f(*m, restrict(lambda, sets[i]).values()).value > Rational(1);
    });
    if (first_pi.has_value() != first_phi.has_value())
        throw std::logic_error("omega deciders disagree on " + sets[first_pi ? *first_pi : *first_phi].str());
    RegionVerdict v;
    v.region = Region::Omega;
    v.member = !first_pi.has_value();
    if (!v.member) {
        const NodeSet s = sets[*first_pi];
        SetTest t = in_pi(graph_, s, lambda, limits_);
        v.witness_set = s;
        v.witness_scalar = t.value;
        v.witness_vector = std::move(t.nu);
        v.witness_weights = std::move(t.weights);
    }
    return v;
}

RegionVerdict RegionAnalyzer::decide_delta(const RateVector& lambda, const std::vector<NodeSet>& sets,
                                           Region r) const {
    const auto hit = detail::first_match(sets.size(), limits_.jobs, [&](std::size_t i) {
        return in_gamma(graph_, sets[i], lambda, limits_).member;
    });
    RegionVerdict v;
    v.region = r;
    v.member = !hit.has_value();
    if (!v.member) {
        SetTest t = in_gamma(graph_, sets[*hit], lambda, limits_);
        v.witness_set = sets[*hit];
        v.witness_scalar = t.value;
        v.witness_vector = std::move(t.nu);
        v.witness_weights = std::move(t.weights);
    }
    return v;
}

std::vector<RegionVerdict> RegionAnalyzer::report(const RateVector& lambda) const {
    std::vector<RegionVerdict> out;
    for (Region r : kAllRegions) out.push_back(decide(r, lambda));
    return out;
}

bool RegionAnalyzer::verify(const RateVector& lambda, const RegionVerdict& v) const {
    if (lambda.index() != graph_.nodes()) return false;
    if (v.member) {
        if (v.witness_set || !v.witness_vector.empty() || !v.witness_weights.empty() || v.witness_scalar)
            return false;
        return decide(v.region, lambda).member;
    }
    if (!v.witness_set || !v.witness_scalar) return false;
    const NodeSet s = *v.witness_set;
    const RationalVector& rates = lambda.values();
    switch (v.region) {
        case Region::Lambda:
        case Region::SigmaLambda: {
            if (s != graph_.nodes()) return false;
            const RationalVector& y = v.witness_vector;
            if (y.size() != rates.size() || !detail::all_nonnegative(y)) return false;
            RationalVector scaled = y;
            if (v.region == Region::SigmaLambda) {
                const auto& links = sigma().per_link;
                for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= links[i].value;
            }
            const auto m = cached_schedules(graph_, limits_);
            for (std::size_t k = 0; k < m->cols(); ++k)
                if (column_dot(*m, k, scaled) > Rational(1)) return false;
            const Rational load = dot(rates, y);
            return load == *v.witness_scalar && load > Rational(1);
        }
        case Region::LambdaInterior: {
            if (s != graph_.nodes()) return false;
            const RationalVector& u = v.witness_vector;
            if (u.size() != rates.size() || !detail::all_nonnegative(u) || sum(u) != Rational(1)) return false;
            if (v.witness_scalar->sign() > 0) return false;
            const Rational bound = dot(rates, u);
            const auto m = cached_schedules(graph_, limits_);
            for (std::size_t k = 0; k < m->cols(); ++k)
                if (column_dot(*m, k, u) > bound) return false;
            return true;
        }
        case Region::Omega:
        case Region::DeltaC:
        case Region::DeltaR: {
            if (s.empty() || !s.subset_of(graph_.nodes())) return false;
            const auto m = cached_schedules(graph_, s, limits_);
            if (!valid_mixture(*m, v.witness_weights)) return false;
            const RationalVector nu = mix(*m, v.witness_weights);
            if (nu != v.witness_vector) return false;
            const RationalVector local = restrict(lambda, s).values();
            if (v.region == Region::Omega) {
                Rational slack = local[0] - nu[0];
                for (std::size_t i = 0; i < nu.size(); ++i) {
                    if (local[i] <= nu[i]) return false;
                    if (local[i] - nu[i] < slack) slack = local[i] - nu[i];
                }
                return slack == *v.witness_scalar;
            }
            const Rational& d = *v.witness_scalar;
            if (d.sign() < 0) return false;
            for (std::size_t i = 0; i < nu.size(); ++i)
                if (local[i] != nu[i] + d) return false;
            return v.region == Region::DeltaC || rank_report(graph_, s, limits_).high_rank;
        }
    }
    return false;
}

RegionVerdict in_omega(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    return RegionAnalyzer(g, limits).decide(Region::Omega, lambda);
}

RegionVerdict in_delta_c(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    return RegionAnalyzer(g, limits).decide(Region::DeltaC, lambda);
}

RegionVerdict in_delta_r(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    return RegionAnalyzer(g, limits).decide(Region::DeltaR, lambda);
}

std::vector<RegionVerdict> region_report(const InterferenceGraph& g, const RateVector& lambda,
                                         const Limits& limits) {
    return RegionAnalyzer(g, limits).report(lambda);
}

bool verify_witness(const InterferenceGraph& g, const RateVector& lambda, const RegionVerdict& v,
                    const Limits& limits) {
    return RegionAnalyzer(g, limits).verify(lambda, v);
}

}  // namespace lqflab
