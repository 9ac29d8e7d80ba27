#include "lqflab/pooling.hpp"

#include <stdexcept>
#include <string>

#include "lqflab/errors.hpp"
#include "parallel.hpp"
#include "schedule_util.hpp"

namespace lqflab {

using detail::mix;
using detail::sum;

namespace {

void check_set(const InterferenceGraph& g, NodeSet s) {
    if (s.empty()) throw InvalidArgument("empty node set");
    if (!s.subset_of(g.nodes())) throw InvalidArgument("node set " + s.str() + " outside the graph");
}

PoolingFactor sigma_of(const ScheduleMatrix& m, NodeSet s) {
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    LPProblem p;
    p.sense = Sense::Minimize;
    p.objective.assign(2 * k, 0);
    for (std::size_t j = 0; j < k; ++j) p.objective[j] = 1;
    p.constraints = RationalMatrix(n + 1, 2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        m.column(j).for_each([&](Node v) {
            p.constraints(v, j) = 1;
            p.constraints(v, k + j) = -1;
        });
        p.constraints(n, k + j) = 1;
    }
    p.relations.assign(n + 1, Relation::GreaterEqual);
    p.relations[n] = Relation::Equal;
    p.rhs.assign(n + 1, 0);
    p.rhs[n] = 1;
    p.bounds.assign(2 * k, VarBound::NonNegative);
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("pooling LP is always feasible and bounded");

    PoolingFactor f;
    f.subject = s;
    f.minimizing_set = s;
    f.value = *r.value;
    if (f.value.sign() <= 0) throw std::logic_error("pooling factor must be positive");
    for (std::size_t j = 0; j < k; ++j) {
        f.mu_weights.push_back(r.primal[j] / f.value);
        f.nu_weights.push_back(r.primal[k + j]);
    }
    f.mu = mix(m, f.mu_weights);
    f.nu = mix(m, f.nu_weights);
    return f;
}

/// Factors of every non-empty subset, in size-then-lexicographic order.
std::vector<PoolingFactor> sweep(const InterferenceGraph& g, const Limits& limits) {
    const std::vector<NodeSet> sets = nonempty_subset_list(g, limits);
    std::vector<PoolingFactor> out(sets.size());
    detail::parallel_for(sets.size(), limits.jobs, [&](std::size_t i) {
        out[i] = sigma_of(*cached_schedules(g, sets[i], limits), sets[i]);
    });
    return out;
}

PoolingFactor best_for_link(const std::vector<PoolingFactor>& table, Node l) {
    const PoolingFactor* best = nullptr;
    for (const auto& f : table)
        if (f.subject.contains(l) && (best == nullptr || f.value < best->value)) best = &f;
    if (best == nullptr) throw std::logic_error("no subset contains the link");
    PoolingFactor out = *best;
    out.subject = NodeSet{l};
    return out;
}

}  // namespace

PoolingFactor sigma_set(const InterferenceGraph& g, NodeSet s, const Limits& limits) {
    check_set(g, s);
    return sigma_of(*cached_schedules(g, s, limits), s);
}

PoolingFactor sigma_link(const InterferenceGraph& g, Node l, const Limits& limits) {
    if (l >= g.node_count()) throw InvalidArgument("link " + std::to_string(l + 1) + " out of range");
    const std::vector<NodeSet> all = nonempty_subset_list(g, limits);
    std::vector<NodeSet> sets;
    for (NodeSet s : all)
        if (s.contains(l)) sets.push_back(s);
    std::vector<PoolingFactor> table(sets.size());
    detail::parallel_for(sets.size(), limits.jobs, [&](std::size_t i) {
        table[i] = sigma_of(*cached_schedules(g, sets[i], limits), sets[i]);
    });
    return best_for_link(table, l);
}

RationalVector SigmaSummary::link_values() const {
    RationalVector out;
    out.reserve(per_link.size());
    for (const auto& f : per_link) out.push_back(f.value);
    return out;
}

SigmaSummary sigma_summary(const InterferenceGraph& g, const Limits& limits) {
    const std::vector<PoolingFactor> table = sweep(g, limits);
    SigmaSummary out;
    for (Node l = 0; l < g.node_count(); ++l) out.per_link.push_back(best_for_link(table, l));
    // The overall minimum is the first minimizing set among all subsets.
    const PoolingFactor* best = &table.front();
    for (const auto& f : table)
        if (f.value < best->value) best = &f;
    out.overall = *best;
    out.overall.subject = g.nodes();
    return out;
}

PoolingFactor sigma_graph(const InterferenceGraph& g, const Limits& limits) {
    return sigma_summary(g, limits).overall;
}

bool verify_pooling_witness(const InterferenceGraph& g, const PoolingFactor& f, const Limits& limits) {
    if (f.value.sign() <= 0 || f.value > Rational(1)) return false;
    if (f.minimizing_set.empty() || !f.minimizing_set.subset_of(g.nodes())) return false;
    const auto m = cached_schedules(g, f.minimizing_set, limits);
    if (f.mu_weights.size() != m->cols() || f.nu_weights.size() != m->cols()) return false;
    if (!detail::all_nonnegative(f.mu_weights) || !detail::all_nonnegative(f.nu_weights)) return false;
    if (sum(f.mu_weights) != Rational(1) || sum(f.nu_weights) != Rational(1)) return false;
    if (mix(*m, f.mu_weights) != f.mu || mix(*m, f.nu_weights) != f.nu) return false;
    for (std::size_t i = 0; i < f.mu.size(); ++i)
        if (f.value * f.mu[i] < f.nu[i]) return false;
    return true;
}

OracleValue sigma_scaled_load(const InterferenceGraph& g, const RateVector& lambda,
                              std::span<const Rational> link_factors, const Limits& limits) {
    if (lambda.size() != g.node_count() || link_factors.size() != g.node_count())
        throw InvalidArgument("rate vector and pooling factors must cover every node");
    const auto m = cached_schedules(g, limits);
    LPProblem p;
    p.sense = Sense::Minimize;
    p.objective.assign(m->cols(), 1);
    p.constraints = RationalMatrix(m->rows(), m->cols());
    for (std::size_t k = 0; k < m->cols(); ++k)
        m->column(k).for_each([&](Node v) { p.constraints(v, k) = link_factors[v]; });
    p.relations.assign(m->rows(), Relation::GreaterEqual);
    p.rhs = lambda.values();
    p.bounds.assign(m->cols(), VarBound::NonNegative);
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("scaled capacity LP is always feasible and bounded");
    return OracleValue{OracleKind::ChiF, false, *r.value, std::move(r.primal), std::move(r.dual)};
}

bool in_sigma_scaled_capacity(const InterferenceGraph& g, const RateVector& lambda,
                              std::span<const Rational> link_factors, const Limits& limits) {
    return sigma_scaled_load(g, lambda, link_factors, limits).value <= Rational(1);
}

bool in_sigma_scaled_capacity(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    if (lambda.size() != g.node_count()) throw InvalidArgument("rate vector must cover every node");
    const RationalVector factors = sigma_summary(g, limits).link_values();
    return in_sigma_scaled_capacity(g, lambda, factors, limits);
}

std::optional<Rational> duality_ratio(const InterferenceGraph& g, NodeSet s, const RateVector& lambda,
                                      const Limits& limits) {
    check_set(g, s);
    const RateVector local = restrict(lambda, s);
    const auto m = cached_schedules(g, s, limits);
    const OracleValue phi = phi_f(*m, local.values());
    if (phi.value.is_zero()) return std::nullopt;
    return chi_f(*m, local.values()).value / phi.value;
}

}  // namespace lqflab
