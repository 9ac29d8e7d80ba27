#include "lqflab/oracles.hpp"

#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lqflab/errors.hpp"
#include "schedule_util.hpp"

namespace lqflab {

RateVector::RateVector(NodeSet index, RationalVector values) : index_(index), values_(std::move(values)) {
    if (values_.size() != index_.size())
        throw InvalidArgument("rate vector has " + std::to_string(values_.size()) + " entries for " +
                              std::to_string(index_.size()) + " nodes");
    for (const auto& v : values_)
        if (v.sign() < 0) throw InvalidArgument("rate vector entries must be nonnegative, got " + v.str());
}

RateVector RateVector::over(const InterferenceGraph& g, RationalVector values) {
    return RateVector(g.nodes(), std::move(values));
}

RateVector RateVector::zeros(const InterferenceGraph& g) { return over(g, RationalVector(g.node_count())); }

const Rational& RateVector::at_node(Node v) const {
    if (!index_.contains(v)) throw InvalidArgument("node " + std::to_string(v + 1) + " not in rate vector index");
    return values_[index_.rank_of(v)];
}

RateVector restrict(const RateVector& lambda, NodeSet s) {
    if (s.empty()) throw InvalidArgument("restriction to an empty node set");
    if (!s.subset_of(lambda.index())) throw InvalidArgument("restriction set " + s.str() + " outside the rate index");
    RationalVector out;
    out.reserve(s.size());
    s.for_each([&](Node v) { out.push_back(lambda.at_node(v)); });
    return RateVector(s, std::move(out));
}

using detail::mix;
using detail::schedule_block;
using detail::sum;

namespace {

class ScheduleCache {
public:
    std::shared_ptr<const ScheduleMatrix> get(const InterferenceGraph& g, const Limits& limits) {
        const std::string key = g.canonical_key();
        {
            std::lock_guard lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto built = std::make_shared<const ScheduleMatrix>(enumerate_maximal_schedules(g, limits));
        std::lock_guard lock(mutex_);
        if (entries_.size() >= kCapacity) entries_.clear();
        return entries_.try_emplace(key, std::move(built)).first->second;
    }

private:
    static constexpr std::size_t kCapacity = 1 << 16;
    std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<const ScheduleMatrix>> entries_;
};

ScheduleCache& schedule_cache() {
    static ScheduleCache cache;
    return cache;
}

void check_dims(const ScheduleMatrix& m, const RationalVector& lambda) {
    if (m.rows() != lambda.size())
        throw InvalidArgument("rate vector has " + std::to_string(lambda.size()) + " entries for a graph with " +
                              std::to_string(m.rows()) + " nodes");
}

void check_dims(const InterferenceGraph& g, const RateVector& lambda) {
    if (g.node_count() != lambda.size())
        throw InvalidArgument("rate vector has " + std::to_string(lambda.size()) + " entries for a graph with " +
                              std::to_string(g.node_count()) + " nodes");
}

RationalVector head(const RationalVector& v, std::size_t n) { return RationalVector(v.begin(), v.begin() + n); }

}  // namespace

std::shared_ptr<const ScheduleMatrix> cached_schedules(const InterferenceGraph& g, const Limits& limits) {
    return schedule_cache().get(g, limits);
}

std::shared_ptr<const ScheduleMatrix> cached_schedules(const InterferenceGraph& g, NodeSet s, const Limits& limits) {
    return schedule_cache().get(induced_subgraph(g, s).graph, limits);
}

const char* to_string(OracleKind k) {
    switch (k) {
        case OracleKind::ChiF: return "chi_f";
        case OracleKind::PhiF: return "phi_f";
        case OracleKind::TauF: return "tau_f";
    }
    return "unknown";
}

OracleValue chi_f(const ScheduleMatrix& m, const RationalVector& lambda) {
    check_dims(m, lambda);
    LPProblem p;
    p.sense = Sense::Minimize;
    p.objective.assign(m.cols(), 1);
    p.constraints = schedule_block(m, 0, 0);
    p.relations.assign(m.rows(), Relation::GreaterEqual);
    p.rhs = lambda;
    p.bounds.assign(m.cols(), VarBound::NonNegative);
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("chi_f LP is always feasible and bounded");
    return OracleValue{OracleKind::ChiF, false, *r.value, std::move(r.primal), std::move(r.dual)};
}

OracleValue phi_f(const ScheduleMatrix& m, const RationalVector& lambda) {
    check_dims(m, lambda);
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(m.cols(), 1);
    p.constraints = schedule_block(m, 0, 0);
    p.relations.assign(m.rows(), Relation::LessEqual);
    p.rhs = lambda;
    p.bounds.assign(m.cols(), VarBound::NonNegative);
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("phi_f LP is always feasible and bounded");
    return OracleValue{OracleKind::PhiF, false, *r.value, std::move(r.primal), std::move(r.dual)};
}

OracleValue tau_f(const ScheduleMatrix& m, const RationalVector& lambda) {
    check_dims(m, lambda);
    const std::size_t k = m.cols();
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(k + 1, 0);
    p.objective[k] = 1;
    p.constraints = schedule_block(m, 1, 1);
    for (std::size_t i = 0; i < m.rows(); ++i) p.constraints(i, k) = 1;
    for (std::size_t j = 0; j < k; ++j) p.constraints(m.rows(), j) = 1;
    p.relations.assign(m.rows() + 1, Relation::Equal);
    p.rhs = lambda;
    p.rhs.emplace_back(1);
    p.bounds.assign(k + 1, VarBound::NonNegative);
    p.bounds[k] = VarBound::Free;
    LPResult r = solve_lp(p);
    OracleValue out{OracleKind::TauF, false, Rational(), {}, {}};
    if (r.status == LPStatus::Infeasible) {
        out.neg_infinity = true;
        return out;
    }
    if (r.status != LPStatus::Optimal) throw std::logic_error("tau_f LP cannot be unbounded");
    out.value = *r.value;
    out.weights = head(r.primal, k);
    out.dual = std::move(r.dual);
    return out;
}

OracleValue chi_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    check_dims(g, lambda);
    return chi_f(*cached_schedules(g, limits), lambda.values());
}

OracleValue phi_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    check_dims(g, lambda);
    return phi_f(*cached_schedules(g, limits), lambda.values());
}

OracleValue tau_f(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    check_dims(g, lambda);
    return tau_f(*cached_schedules(g, limits), lambda.values());
}

bool verify_oracle_witness(const ScheduleMatrix& m, const RationalVector& lambda, const OracleValue& v) {
    if (m.rows() != lambda.size()) return false;
    if (v.neg_infinity) return v.kind == OracleKind::TauF;
    if (v.weights.size() != m.cols()) return false;
    for (const auto& w : v.weights)
        if (w.sign() < 0) return false;
    const RationalVector served = mix(m, v.weights);
    switch (v.kind) {
        case OracleKind::ChiF:
            for (std::size_t i = 0; i < lambda.size(); ++i)
                if (served[i] < lambda[i]) return false;
            return sum(v.weights) == v.value;
        case OracleKind::PhiF:
            for (std::size_t i = 0; i < lambda.size(); ++i)
                if (served[i] > lambda[i]) return false;
            return sum(v.weights) == v.value;
        case OracleKind::TauF:
            if (sum(v.weights) != Rational(1)) return false;
            for (std::size_t i = 0; i < lambda.size(); ++i)
                if (served[i] + v.value != lambda[i]) return false;
            return true;
    }
    return false;
}

bool in_capacity_region(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    return chi_f(g, lambda, limits).value <= Rational(1);
}

InteriorMargin capacity_margin(const ScheduleMatrix& m, const RationalVector& lambda) {
    check_dims(m, lambda);
    const std::size_t k = m.cols();
    LPProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(k + 1, 0);
    p.objective[k] = 1;
    p.constraints = schedule_block(m, 1, 1);
    for (std::size_t i = 0; i < m.rows(); ++i) p.constraints(i, k) = -1;
    for (std::size_t j = 0; j < k; ++j) p.constraints(m.rows(), j) = 1;
    p.relations.assign(m.rows() + 1, Relation::GreaterEqual);
    p.relations[m.rows()] = Relation::LessEqual;
    p.rhs = lambda;
    p.rhs.emplace_back(1);
    p.bounds.assign(k + 1, VarBound::NonNegative);
    p.bounds[k] = VarBound::Free;
    LPResult r = solve_lp(p);
    if (r.status != LPStatus::Optimal) throw std::logic_error("interior-margin LP is always feasible and bounded");
    InteriorMargin out{*r.value, head(r.primal, k), {}};
    // Rows M alpha - t e >= lambda carry y <= 0 in a maximization; u = -y sums to 1.
    out.separator.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out.separator.push_back(-r.dual[i]);
    return out;
}

bool in_capacity_interior(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    check_dims(g, lambda);
    return capacity_margin(*cached_schedules(g, limits), lambda.values()).t.sign() > 0;
}

bool clique_constraints_hold(const InterferenceGraph& g, const RateVector& lambda, const Limits& limits) {
    check_dims(g, lambda);
    for (NodeSet q : enumerate_maximal_cliques(g, limits)) {
        Rational s;
        q.for_each([&](Node v) { s += lambda[v]; });
        if (s > Rational(1)) return false;
    }
    return true;
}

bool is_extreme_point(const InterferenceGraph& g, const RateVector& lambda) {
    check_dims(g, lambda);
    NodeSet support;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] == Rational(1))
            support.insert(i);
        else if (!lambda[i].is_zero())
            return false;
    }
    return is_independent(g, support);
}

}  // namespace lqflab
