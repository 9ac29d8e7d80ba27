#include <doctest.h>

#include <algorithm>
#include <map>

#include "lqflab/errors.hpp"
#include "lqflab/matrix.hpp"
#include "lqflab/regions.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

/// Basis of {g : A g = 0} by reduced row echelon form.
std::vector<RationalVector> null_space(std::vector<RationalVector> a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Rational inv = R(1) / a[row][c];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c].is_zero()) continue;
            const Rational f = a[r][c];
            for (std::size_t j = 0; j < cols; ++j) a[r][j] -= f * a[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        RationalVector g(cols);
        g[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) g[pivots[i]] = -a[i][free];
        basis.push_back(std::move(g));
    }
    return basis;
}

/// Directions on V orthogonal to every schedule of G_S and to e, zero off S.
std::vector<RationalVector> separation_directions(const InterferenceGraph& g, NodeSet s) {
    const auto m = cached_schedules(g, s);
    std::vector<RationalVector> rows;
    for (NodeSet col : m->columns()) {
        RationalVector r(s.size());
        col.for_each([&](Node v) { r[v] = 1; });
        rows.push_back(std::move(r));
    }
    rows.emplace_back(s.size(), R(1));
    std::vector<RationalVector> out;
    for (const auto& local : null_space(rows, s.size())) {
        RationalVector full(g.node_count());
        Rational top;
        const auto members = s.to_vector();
        for (std::size_t i = 0; i < members.size(); ++i) {
            full[members[i]] = local[i];
            if (abs(local[i]) > top) top = abs(local[i]);
        }
        for (auto& x : full) x /= top;
        out.push_back(std::move(full));
    }
    return out;
}

RateVector shifted(const RateVector& l, const Rational& eps) {
    RationalVector v = l.values();
    for (auto& x : v) x += eps;
    return RateVector(l.index(), std::move(v));
}

}  // namespace

TEST_CASE("strict domination examples") {
    const InterferenceGraph c6 = cycle_graph(6);
    const SetTest t = in_pi(c6, c6.nodes(), RateVector::over(c6, skewed_rates(R(1, 24))));
    CHECK(t.member);
    CHECK(*t.value > R(0));
    CHECK_FALSE(in_pi(c6, c6.nodes(), rates(c6, "1,0,1,0,1,0")).member);
    const InterferenceGraph k2 = complete_graph(2);
    CHECK(in_pi(k2, NodeSet{0}, rates(k2, "2,0")).member);
    CHECK_FALSE(in_pi(k2, NodeSet{}, rates(k2, "2,0")).member);
    CHECK_THROWS_AS(in_pi(k2, NodeSet{2}, rates(k2, "2,0")), InvalidArgument);
}

TEST_CASE("omega examples") {
    const InterferenceGraph c6 = cycle_graph(6);
    CHECK(in_omega(c6, rates(c6, "7/10,1/10,7/10,1/10,7/10,1/10")).member);
    const RegionVerdict e1 = in_omega(c6, RateVector::over(c6, skewed_rates(R(1, 24))));
    CHECK_FALSE(e1.member);
    REQUIRE(e1.witness_set.has_value());
    CHECK(*e1.witness_set == c6.nodes());
    CHECK(verify_witness(c6, RateVector::over(c6, skewed_rates(R(1, 24))), e1));
    CHECK(in_omega(c6, rates(c6, "1,0,1,0,1,0")).member);
}

TEST_CASE("uniform domination examples") {
    const InterferenceGraph k2 = complete_graph(2);
    const SetTest a = in_gamma(k2, k2.nodes(), rates(k2, "1,0"));
    CHECK(a.member);
    CHECK(*a.value == R(0));
    CHECK(a.nu == RationalVector{R(1), R(0)});
    const SetTest b = in_gamma(k2, k2.nodes(), rates(k2, "1/4,1/4"));
    CHECK_FALSE(b.member);
    CHECK(*b.value == R(-1, 4));
    const InterferenceGraph p3 = path_graph(3);
    const SetTest c = in_gamma(p3, p3.nodes(), rates(p3, "1,0,0"));
    CHECK_FALSE(c.member);
    CHECK_FALSE(c.value.has_value());
    CHECK_FALSE(in_gamma(p3, NodeSet{}, rates(p3, "1,0,0")).member);
}

TEST_CASE("rank report examples") {
    const InterferenceGraph c6 = cycle_graph(6);
    for (Node v = 0; v < 6; ++v) {
        const RankReport r = rank_report(c6, NodeSet{v});
        CHECK(r.rank == 1);
        CHECK(r.high_rank);
    }
    const RankReport k2 = rank_report(complete_graph(2), NodeSet{0, 1});
    CHECK(k2.rank == 2);
    CHECK(k2.high_rank);
    const RankReport v = rank_report(c6, c6.nodes());
    CHECK(v.rank == 4);
    CHECK_FALSE(v.high_rank);
    CHECK_THROWS_AS(rank_report(c6, NodeSet{}), InvalidArgument);
}

TEST_CASE("delta regions on the six-cycle pair") {
    const InterferenceGraph c6 = cycle_graph(6);
    const RateVector l1 = RateVector::over(c6, lambda1()), l2 = RateVector::over(c6, lambda2());
    CHECK(in_delta_c(c6, l2).member);
    const RegionVerdict v = in_delta_c(c6, l1);
    CHECK_FALSE(v.member);
    REQUIRE(v.witness_set.has_value());
    CHECK(*v.witness_set == c6.nodes());
    CHECK(v.witness_scalar->sign() >= 0);
    CHECK(verify_witness(c6, l1, v));
    CHECK(in_delta_r(c6, l1).member);
    CHECK(in_delta_r(c6, l2).member);
    const InterferenceGraph k3 = complete_graph(3);
    CHECK(in_delta_c(k3, rates(k3, "1/4,0,0")).member);
}

TEST_CASE("delta_r reports the first violating high-rank set") {
    const InterferenceGraph k2 = complete_graph(2);
    const RateVector l = rates(k2, "1,0");
    const RegionVerdict v = in_delta_r(k2, l);
    CHECK_FALSE(v.member);
    // Both {1} and {1,2} are violated; size-then-lex order reports {1}.
    CHECK(*v.witness_set == NodeSet{0});
    CHECK(in_gamma(k2, NodeSet{0, 1}, l).member);
    CHECK(rank_report(k2, NodeSet{0, 1}).high_rank);
    CHECK(verify_witness(k2, l, v));
}

TEST_CASE("region report examples") {
    const InterferenceGraph c6 = cycle_graph(6);
    auto verdicts = [](const std::vector<RegionVerdict>& list) {
        std::map<Region, bool> out;
        for (const auto& v : list) out[v.region] = v.member;
        return out;
    };
    auto e1 = verdicts(region_report(c6, RateVector::over(c6, skewed_rates(R(1, 24)))));
    CHECK(e1[Region::LambdaInterior]);
    CHECK_FALSE(e1[Region::Omega]);
    CHECK(e1[Region::DeltaC]);
    auto ind = verdicts(region_report(c6, rates(c6, "1,0,1,0,1,0")));
    CHECK(ind[Region::Lambda]);
    CHECK(ind[Region::Omega]);
    CHECK_FALSE(ind[Region::SigmaLambda]);
    CHECK_FALSE(ind[Region::LambdaInterior]);
    for (const auto& v : region_report(c6, RateVector::zeros(c6))) CHECK(v.member);
}

TEST_CASE("witnesses re-verify and tampering is caught") {
    const InterferenceGraph c6 = cycle_graph(6);
    const RegionAnalyzer a(c6);
    const RateVector l = rates(c6, "1,0,1,0,1,0");
    for (Region r : kAllRegions) {
        const RegionVerdict v = a.decide(r, l);
        CHECK(a.verify(l, v));
        if (v.member) continue;
        RegionVerdict bad = v;
        if (!bad.witness_vector.empty()) bad.witness_vector[0] += R(1, 7);
        bad.witness_scalar = *bad.witness_scalar + R(1, 3);
        CHECK_FALSE(a.verify(l, bad));
        RegionVerdict flipped = v;
        flipped.member = true;
        CHECK_FALSE(a.verify(l, flipped));
    }
}

TEST_CASE("region properties on sampled vectors") {
    Rng rng(101);
    const std::vector<InterferenceGraph> graphs{complete_graph(2), complete_graph(3), path_graph(5), cycle_graph(5),
                                                cycle_graph(6), pair_bipartite_graph(3)};
    for (const InterferenceGraph& g : graphs) {
        const RegionAnalyzer a(g);
        const auto m = cached_schedules(g);
        std::vector<NodeSet> pooling_sets;
        for (NodeSet s : a.subsets())
            if (sigma_set(g, s).value == R(1)) pooling_sets.push_back(s);
        for (int i = 0; i < 120; ++i) {
            const RateVector l = sample_rates(g, *m, rng);
            std::map<Region, bool> in;
            for (const auto& v : a.report(l)) {
                in[v.region] = v.member;
                CHECK(a.verify(l, v));
            }
            if (in[Region::SigmaLambda]) CHECK(in[Region::Omega]);
            if (in[Region::DeltaC]) CHECK(in[Region::DeltaR]);
            if (in[Region::DeltaR]) CHECK(in[Region::Lambda]);
            if (in[Region::DeltaC]) CHECK(in[Region::Lambda]);
            if (in[Region::Omega]) CHECK(in[Region::Lambda]);
            if (in[Region::LambdaInterior]) CHECK(in[Region::Lambda]);

            // Two Omega deciders: the sweep cross-checks internally, this is the Pi form.
            bool dominated = false;
            for (NodeSet s : a.subsets()) dominated = dominated || in_pi(g, s, l).member;
            CHECK(in[Region::Omega] == !dominated);

            // Interior of Omega lies in Delta_C.
            const Rational eps = R(1, 1 + static_cast<long>(rng.below(200)));
            if (in[Region::Omega] && a.decide(Region::Omega, shifted(l, eps)).member) CHECK(in[Region::DeltaC]);

            // Delta_C is open.
            if (in[Region::DeltaC]) {
                bool found = false;
                for (int k = 1; k <= 20 && !found; ++k)
                    found = a.decide(Region::DeltaC, shifted(l, R(1, 1L << k))).member;
                CHECK(found);
            }

            // Gamma_S misses the capacity interior on local-pooling sets.
            if (in[Region::LambdaInterior])
                for (NodeSet s : pooling_sets) CHECK_FALSE(in_gamma(g, s, l).member);
        }
    }
}

TEST_CASE("independent-set vectors lie in omega") {
    for (const InterferenceGraph& g : {cycle_graph(6), cycle_graph(5), path_graph(5), complete_graph(3)}) {
        const RegionAnalyzer a(g);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.node_count()); ++mask) {
            const NodeSet s(mask);
            if (!is_independent(g, s)) continue;
            RationalVector v(g.node_count());
            s.for_each([&](Node x) { v[x] = 1; });
            const RateVector l = RateVector::over(g, v);
            CHECK(is_extreme_point(g, l));
            CHECK(a.decide(Region::Omega, l).member);
        }
    }
}

TEST_CASE("six-cycle: high-rank sets pool locally and delta_r equals the capacity interior") {
    const InterferenceGraph c6 = cycle_graph(6);
    const RegionAnalyzer a(c6);
    for (NodeSet s : a.high_rank_subsets()) CHECK(sigma_set(c6, s).value == R(1));
    CHECK(std::find(a.high_rank_subsets().begin(), a.high_rank_subsets().end(), c6.nodes()) ==
          a.high_rank_subsets().end());
    Rng rng(303);
    const auto m = cached_schedules(c6);
    for (int i = 0; i < 200; ++i) {
        const RateVector l = sample_rates(c6, *m, rng);
        CHECK(a.decide(Region::DeltaR, l).member == a.decide(Region::LambdaInterior, l).member);
    }
}

TEST_CASE("points of delta_r outside delta_c are limits of delta_c") {
    const InterferenceGraph c6 = cycle_graph(6);
    const RegionAnalyzer a(c6);
    Rng rng(404);
    std::vector<RateVector> candidates{RateVector::over(c6, lambda1())};
    const auto m = cached_schedules(c6);
    for (int i = 0; i < 300; ++i) candidates.push_back(sample_rates(c6, *m, rng));
    for (int i = 0; i < 30; ++i) candidates.push_back(uniform(c6, R(1, 3) + rng.rational(R(1, 6), 60)));
    const Rational radius = R(1, 1024);
    int tested = 0;
    for (const RateVector& l : candidates) {
        if (!a.decide(Region::DeltaR, l).member || a.decide(Region::DeltaC, l).member) continue;
        ++tested;
        std::vector<RationalVector> dirs;
        for (NodeSet s : a.subsets())
            if (in_gamma(c6, s, l).member) {
                CHECK_FALSE(rank_report(c6, s).high_rank);
                for (auto& d : separation_directions(c6, s)) dirs.push_back(std::move(d));
            }
        REQUIRE_FALSE(dirs.empty());
        bool found = false;
        for (int attempt = 0; attempt < 200 && !found; ++attempt) {
            RationalVector v = l.values();
            const Rational step = radius / R(2 + static_cast<long>(rng.below(30)));
            for (const auto& d : dirs) {
                const Rational c = R(static_cast<long>(rng.below(5)) - 2, 2) / R(static_cast<long>(dirs.size()));
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += step * c * d[i];
            }
            bool nonneg = true;
            Rational dist;
            for (std::size_t i = 0; i < v.size(); ++i) {
                nonneg = nonneg && v[i].sign() >= 0;
                if (abs(v[i] - l[i]) > dist) dist = abs(v[i] - l[i]);
            }
            if (!nonneg || dist >= radius || dist.is_zero()) continue;
            found = a.decide(Region::DeltaC, RateVector::over(c6, v)).member;
        }
        CHECK(found);
    }
    CHECK(tested > 0);
}

TEST_CASE("parallel sweeps give the same verdicts") {
    Limits par;
    par.jobs = 3;
    const InterferenceGraph c6 = cycle_graph(6);
    const RegionAnalyzer serial(c6), threaded(c6, par);
    Rng rng(505);
    const auto m = cached_schedules(c6);
    for (int i = 0; i < 40; ++i) {
        const RateVector l = sample_rates(c6, *m, rng);
        for (Region r : kAllRegions) {
            const RegionVerdict x = serial.decide(r, l), y = threaded.decide(r, l);
            CHECK(x.member == y.member);
            CHECK(x.witness_set == y.witness_set);
            CHECK(x.witness_vector == y.witness_vector);
        }
    }
}
