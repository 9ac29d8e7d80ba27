#include "lqflab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include <gmpxx.h>

#include "lqflab/errors.hpp"
#include "parallel.hpp"

namespace lqflab {

const char* to_string(ArrivalKind k) { return k == ArrivalKind::Constant ? "constant" : "bernoulli"; }

const char* to_string(TieBreakKind k) { return k == TieBreakKind::Lexicographic ? "lex" : "random"; }

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::StableLooking: return "stable-looking";
        case StabilityVerdict::UnstableLooking: return "unstable-looking";
        case StabilityVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::optional<ArrivalKind> parse_arrival_kind(std::string_view name) {
    if (name == "constant") return ArrivalKind::Constant;
    if (name == "bernoulli") return ArrivalKind::Bernoulli;
    return std::nullopt;
}

std::optional<TieBreakKind> parse_tie_break(std::string_view name) {
    if (name == "lex") return TieBreakKind::Lexicographic;
    if (name == "random") return TieBreakKind::UniformRandom;
    return std::nullopt;
}

namespace {

enum StreamTag : std::uint32_t { kArrivalStream = 1, kTieStream = 2 };

std::mt19937_64 make_stream(std::uint64_t seed, StreamTag tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag)};
    return std::mt19937_64(seq);
}

/// Uniform on [0, bound) by rejection, bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

template <class T>
NodeSet select(const InterferenceGraph& g, std::span<const T> q, TieBreaker& tb) {
    NodeSet eligible;
    for (Node v = 0; v < q.size(); ++v)
        if (q[v] > T(0)) eligible.insert(v);
    NodeSet chosen;
    while (!eligible.empty()) {
        NodeSet top;
        const T* best = nullptr;
        eligible.for_each([&](Node v) {
            if (best == nullptr || q[v] > *best) {
                best = &q[v];
                top = NodeSet(std::uint64_t{1} << v);
            } else if (q[v] == *best) {
                top.insert(v);
            }
        });
        const Node v = tb.choose(top);
        chosen.insert(v);
        eligible = eligible - g.neighbors(v);
        eligible.erase(v);
    }
    return chosen;
}

std::int64_t to_int64(const mpz_class& z, const std::string& what) {
    if (!mpz_fits_slong_p(z.get_mpz_t()) || sizeof(long) < sizeof(std::int64_t))
        throw ResourceLimit(what + " does not fit 64-bit backlog arithmetic", 63);
    return z.get_si();
}

double slope(const std::vector<std::int64_t>& y, std::size_t from, double scale) {
    const std::size_t n = y.size() - from;
    if (n < 2) return 0.0;
    const double xbar = (static_cast<double>(n) - 1) / 2;
    double ybar = 0;
    for (std::size_t i = from; i < y.size(); ++i) ybar += static_cast<double>(y[i]) / scale;
    ybar /= static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - xbar;
        sxy += dx * (static_cast<double>(y[from + i]) / scale - ybar);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace

TieBreaker::TieBreaker(TieBreakKind kind, std::uint64_t seed)
    : kind_(kind), seed_(seed), rng_(make_stream(seed, kTieStream)) {}

TieBreaker TieBreaker::lexicographic() { return TieBreaker(TieBreakKind::Lexicographic, 0); }

TieBreaker TieBreaker::uniform_random(std::uint64_t seed) { return TieBreaker(TieBreakKind::UniformRandom, seed); }

Node TieBreaker::choose(NodeSet candidates) {
    if (candidates.empty()) throw InvalidArgument("tie-break among no candidates");
    const std::size_t count = candidates.size();
    if (kind_ == TieBreakKind::Lexicographic || count == 1)
        return static_cast<Node>(std::countr_zero(candidates.mask()));
    std::uint64_t m = candidates.mask();
    for (std::uint64_t skip = uniform_below(rng_, count); skip > 0; --skip) m &= m - 1;
    return static_cast<Node>(std::countr_zero(m));
}

NodeSet lqf_schedule(const InterferenceGraph& g, std::span<const Rational> backlog, TieBreaker& tb) {
    if (backlog.size() != g.node_count()) throw InvalidArgument("backlog size does not match the graph");
    return select<Rational>(g, backlog, tb);
}

NodeSet lqf_schedule(const InterferenceGraph& g, const QueueState& q, TieBreaker& tb) {
    return lqf_schedule(g, std::span<const Rational>(q.backlog), tb);
}

QueueState step(const InterferenceGraph& g, const QueueState& q, std::span<const Rational> arrivals, TieBreaker& tb) {
    if (q.backlog.size() != g.node_count() || arrivals.size() != g.node_count())
        throw InvalidArgument("backlog and arrivals must cover every node");
    QueueState next{q.backlog, q.slot + 1};
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
        if (arrivals[i].sign() < 0 || q.backlog[i].sign() < 0) throw InvalidArgument("negative backlog or arrival");
        next.backlog[i] += arrivals[i];
    }
    const NodeSet s = lqf_schedule(g, std::span<const Rational>(next.backlog), tb);
    s.for_each([&](Node v) {
        next.backlog[v] -= Rational(1);
        if (next.backlog[v].sign() < 0) next.backlog[v] = Rational(0);
    });
    return next;
}

StabilityVerdict classify(double drift, double peak, double first_quartile_peak) {
    if (drift > kUnstableSlope) return StabilityVerdict::UnstableLooking;
    if (std::abs(drift) <= kStableSlope && peak <= kPeakGrowthFactor * first_quartile_peak)
        return StabilityVerdict::StableLooking;
    return StabilityVerdict::Inconclusive;
}

SimTrace run(const InterferenceGraph& g, const RateVector& lambda, const SimOptions& options) {
    const std::size_t n = g.node_count();
    if (options.horizon == 0) throw InvalidArgument("horizon must be at least 1");
    if (lambda.index() != g.nodes()) throw InvalidArgument("rate vector must cover every node");
    RationalVector initial = options.initial_backlog.value_or(RationalVector(n));
    if (initial.size() != n) throw InvalidArgument("initial backlog must cover every node");
    for (const auto& x : initial)
        if (x.sign() < 0) throw InvalidArgument("initial backlog must be nonnegative");
    const bool bernoulli = options.arrivals == ArrivalKind::Bernoulli;
    if (bernoulli)
        for (const auto& p : lambda.values())
            if (p > Rational(1)) throw InvalidArgument("bernoulli rate " + p.str() + " exceeds 1");

    mpz_class scale = 1;
    for (const auto& x : initial) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());
    if (!bernoulli)
        for (const auto& x : lambda.values())
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());

    std::vector<std::int64_t> q(n), add(n);
    std::vector<std::uint64_t> p_num(n), p_den(n);
    mpz_class worst_start = 0, worst_add = bernoulli ? scale : mpz_class(0);
    for (std::size_t i = 0; i < n; ++i) {
        const mpz_class start = initial[i].numerator() * (scale / initial[i].denominator());
        q[i] = to_int64(start, "initial backlog");
        worst_start = std::max(worst_start, start);
        if (bernoulli) {
            const Rational& p = lambda[i];
            if (!mpz_fits_ulong_p(p.denominator().get_mpz_t()))
                throw ResourceLimit("bernoulli rate denominator too large", 64);
            p_num[i] = p.numerator().get_ui();
            p_den[i] = p.denominator().get_ui();
        } else {
            const mpz_class a = lambda[i].numerator() * (scale / lambda[i].denominator());
            add[i] = to_int64(a, "scaled arrival");
            worst_add = std::max(worst_add, a);
        }
    }
    const mpz_class worst_total = (worst_start + worst_add * mpz_class(std::to_string(options.horizon))) * (n + 1);
    to_int64(worst_total, "backlog bound over the horizon");
    const std::int64_t unit = scale.get_si();

    SimTrace trace;
    trace.scale = unit;
    trace.max_backlog.reserve(options.horizon);
    trace.total_backlog.reserve(options.horizon);
    trace.schedule_id.reserve(options.horizon);
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    std::mt19937_64 arrivals = make_stream(options.seed, kArrivalStream);
    TieBreaker tb = options.tie_break == TieBreakKind::Lexicographic ? TieBreaker::lexicographic()
                                                                     : TieBreaker::uniform_random(options.seed);

    for (std::uint64_t t = 0; t < options.horizon; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            if (bernoulli) {
                if (p_num[i] != 0 && uniform_below(arrivals, p_den[i]) < p_num[i]) q[i] += unit;
            } else {
                q[i] += add[i];
            }
        }
        const NodeSet s = select<std::int64_t>(g, q, tb);
        s.for_each([&](Node v) { q[v] = std::max<std::int64_t>(q[v] - unit, 0); });
        auto [it, fresh] = ids.try_emplace(s.mask(), static_cast<std::uint32_t>(trace.catalog.size()));
        if (fresh) trace.catalog.push_back(s);
        std::int64_t mx = 0, total = 0;
        for (std::int64_t x : q) {
            mx = std::max(mx, x);
            total += x;
        }
        trace.max_backlog.push_back(mx);
        trace.total_backlog.push_back(total);
        trace.schedule_id.push_back(it->second);
    }

    for (std::int64_t x : q) trace.final_backlog.push_back(Rational(x) / Rational(unit));
    const double dscale = static_cast<double>(unit);
    trace.drift = slope(trace.max_backlog, trace.size() / 2, dscale);
    const std::int64_t peak = *std::max_element(trace.max_backlog.begin(), trace.max_backlog.end());
    const std::size_t quarter = std::max<std::size_t>(1, trace.size() / 4);
    const std::int64_t early =
        *std::max_element(trace.max_backlog.begin(), trace.max_backlog.begin() + static_cast<std::ptrdiff_t>(quarter));
    trace.peak = Rational(peak) / Rational(unit);
    trace.verdict = classify(trace.drift, static_cast<double>(peak) / dscale, static_cast<double>(early) / dscale);
    return trace;
}

std::vector<SimTrace> run_many(const InterferenceGraph& g, const RateVector& lambda,
                               std::span<const SimOptions> options, unsigned jobs) {
    std::vector<SimTrace> out(options.size());
    detail::parallel_for(options.size(), jobs, [&](std::size_t i) { out[i] = run(g, lambda, options[i]); });
    return out;
}

}  // namespace lqflab
