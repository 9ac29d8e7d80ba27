#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "lqflab/graph.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/rational.hpp"

namespace lqflab {

enum class ArrivalKind { Constant, Bernoulli };
enum class TieBreakKind { Lexicographic, UniformRandom };
enum class StabilityVerdict { StableLooking, UnstableLooking, Inconclusive };

const char* to_string(ArrivalKind k);
const char* to_string(TieBreakKind k);
const char* to_string(StabilityVerdict v);
std::optional<ArrivalKind> parse_arrival_kind(std::string_view name);   // "constant", "bernoulli"
std::optional<TieBreakKind> parse_tie_break(std::string_view name);     // "lex", "random"

/// Picks among equally long queues. The random kind draws afresh for every
/// selection from an mt19937_64 stream derived from the seed.
class TieBreaker {
public:
    static TieBreaker lexicographic();
    static TieBreaker uniform_random(std::uint64_t seed);

    TieBreakKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    /// One member of a non-empty candidate set.
    Node choose(NodeSet candidates);

private:
    TieBreaker(TieBreakKind kind, std::uint64_t seed);

    TieBreakKind kind_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
};

struct QueueState {
    RationalVector backlog;
    std::uint64_t slot = 0;
};

/// Greedy LQF: repeatedly activate a longest eligible queue and drop it and
/// its neighbours. Empty queues are never eligible.
NodeSet lqf_schedule(const InterferenceGraph& g, std::span<const Rational> backlog, TieBreaker& tb);
NodeSet lqf_schedule(const InterferenceGraph& g, const QueueState& q, TieBreaker& tb);

/// One slot: arrivals join first, the schedule is chosen on q + a, and every
/// scheduled link serves one unit: q' = max(q + a - s, 0).
QueueState step(const InterferenceGraph& g, const QueueState& q, std::span<const Rational> arrivals, TieBreaker& tb);

struct SimOptions {
    ArrivalKind arrivals = ArrivalKind::Constant;
    TieBreakKind tie_break = TieBreakKind::Lexicographic;
    std::uint64_t horizon = 1000;
    std::uint64_t seed = 0;  // arrival stream; also seeds the random tie-breaker
    /// Backlog at slot 0; zero when absent.
    std::optional<RationalVector> initial_backlog;
};

/// Per-slot records. Backlogs are stored as integers over `scale`.
struct SimTrace {
    std::int64_t scale = 1;
    std::vector<std::int64_t> max_backlog;
    std::vector<std::int64_t> total_backlog;
    std::vector<std::uint32_t> schedule_id;
    /// Distinct schedules by first appearance; schedule_id indexes this.
    std::vector<NodeSet> catalog;
    RationalVector final_backlog;
    /// Least-squares slope of max backlog over the second half, per slot.
    double drift = 0.0;
    Rational peak;
    StabilityVerdict verdict = StabilityVerdict::Inconclusive;

    std::size_t size() const { return max_backlog.size(); }
    Rational max_backlog_at(std::size_t slot) const { return Rational(max_backlog[slot]) / Rational(scale); }
    Rational total_backlog_at(std::size_t slot) const { return Rational(total_backlog[slot]) / Rational(scale); }
};

/// Verdict thresholds on the second-half slope of the max backlog.
inline constexpr double kUnstableSlope = 1e-4;
inline constexpr double kStableSlope = 1e-6;
inline constexpr double kPeakGrowthFactor = 10.0;

/// Slope above kUnstableSlope: unstable-looking. Slope within kStableSlope
/// and overall peak at most kPeakGrowthFactor times the first-quartile
/// peak: stable-looking. Anything else is inconclusive.
StabilityVerdict classify(double drift, double peak, double first_quartile_peak);

/// Simulates `horizon` slots. Identical inputs give identical traces.
/// Throws InvalidArgument for horizon 0, a Bernoulli rate above 1 or a
/// malformed initial backlog, and ResourceLimit if the scaled backlog could
/// overflow 64 bits.
SimTrace run(const InterferenceGraph& g, const RateVector& lambda, const SimOptions& options);

/// Independent runs, spread over `jobs` threads; results keep input order.
std::vector<SimTrace> run_many(const InterferenceGraph& g, const RateVector& lambda,
                               std::span<const SimOptions> options, unsigned jobs);

}  // namespace lqflab
