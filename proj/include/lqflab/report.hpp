#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqflab/graph.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/pooling.hpp"
#include "lqflab/regions.hpp"
#include "lqflab/sim.hpp"

namespace lqflab {

using Json = nlohmann::json;

/// JSON rendering. Rationals are "p/q" strings, node labels are 1-based.
/// With `approx`, every rational field `k` gains a sibling `k_approx` holding
/// its decimal value.
struct JsonStyle {
    bool approx = false;
};

Json nodes_json(NodeSet s);
Json rationals_json(const RationalVector& v);
Json schedules_json(const ScheduleMatrix& m);
Json oracle_json(const OracleValue& v, const JsonStyle& style = {});
Json sigma_json(const SigmaSummary& s, const JsonStyle& style = {});
Json rank_json(const RankReport& r);
Json verdict_json(const RegionVerdict& v, const JsonStyle& style = {});
Json simulation_json(const SimOptions& options, const SimTrace& trace, const JsonStyle& style = {});

/// Inverse of verdict_json (decimal annotations are ignored). Throws ParseError.
RegionVerdict verdict_from_json(const Json& j, std::size_t node_count);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

/// "sha256:<hex>" of the canonical graph text.
std::string graph_digest(const InterferenceGraph& g);

/// `slot,max_backlog,total_backlog,schedule_id` rows, slots from 1.
std::string trace_csv(const SimTrace& trace);

struct ReportRequest {
    InterferenceGraph graph;
    RateVector lambda;
    Limits limits;
    JsonStyle style;
    std::vector<SimOptions> simulations;
};

/// Graph digest, schedule count, pooling summary, all region verdicts,
/// optional simulation summaries, tool version and configuration echo.
Json analysis_report(const ReportRequest& request);

const char* version();

}  // namespace lqflab
