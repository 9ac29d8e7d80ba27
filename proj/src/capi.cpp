#include "lqflab/lqflab.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "lqflab/errors.hpp"
#include "lqflab/io.hpp"
#include "lqflab/oracles.hpp"
#include "lqflab/pooling.hpp"
#include "lqflab/regions.hpp"
#include "lqflab/report.hpp"
#include "lqflab/sim.hpp"

struct lqf_context {
    lqflab::Limits limits;
    lqflab::JsonStyle style;
};

struct lqf_graph {
    lqflab::InterferenceGraph graph;
};

struct lqf_result {
    std::string text;
    std::string aux;
};

namespace {

using namespace lqflab;

thread_local std::string last_error;

lqf_status fail(lqf_status s, const std::string& message) {
    last_error = message;
    return s;
}

template <class F>
lqf_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const ParseError& e) {
        return fail(LQF_PARSE, e.what());
    } catch (const Json::exception& e) {
        return fail(LQF_PARSE, e.what());
    } catch (const ResourceLimit& e) {
        return fail(LQF_RESOURCE_LIMIT, e.what());
    } catch (const InvalidArgument& e) {
        return fail(LQF_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LQF_RESOURCE_LIMIT, "out of memory");
    } catch (const std::exception& e) {
        return fail(LQF_INTERNAL, e.what());
    } catch (...) {
        return fail(LQF_INTERNAL, "unknown error");
    }
}

#define LQF_REQUIRE(cond, what) \
    if (!(cond)) return fail(LQF_INVALID_ARGUMENT, what)

lqf_status emit(lqf_result** out, std::string text, std::string aux = {}) {
    *out = new lqf_result{std::move(text), std::move(aux)};
    return LQF_OK;
}

std::string rows(const std::vector<NodeSet>& sets, std::size_t n) {
    std::string out;
    for (NodeSet s : sets) {
        for (Node v = 0; v < n; ++v) {
            if (v) out += ' ';
            out += s.contains(v) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

NodeSet parse_subset(const std::string& text, std::size_t n) {
    NodeSet s;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        const std::string tok = text.substr(i, j - i);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("bad node label '" + tok + "' in subset");
        }
        if (used != tok.size() || v < 1 || v > n) throw ParseError("bad node label '" + tok + "' in subset");
        s.insert(v - 1);
        i = j + 1;
    }
    return s;
}

SimOptions sim_options(const lqf_sim_options& o, const InterferenceGraph& g) {
    SimOptions s;
    if (o.arrivals) {
        auto k = parse_arrival_kind(o.arrivals);
        if (!k) throw InvalidArgument(std::string("unknown arrival process '") + o.arrivals + "'");
        s.arrivals = *k;
    }
    if (o.tie_break) {
        auto k = parse_tie_break(o.tie_break);
        if (!k) throw InvalidArgument(std::string("unknown tie-breaker '") + o.tie_break + "'");
        s.tie_break = *k;
    }
    s.horizon = o.horizon;
    s.seed = o.seed;
    if (o.initial_backlog && *o.initial_backlog) s.initial_backlog = parse_rate_arg(o.initial_backlog, g, true).values();
    return s;
}

}  // namespace

extern "C" {

const char* lqf_version(void) { return lqflab::version(); }

const char* lqf_last_error(void) { return last_error.c_str(); }

const char* lqf_status_name(lqf_status status) {
    switch (status) {
        case LQF_OK: return "ok";
        case LQF_INVALID_ARGUMENT: return "invalid-argument";
        case LQF_PARSE: return "parse-error";
        case LQF_RESOURCE_LIMIT: return "resource-limit";
        case LQF_INTERNAL: return "internal-error";
    }
    return "unknown";
}

lqf_status lqf_context_create(lqf_context** out) {
    LQF_REQUIRE(out, "null output pointer");
    return guarded([&] {
        *out = new lqf_context{};
        return LQF_OK;
    });
}

void lqf_context_destroy(lqf_context* ctx) { delete ctx; }

lqf_status lqf_context_set_limit(lqf_context* ctx, lqf_limit which, uint64_t value) {
    LQF_REQUIRE(ctx, "null context");
    switch (which) {
        case LQF_LIMIT_MAX_NODES:
            LQF_REQUIRE(value >= 1 && value <= kMaxGraphNodes, "max nodes must be in 1..64");
            ctx->limits.max_nodes = value;
            return LQF_OK;
        case LQF_LIMIT_MAX_SUBSET_NODES:
            LQF_REQUIRE(value >= 1 && value <= 30, "max subset nodes must be in 1..30");
            ctx->limits.max_subset_nodes = value;
            return LQF_OK;
        case LQF_LIMIT_JOBS:
            LQF_REQUIRE(value >= 1 && value <= 1024, "jobs must be in 1..1024");
            ctx->limits.jobs = static_cast<unsigned>(value);
            return LQF_OK;
    }
    return fail(LQF_INVALID_ARGUMENT, "unknown limit");
}

lqf_status lqf_context_set_approx(lqf_context* ctx, int enabled) {
    LQF_REQUIRE(ctx, "null context");
    ctx->style.approx = enabled != 0;
    return LQF_OK;
}

lqf_status lqf_graph_parse(const lqf_context* ctx, const char* text, lqf_graph** out) {
    LQF_REQUIRE(ctx && text && out, "null argument");
    return guarded([&] {
        *out = new lqf_graph{parse_graph(text, ctx->limits)};
        return LQF_OK;
    });
}

lqf_status lqf_graph_load(const lqf_context* ctx, const char* path, lqf_graph** out) {
    LQF_REQUIRE(ctx && path && out, "null argument");
    return guarded([&] {
        *out = new lqf_graph{load_graph(path, ctx->limits)};
        return LQF_OK;
    });
}

void lqf_graph_destroy(lqf_graph* graph) { delete graph; }

size_t lqf_graph_node_count(const lqf_graph* graph) { return graph ? graph->graph.node_count() : 0; }

lqf_status lqf_mis(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && out, "null argument");
    return guarded([&] {
        const auto m = cached_schedules(graph->graph, ctx->limits);
        Json j;
        j["count"] = m->cols();
        j["schedules"] = schedules_json(*m);
        return emit(out, canonical_dump(j), rows(m->columns(), m->rows()));
    });
}

lqf_status lqf_cliques(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && out, "null argument");
    return guarded([&] {
        const auto cliques = enumerate_maximal_cliques(graph->graph, ctx->limits);
        Json j;
        j["count"] = cliques.size();
        Json a = Json::array();
        for (NodeSet q : cliques) a.push_back(nodes_json(q));
        j["cliques"] = std::move(a);
        return emit(out, canonical_dump(j), rows(cliques, graph->graph.node_count()));
    });
}

lqf_status lqf_oracle(const lqf_context* ctx, const lqf_graph* graph, lqf_oracle_kind kind, const char* rate,
                      lqf_result** out) {
    LQF_REQUIRE(ctx && graph && rate && out, "null argument");
    return guarded([&] {
        const InterferenceGraph& g = graph->graph;
        const RateVector lambda = parse_rate_arg(rate, g);
        OracleValue v;
        switch (kind) {
            case LQF_ORACLE_CHI: v = chi_f(g, lambda, ctx->limits); break;
            case LQF_ORACLE_PHI: v = phi_f(g, lambda, ctx->limits); break;
            case LQF_ORACLE_TAU: v = tau_f(g, lambda, ctx->limits); break;
            default: throw InvalidArgument("unknown oracle");
        }
        return emit(out, canonical_dump(oracle_json(v, ctx->style)));
    });
}

lqf_status lqf_sigma(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && out, "null argument");
    return guarded([&] {
        return emit(out, canonical_dump(sigma_json(sigma_summary(graph->graph, ctx->limits), ctx->style)));
    });
}

lqf_status lqf_rank(const lqf_context* ctx, const lqf_graph* graph, const char* subset, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && out, "null argument");
    return guarded([&] {
        const InterferenceGraph& g = graph->graph;
        if (subset && std::string(subset) == "all") {
            Json a = Json::array();
            for (NodeSet s : nonempty_subset_list(g, ctx->limits)) a.push_back(rank_json(rank_report(g, s, ctx->limits)));
            Json j;
            j["subsets"] = std::move(a);
            return emit(out, canonical_dump(j));
        }
        const NodeSet s = subset ? parse_subset(subset, g.node_count()) : g.nodes();
        return emit(out, canonical_dump(rank_json(rank_report(g, s, ctx->limits))));
    });
}

lqf_status lqf_member(const lqf_context* ctx, const lqf_graph* graph, const char* region, const char* rate,
                      lqf_result** out) {
    LQF_REQUIRE(ctx && graph && region && rate && out, "null argument");
    return guarded([&] {
        const RegionAnalyzer analyzer(graph->graph, ctx->limits);
        const RateVector lambda = parse_rate_arg(rate, graph->graph);
        if (std::string(region) == "all") {
            Json j = Json::object();
            for (const RegionVerdict& v : analyzer.report(lambda)) j[to_string(v.region)] = verdict_json(v, ctx->style);
            return emit(out, canonical_dump(j));
        }
        const auto r = parse_region(region);
        if (!r) throw InvalidArgument(std::string("unknown region '") + region + "'");
        return emit(out, canonical_dump(verdict_json(analyzer.decide(*r, lambda), ctx->style)));
    });
}

lqf_status lqf_report(const lqf_context* ctx, const lqf_graph* graph, const char* rate, const lqf_sim_options* sims,
                      size_t sim_count, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && rate && out, "null argument");
    LQF_REQUIRE(sims || sim_count == 0, "null simulation options");
    return guarded([&] {
        ReportRequest request{graph->graph, parse_rate_arg(rate, graph->graph), ctx->limits, ctx->style, {}};
        for (size_t i = 0; i < sim_count; ++i) request.simulations.push_back(sim_options(sims[i], graph->graph));
        return emit(out, canonical_dump(analysis_report(request)));
    });
}

lqf_status lqf_simulate(const lqf_context* ctx, const lqf_graph* graph, const char* rate,
                        const lqf_sim_options* options, lqf_result** out) {
    LQF_REQUIRE(ctx && graph && rate && options && out, "null argument");
    return guarded([&] {
        const RateVector lambda = parse_rate_arg(rate, graph->graph, true);
        const SimOptions opts = sim_options(*options, graph->graph);
        const SimTrace trace = run(graph->graph, lambda, opts);
        return emit(out, canonical_dump(simulation_json(opts, trace, ctx->style)), trace_csv(trace));
    });
}

lqf_status lqf_verify_witness(const lqf_context* ctx, const lqf_graph* graph, const char* rate, const char* verdicts,
                              int* ok) {
    LQF_REQUIRE(ctx && graph && rate && verdicts && ok, "null argument");
    return guarded([&] {
        const InterferenceGraph& g = graph->graph;
        const RegionAnalyzer analyzer(g, ctx->limits);
        const RateVector lambda = parse_rate_arg(rate, g);
        Json j = Json::parse(verdicts);
        if (j.is_object() && j.contains("regions")) j = j["regions"];
        std::vector<RegionVerdict> list;
        if (j.is_object() && j.contains("region")) {
            list.push_back(verdict_from_json(j, g.node_count()));
        } else if (j.is_object() || j.is_array()) {
            for (const auto& item : j) list.push_back(verdict_from_json(item, g.node_count()));
        } else {
            throw ParseError("expected a verdict, a map of verdicts or a report");
        }
        if (list.empty()) throw ParseError("no verdicts to verify");
        bool all = true;
        for (const auto& v : list) all = all && analyzer.verify(lambda, v);
        *ok = all ? 1 : 0;
        return LQF_OK;
    });
}

const char* lqf_result_text(const lqf_result* result) { return result ? result->text.c_str() : ""; }

const char* lqf_result_aux(const lqf_result* result) { return result ? result->aux.c_str() : ""; }

void lqf_result_destroy(lqf_result* result) { delete result; }

}  // extern "C"
