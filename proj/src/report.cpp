#include "lqflab/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>

#include "lqflab/errors.hpp"
#include "lqflab/io.hpp"

#ifndef LQFLAB_VERSION
#define LQFLAB_VERSION "0.0.0"
#endif

namespace lqflab {

const char* version() { return LQFLAB_VERSION; }

namespace {

void put(Json& obj, const std::string& key, const Rational& r, const JsonStyle& style) {
    obj[key] = r.str();
    if (style.approx) obj[key + "_approx"] = r.to_double();
}

void put(Json& obj, const std::string& key, const RationalVector& v, const JsonStyle& style) {
    obj[key] = rationals_json(v);
    if (style.approx) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(x.to_double());
        obj[key + "_approx"] = std::move(a);
    }
}

Rational rational_at(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("missing rational '") + key + "'");
    try {
        return Rational::parse(j[key].get<std::string>());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

RationalVector rationals_at(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
    RationalVector out;
    for (const auto& x : j[key]) {
        if (!x.is_string()) throw ParseError(std::string("field '") + key + "' must hold rational strings");
        try {
            out.push_back(Rational::parse(x.get<std::string>()));
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string("field '") + key + "': " + e.what());
        }
    }
    return out;
}

NodeSet nodes_at(const Json& j, const char* key, std::size_t node_count) {
    if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing node list '") + key + "'");
    NodeSet s;
    for (const auto& x : j[key]) {
        if (!x.is_number_integer()) throw ParseError("node labels must be integers");
        const auto v = x.get<long long>();
        if (v < 1 || static_cast<std::size_t>(v) > node_count)
            throw ParseError("node " + std::to_string(v) + " out of range");
        s.insert(static_cast<Node>(v - 1));
    }
    return s;
}

struct WitnessKeys {
    const char* vector;
    const char* weights;  // nullptr when the certificate has no mixing weights
    const char* scalar;
};

WitnessKeys witness_keys(Region r) {
    switch (r) {
        case Region::Lambda:
        case Region::SigmaLambda: return {"y", nullptr, "load"};
        case Region::LambdaInterior: return {"u", nullptr, "margin"};
        case Region::Omega: return {"nu", "beta", "slack"};
        case Region::DeltaC:
        case Region::DeltaR: return {"nu", "beta", "d"};
    }
    throw std::logic_error("unknown region");
}

}  // namespace

Json nodes_json(NodeSet s) {
    Json a = Json::array();
    s.for_each([&](Node v) { a.push_back(v + 1); });
    return a;
}

Json rationals_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Json schedules_json(const ScheduleMatrix& m) {
    Json a = Json::array();
    for (NodeSet s : m.columns()) a.push_back(nodes_json(s));
    return a;
}

Json oracle_json(const OracleValue& v, const JsonStyle& style) {
    Json j;
    j["oracle"] = to_string(v.kind);
    if (v.neg_infinity) {
        j["value"] = "-inf";
        return j;
    }
    put(j, "value", v.value, style);
    put(j, "weights", v.weights, style);
    put(j, "dual", v.dual, style);
    return j;
}

Json sigma_json(const SigmaSummary& s, const JsonStyle& style) {
    Json j;
    Json per_link = Json::object();
    Json sets = Json::object();
    for (std::size_t l = 0; l < s.per_link.size(); ++l) {
        const std::string key = std::to_string(l + 1);
        put(per_link, key, s.per_link[l].value, style);
        sets[key] = nodes_json(s.per_link[l].minimizing_set);
    }
    j["per_link"] = std::move(per_link);
    j["minimizing_sets"] = std::move(sets);
    put(j, "overall", s.overall.value, style);
    Json w;
    w["set"] = nodes_json(s.overall.minimizing_set);
    put(w, "mu", s.overall.mu, style);
    put(w, "nu", s.overall.nu, style);
    put(w, "mu_weights", s.overall.mu_weights, style);
    put(w, "nu_weights", s.overall.nu_weights, style);
    j["overall_witness"] = std::move(w);
    return j;
}

Json rank_json(const RankReport& r) {
    Json j;
    j["set"] = nodes_json(r.subject);
    j["rank"] = r.rank;
    j["size"] = r.subject.size();
    j["high_rank"] = r.high_rank;
    return j;
}

Json verdict_json(const RegionVerdict& v, const JsonStyle& style) {
    Json j;
    j["region"] = to_string(v.region);
    j["member"] = v.member;
    if (v.value) put(j, "value", *v.value, style);
    if (v.witness_set) {
        const WitnessKeys keys = witness_keys(v.region);
        Json w;
        w["set"] = nodes_json(*v.witness_set);
        put(w, keys.vector, v.witness_vector, style);
        if (keys.weights) put(w, keys.weights, v.witness_weights, style);
        if (v.witness_scalar) put(w, keys.scalar, *v.witness_scalar, style);
        j["witness"] = std::move(w);
    }
    return j;
}

RegionVerdict verdict_from_json(const Json& j, std::size_t node_count) {
    if (!j.is_object()) throw ParseError("verdict must be a JSON object");
    if (!j.contains("region") || !j["region"].is_string()) throw ParseError("missing 'region'");
    const auto region = parse_region(j["region"].get<std::string>());
    if (!region) throw ParseError("unknown region '" + j["region"].get<std::string>() + "'");
    if (!j.contains("member") || !j["member"].is_boolean()) throw ParseError("missing boolean 'member'");
    RegionVerdict v;
    v.region = *region;
    v.member = j["member"].get<bool>();
    if (j.contains("value")) v.value = rational_at(j, "value");
    if (j.contains("witness")) {
        const Json& w = j["witness"];
        if (!w.is_object()) throw ParseError("'witness' must be an object");
        const WitnessKeys keys = witness_keys(v.region);
        v.witness_set = nodes_at(w, "set", node_count);
        v.witness_vector = rationals_at(w, keys.vector);
        if (keys.weights) v.witness_weights = rationals_at(w, keys.weights);
        if (w.contains(keys.scalar)) v.witness_scalar = rational_at(w, keys.scalar);
    }
    return v;
}

Json simulation_json(const SimOptions& options, const SimTrace& trace, const JsonStyle& style) {
    Json j;
    j["arrivals"] = to_string(options.arrivals);
    j["tie_break"] = to_string(options.tie_break);
    j["horizon"] = options.horizon;
    j["seed"] = options.seed;
    if (options.initial_backlog) put(j, "initial_backlog", *options.initial_backlog, style);
    j["drift"] = trace.drift;
    put(j, "peak", trace.peak, style);
    put(j, "final_backlog", trace.final_backlog, style);
    j["verdict"] = to_string(trace.verdict);
    Json catalog = Json::array();
    for (NodeSet s : trace.catalog) catalog.push_back(nodes_json(s));
    j["schedule_catalog"] = std::move(catalog);
    return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string graph_digest(const InterferenceGraph& g) {
    const std::string text = format_graph(g);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 digest failed");
    std::string out = "sha256:";
    char hex[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(hex, sizeof hex, "%02x", md[i]);
        out += hex;
    }
    return out;
}

std::string trace_csv(const SimTrace& trace) {
    std::string out = "slot,max_backlog,total_backlog,schedule_id\n";
    for (std::size_t t = 0; t < trace.size(); ++t) {
        out += std::to_string(t + 1);
        out += ',';
        out += trace.max_backlog_at(t).str();
        out += ',';
        out += trace.total_backlog_at(t).str();
        out += ',';
        out += std::to_string(trace.schedule_id[t]);
        out += '\n';
    }
    return out;
}

Json analysis_report(const ReportRequest& request) {
    const InterferenceGraph& g = request.graph;
    const RegionAnalyzer analyzer(g, request.limits);
    Json j;
    j["tool"] = {{"name", "lqflab"}, {"version", version()}};
    j["config"] = {{"max_nodes", request.limits.max_nodes},
                   {"max_subset_nodes", request.limits.max_subset_nodes},
                   {"jobs", request.limits.jobs},
                   {"approx", request.style.approx}};
    j["graph"] = {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"digest", graph_digest(g)}};
    put(j, "rate", request.lambda.values(), request.style);
    j["schedule_count"] = cached_schedules(g, request.limits)->cols();
    j["sigma"] = sigma_json(analyzer.sigma(), request.style);
    Json regions = Json::object();
    for (const RegionVerdict& v : analyzer.report(request.lambda))
        regions[to_string(v.region)] = verdict_json(v, request.style);
    j["regions"] = std::move(regions);
    if (!request.simulations.empty()) {
        const auto traces = run_many(g, request.lambda, request.simulations, request.limits.jobs);
        Json sims = Json::array();
        for (std::size_t i = 0; i < traces.size(); ++i)
            sims.push_back(simulation_json(request.simulations[i], traces[i], request.style));
        j["simulations"] = std::move(sims);
    }
    return j;
}

}  // namespace lqflab
