// lqflab command-line front end over the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lqflab/lqflab.h"

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kInput = 3, kResource = 4 };

struct CliError {
    lqf_status status;
    std::string message;
};

int exit_code(lqf_status s) {
    switch (s) {
        case LQF_OK: return kOk;
        case LQF_INVALID_ARGUMENT:
        case LQF_PARSE: return kInput;
        case LQF_RESOURCE_LIMIT: return kResource;
        default: return kFailed;
    }
}

void check(lqf_status s) {
    if (s != LQF_OK) throw CliError{s, lqf_last_error()};
}

struct ContextDeleter {
    void operator()(lqf_context* c) const { lqf_context_destroy(c); }
};
struct GraphDeleter {
    void operator()(lqf_graph* g) const { lqf_graph_destroy(g); }
};
struct ResultDeleter {
    void operator()(lqf_result* r) const { lqf_result_destroy(r); }
};
using Context = std::unique_ptr<lqf_context, ContextDeleter>;
using Graph = std::unique_ptr<lqf_graph, GraphDeleter>;
using Result = std::unique_ptr<lqf_result, ResultDeleter>;

struct Settings {
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::size_t max_nodes = 24;
    std::size_t max_subset_nodes = 16;
    bool approx = false;
    std::string graph;
    std::string rate;
};

Context make_context(const Settings& s) {
    lqf_context* raw = nullptr;
    check(lqf_context_create(&raw));
    Context ctx(raw);
    check(lqf_context_set_limit(ctx.get(), LQF_LIMIT_MAX_NODES, s.max_nodes));
    check(lqf_context_set_limit(ctx.get(), LQF_LIMIT_MAX_SUBSET_NODES, s.max_subset_nodes));
    check(lqf_context_set_limit(ctx.get(), LQF_LIMIT_JOBS, s.jobs));
    check(lqf_context_set_approx(ctx.get(), s.approx ? 1 : 0));
    return ctx;
}

Graph load(const Context& ctx, const std::string& path) {
    lqf_graph* raw = nullptr;
    check(lqf_graph_load(ctx.get(), path.c_str(), &raw));
    return Graph(raw);
}

Result take(lqf_status s, lqf_result*& raw) {
    Result r(raw);
    check(s);
    return r;
}

std::string slurp(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{LQF_PARSE, "cannot open '" + path + "'"};
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{LQF_INVALID_ARGUMENT, "cannot write '" + path + "'"};
    out << text;
}

struct SimFlags {
    std::string arrivals = "constant";
    std::string tie_break = "lex";
    std::uint64_t horizon = 10000;
    std::vector<std::uint64_t> seeds;
    std::string initial_backlog;

    std::vector<lqf_sim_options> options() const {
        std::vector<lqf_sim_options> out;
        const std::vector<std::uint64_t> s = seeds.empty() ? std::vector<std::uint64_t>{0} : seeds;
        for (std::uint64_t seed : s)
            out.push_back({arrivals.c_str(), tie_break.c_str(), horizon, seed,
                           initial_backlog.empty() ? nullptr : initial_backlog.c_str()});
        return out;
    }
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
    cmd->add_option("--arrivals", f.arrivals, "constant or bernoulli")->check(CLI::IsMember({"constant", "bernoulli"}));
    cmd->add_option("--tie-break", f.tie_break, "lex or random")->check(CLI::IsMember({"lex", "random"}));
    cmd->add_option("--horizon", f.horizon, "slots to simulate")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seeds, "seed; repeat for several runs");
    cmd->add_option("--initial-backlog", f.initial_backlog, "comma-separated starting backlog");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of LQF scheduling on wireless interference graphs"};
    app.set_version_flag("--version", std::string(lqf_version()));
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--jobs", s.jobs, "worker threads (default: available cores)")
        ->envname("LQFLAB_JOBS")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--max-nodes", s.max_nodes, "node cap for schedule enumeration")
        ->envname("LQFLAB_MAX_NODES")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    app.add_option("--max-subset-nodes", s.max_subset_nodes, "node cap for sweeps over all subsets")
        ->envname("LQFLAB_MAX_SUBSET_NODES")
        ->check(CLI::Range(std::size_t{1}, std::size_t{30}));
    app.add_flag("--approx", s.approx, "add decimal annotations next to exact values");

    auto graph_opt = [&](CLI::App* cmd) { cmd->add_option("--graph,-g", s.graph, "graph file")->required(); };
    auto rate_opt = [&](CLI::App* cmd) {
        cmd->add_option("--rate,-r", s.rate, "rates \"1/2,1/3,...\" or @file")->required();
    };

    bool json_rows = false;
    auto* mis = app.add_subcommand("mis", "list maximal schedules, one 0/1 row each");
    graph_opt(mis);
    mis->add_flag("--json", json_rows, "JSON instead of rows");
    auto* cliques = app.add_subcommand("cliques", "list maximal cliques, one 0/1 row each");
    graph_opt(cliques);
    cliques->add_flag("--json", json_rows, "JSON instead of rows");

    auto* chi = app.add_subcommand("chi", "weighted fractional coloring number");
    auto* phi = app.add_subcommand("phi", "weighted fractional matching number");
    auto* tau = app.add_subcommand("tau", "weighted fractional domination number");
    for (auto* cmd : {chi, phi, tau}) {
        graph_opt(cmd);
        rate_opt(cmd);
    }

    auto* sigma = app.add_subcommand("sigma", "local pooling factors of every link and the graph");
    graph_opt(sigma);

    std::string subset;
    bool all_subsets = false;
    auto* rank = app.add_subcommand("rank", "rank of the extended schedule matrix");
    graph_opt(rank);
    auto* set_opt = rank->add_option("--set", subset, "node subset such as 1,3,5 (default: all nodes)");
    rank->add_flag("--all", all_subsets, "every non-empty subset")->excludes(set_opt);

    std::string region;
    auto* member = app.add_subcommand("member", "membership in a stability region");
    graph_opt(member);
    rate_opt(member);
    member->add_option("--region", region, "region name or all")
        ->required()
        ->check(CLI::IsMember({"lambda", "lambda-o", "sigma-lambda", "omega", "delta-c", "delta-r", "all"}));

    SimFlags sim;
    bool with_sim = false;
    auto* report = app.add_subcommand("report", "full analysis report");
    graph_opt(report);
    rate_opt(report);
    report->add_flag("--simulate", with_sim, "include simulation summaries");
    add_sim_flags(report, sim);

    std::string trace_path;
    auto* simulate = app.add_subcommand("simulate", "simulate LQF and summarize the trace");
    graph_opt(simulate);
    rate_opt(simulate);
    add_sim_flags(simulate, sim);
    simulate->add_option("--trace", trace_path, "write the per-slot CSV trace here ('-' for stdout)");

    std::string verdict_path;
    auto* verify = app.add_subcommand("verify-witness", "re-check printed certificates");
    verify->group("");
    graph_opt(verify);
    rate_opt(verify);
    verify->add_option("--verdict", verdict_path, "JSON from member or report ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const Context ctx = make_context(s);
        const Graph g = load(ctx, s.graph);
        lqf_result* raw = nullptr;
        if (mis->parsed() || cliques->parsed()) {
            const Result r = take(mis->parsed() ? lqf_mis(ctx.get(), g.get(), &raw)
                                                : lqf_cliques(ctx.get(), g.get(), &raw),
                                  raw);
            std::cout << (json_rows ? lqf_result_text(r.get()) : lqf_result_aux(r.get()));
        } else if (chi->parsed() || phi->parsed() || tau->parsed()) {
            const lqf_oracle_kind kind = chi->parsed() ? LQF_ORACLE_CHI : phi->parsed() ? LQF_ORACLE_PHI : LQF_ORACLE_TAU;
            const Result r = take(lqf_oracle(ctx.get(), g.get(), kind, s.rate.c_str(), &raw), raw);
            std::cout << lqf_result_text(r.get());
        } else if (sigma->parsed()) {
            const Result r = take(lqf_sigma(ctx.get(), g.get(), &raw), raw);
            std::cout << lqf_result_text(r.get());
        } else if (rank->parsed()) {
            const char* which = all_subsets ? "all" : subset.empty() ? nullptr : subset.c_str();
            const Result r = take(lqf_rank(ctx.get(), g.get(), which, &raw), raw);
            std::cout << lqf_result_text(r.get());
        } else if (member->parsed()) {
            const Result r = take(lqf_member(ctx.get(), g.get(), region.c_str(), s.rate.c_str(), &raw), raw);
            std::cout << lqf_result_text(r.get());
        } else if (report->parsed()) {
            const auto opts = with_sim ? sim.options() : std::vector<lqf_sim_options>{};
            const Result r =
                take(lqf_report(ctx.get(), g.get(), s.rate.c_str(), opts.data(), opts.size(), &raw), raw);
            std::cout << lqf_result_text(r.get());
        } else if (simulate->parsed()) {
            const auto opts = sim.options();
            nlohmann::json runs = nlohmann::json::array();
            std::string csv;
            for (const auto& o : opts) {
                const Result r = take(lqf_simulate(ctx.get(), g.get(), s.rate.c_str(), &o, &raw), raw);
                runs.push_back(nlohmann::json::parse(lqf_result_text(r.get())));
                if (csv.empty()) csv = lqf_result_aux(r.get());
            }
            if (!trace_path.empty()) write_file(trace_path, csv);
            if (trace_path != "-") std::cout << (runs.size() == 1 ? runs[0] : runs).dump(2) << "\n";
        } else if (verify->parsed()) {
            int ok = 0;
            const std::string text = slurp(verdict_path);
            check(lqf_verify_witness(ctx.get(), g.get(), s.rate.c_str(), text.c_str(), &ok));
            std::cout << nlohmann::json{{"ok", ok == 1}}.dump(2) << "\n";
            return ok == 1 ? kOk : kFailed;
        }
        return kOk;
    } catch (const CliError& e) {
        nlohmann::json err;
        err["error"] = {{"status", lqf_status_name(e.status)}, {"message", e.message}};
        std::cout << err.dump(2) << "\n";
        return exit_code(e.status);
    }
}
