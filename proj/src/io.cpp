#include "lqflab/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "lqflab/errors.hpp"

namespace lqflab {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok) + "'", line);
    return v;
}

Node parse_node(std::string_view tok, std::size_t n, std::size_t line) {
    const std::size_t v = parse_count(tok, line, "a node number");
    if (v < 1 || v > n)
        throw ParseError("node " + std::to_string(v) + " out of range 1.." + std::to_string(n), line);
    return v - 1;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        f(line, line_no);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InterferenceGraph parse_graph(std::string_view text, const Limits& limits) {
    std::optional<InterferenceGraph> g;
    for_each_line(text, [&](std::string_view line, std::size_t no) {
        const auto tok = tokens(line);
        if (tok.empty()) return;
        if (tok[0] == "n") {
            if (g) throw ParseError("duplicate node count", no);
            if (tok.size() != 2) throw ParseError("expected 'n <count>'", no);
            const std::size_t n = parse_count(tok[1], no, "a node count");
            if (n == 0) throw ParseError("graph needs at least one node", no);
            if (n > limits.max_nodes || n > kMaxGraphNodes)
                throw ResourceLimit("graph has " + std::to_string(n) + " nodes",
                                    std::min(limits.max_nodes, kMaxGraphNodes));
            g.emplace(n);
        } else if (tok[0] == "e") {
            if (!g) throw ParseError("edge before node count", no);
            if (tok.size() != 3) throw ParseError("expected 'e <u> <v>'", no);
            const Node u = parse_node(tok[1], g->node_count(), no);
            const Node v = parse_node(tok[2], g->node_count(), no);
            if (u == v) throw ParseError("self-loop on node " + std::to_string(u + 1), no);
            if (g->adjacent(u, v))
                throw ParseError("duplicate edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1), no);
            g->add_edge(u, v);
        } else {
            throw ParseError("unknown directive '" + std::string(tok[0]) + "'", no);
        }
    });
    if (!g) throw ParseError("missing node count line 'n <count>'");
    return std::move(*g);
}

InterferenceGraph load_graph(const std::string& path, const Limits& limits) {
    return parse_graph(read_file(path), limits);
}

std::string format_graph(const InterferenceGraph& g) {
    std::string out = "n " + std::to_string(g.node_count()) + "\n";
    for (auto [u, v] : g.edges()) out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

RateVector parse_rate_file(std::string_view text, const InterferenceGraph& g, bool allow_decimal) {
    RationalVector values(g.node_count());
    std::vector<bool> seen(g.node_count(), false);
    for_each_line(text, [&](std::string_view line, std::size_t no) {
        const auto tok = tokens(line);
        if (tok.empty()) return;
        if (tok.size() != 2) throw ParseError("expected '<node> <rate>'", no);
        const Node v = parse_node(tok[0], g.node_count(), no);
        if (seen[v]) throw ParseError("rate for node " + std::to_string(v + 1) + " given twice", no);
        seen[v] = true;
        try {
            values[v] = allow_decimal ? Rational::parse_decimal(tok[1]) : Rational::parse(tok[1]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), no);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), no);
        }
        if (values[v].sign() < 0) throw ParseError("negative rate", no);
    });
    return RateVector::over(g, std::move(values));
}

RateVector parse_rate_arg(std::string_view arg, const InterferenceGraph& g, bool allow_decimal) {
    if (!arg.empty() && arg.front() == '@')
        return parse_rate_file(read_file(std::string(arg.substr(1))), g, allow_decimal);
    RationalVector values;
    try {
        values = parse_rational_list(arg, allow_decimal);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("rate vector: ") + e.what());
    }
    if (values.size() != g.node_count())
        throw ParseError("rate vector has " + std::to_string(values.size()) + " entries for a graph with " +
                         std::to_string(g.node_count()) + " nodes");
    for (const auto& v : values)
        if (v.sign() < 0) throw ParseError("rate vector entries must be nonnegative");
    return RateVector::over(g, std::move(values));
}

}  // namespace lqflab
