#pragma once

#include <string>
#include <string_view>

#include "lqflab/graph.hpp"
#include "lqflab/oracles.hpp"

namespace lqflab {

/// Graph text format, one directive per line, nodes numbered from 1:
///
///     # six-cycle
///     n 6
///     e 1 2
///     e 2 3
///
/// `n` must come first and exactly once. Blank lines and text after `#` are ignored.
InterferenceGraph parse_graph(std::string_view text, const Limits& limits = {});
InterferenceGraph load_graph(const std::string& path, const Limits& limits = {});
/// Canonical text: header, then sorted edges.
std::string format_graph(const InterferenceGraph& g);

/// Rate file: lines `<node> <rate>`; nodes not listed get rate 0. Rates are
/// `p/q` or integers; with `allow_decimal`, forms like 0.001 or 1e-3 are
/// also read, exactly.
RateVector parse_rate_file(std::string_view text, const InterferenceGraph& g, bool allow_decimal = false);

/// Command-line rate: a comma-separated list ("1/2,1/3,0") or `@path` to a
/// rate file.
RateVector parse_rate_arg(std::string_view arg, const InterferenceGraph& g, bool allow_decimal = false);

std::string read_file(const std::string& path);

}  // namespace lqflab
