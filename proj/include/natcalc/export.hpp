#pragma once

#include "natcalc/lts_graph.hpp"

#include <string>

namespace natcalc {

/// {"system", "complete", "limit_reached", "states": [{id, term, complete}],
///  "edges": [{from, label: {kind, chan?, value?, opened: [names]}, to,
///  rule, weak}]}. Binding edges appear once per explored instance, with the
/// opened channels named. Weak edges are included when requested and the
/// graph is saturated. Output is byte-deterministic.
std::string export_json(const LtsGraph &g, bool include_weak = false);

/// Graphviz text: one node per state labelled with its term, one edge per
/// instance labelled with its instantiated label; weak edges dashed.
std::string export_dot(const LtsGraph &g, bool include_weak = false);

} // namespace natcalc
