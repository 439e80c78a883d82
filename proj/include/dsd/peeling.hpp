#pragma once

#include <cstddef>

#include "dsd/graph.hpp"

namespace dsd {

/// Charikar's peeling: repeatedly drop a minimum-degree vertex and keep the
/// densest intermediate subgraph. Equal densities prefer the later, smaller set.
DsResult greedy(const UndirectedGraph& g);

/// Greedy++ with `rounds` load-carrying passes. Each pass removes the vertex
/// minimising load + current degree, then adds that degree to its load.
DsResult greedy_pp(const UndirectedGraph& g, std::size_t rounds);

/// Greedy++ where each pass runs on the ceil(best density)-core, shrinking
/// the graph whenever the best density crosses an integer.
DsResult greedy_pp_reduced(const UndirectedGraph& g, std::size_t rounds);

/// The whole k*-core.
DsResult core_app(const UndirectedGraph& g);

/// Directed peeling for every candidate ratio c: start from S = T = V and
/// drop the minimum out-degree vertex of S when |S|/|T| >= c, otherwise the
/// minimum in-degree vertex of T.
DsResult d_greedy(const DirectedGraph& d);

/// The [x, y]-core with the largest x * y.
DsResult xy_core_app(const DirectedGraph& d);

/// Peels vertices by smallest out-degree * in-degree. Each intermediate
/// vertex set R is scored as the pair (R with out-arcs, R with in-arcs).
DsResult w_core_app(const DirectedGraph& d);

}  // namespace dsd
