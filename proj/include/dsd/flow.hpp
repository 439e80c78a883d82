#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsd/core.hpp"
#include "dsd/flow_network.hpp"
#include "dsd/graph.hpp"
#include "dsd/rational.hpp"

namespace dsd {

using RealFlowNetwork = FlowNetwork<double>;
using ExactFlowNetwork = FlowNetwork<int128>;

struct MaxFlowResult {
  double value = 0.0;
  std::vector<std::uint32_t> source_side;
};

/// Runs the network to a maximum flow and reports the minimal min-cut side.
MaxFlowResult max_flow(RealFlowNetwork& net);

// Undirected density networks ---------------------------------------------
//
// Node layout: vertices 0..n-1, source n, sink n+1. Arcs: s->v with capacity
// m, v->t with capacity m + 2g - d(v), and a unit arc each way per edge. A
// source side X+{s} has cut value n*m + 2|X|(g - rho(X)), so the minimum cut
// is below n*m exactly when some subgraph is denser than g.

RealFlowNetwork build_uds_network(const UndirectedGraph& g, double guess);

/// Same network with every capacity multiplied by `grid` and the guess given
/// as guess_num / grid, so all capacities are integers.
ExactFlowNetwork build_uds_network_exact(const UndirectedGraph& g, std::int64_t guess_num, std::int64_t grid);

/// Vertices (excluding s) on the source side of the minimal minimum cut.
VertexSet uds_cut_side(ExactFlowNetwork& net, std::size_t n);

enum class FlowReduction {
  kNone,   ///< FlowExact: binary search on the whole graph.
  kMulti,  ///< CoreExact: keep the graph inside the ceil(lower)-core.
};

DsResult uds_flow_exact(const UndirectedGraph& g, FlowReduction reduction = FlowReduction::kNone);

/// Default blocking-round budget: ceil(log2 m), at least 1.
std::size_t default_blocking_rounds(std::size_t num_edges);

/// (1 + eps)-approximation with at most `blocking_rounds` phases per guess
/// before looking for a residual candidate. Throws on eps <= 0.
DsResult uds_flow_approx(const UndirectedGraph& g, double eps, std::optional<std::size_t> blocking_rounds = {});

// Directed density networks -----------------------------------------------
//
// Node layout: out-copies L_u = u, in-copies R_v = n + v, source 2n, sink
// 2n+1. Arcs: s->L_u with capacity 2 d+(u), L_u->t with g/sqrt(c),
// R_v->t with g*sqrt(c), and L_u->R_v with capacity 2 for every arc (u, v).
// A cut with out-copies S and in-copies T on the source side costs
// 2m - (2|E(S,T)| - g(|S|/sqrt(c) + sqrt(c)|T|)), and
// 2|E(S,T)| > g(|S|/sqrt(c) + sqrt(c)|T|) holds exactly when the c-biased
// density of (S, T) exceeds g. So the minimum cut is below 2m iff some pair
// has c-biased density above g.

RealFlowNetwork build_dds_network(const DirectedGraph& d, double c, double guess);

/// Size ratio a/b in lowest terms.
struct Ratio {
  std::uint32_t a = 1;
  std::uint32_t b = 1;

  double value() const { return static_cast<double>(a) / static_cast<double>(b); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Integer network for ratio a/b, parameterised by h = g/sqrt(c) given as
/// h_num / grid. Same cut structure as build_dds_network.
ExactFlowNetwork build_dds_network_exact(const DirectedGraph& d, Ratio c, std::int64_t h_num, std::int64_t grid);

struct PairSide {
  VertexSet s;
  VertexSet t;
};

PairSide dds_cut_side(ExactFlowNetwork& net, std::size_t n);

/// Outcome of maximising the c-biased density at one ratio.
struct RatioSolve {
  bool found = false;  ///< a pair above the starting lower bound was found
  VertexSet s;
  VertexSet t;
  /// Certified upper bound on the best c-biased density at this ratio.
  double biased_upper = 0.0;
  bool verified = true;
  std::size_t iterations = 0;
};

/// Exact binary search for one ratio on `d`, starting the search at
/// `lower_density` (a density, converted to the ratio's scale). Returns the
/// maximiser of the c-biased density when it beats the start.
RatioSolve solve_ratio_flow(const DirectedGraph& d, Ratio c, double lower_density);

/// True when some pair of `d` has c-biased density strictly above that of
/// (s, t). Used as an exact optimality check for iterative solvers.
bool exists_denser_biased_pair(const DirectedGraph& d, Ratio c, std::span<const VertexId> s,
                               std::span<const VertexId> t);

enum class DdsStrategy { kEnumerateAll, kDivideConquer };

/// DFlowExact (every candidate ratio, no reduction) or DCExact (divide and
/// conquer with [x, y]-core reduction). Binary search per ratio starts from
/// gamma times the current global lower bound.
DsResult dds_flow_exact(const DirectedGraph& d, DdsStrategy strategy = DdsStrategy::kEnumerateAll,
                        double gamma = 0.0, bool adjust_intervals = true);

}  // namespace dsd
