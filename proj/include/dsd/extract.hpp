#pragma once

#include <span>

#include "dsd/core.hpp"
#include "dsd/graph.hpp"
#include "dsd/rational.hpp"
#include "dsd/vwu_state.hpp"

namespace dsd {

/// Vertices ordered by weight, heaviest first; ties by smaller id.
std::vector<VertexId> weight_order(std::span<const double> w);

/// Best-density prefix of the weight order (ties keep the shorter prefix).
/// Throws GraphError on an empty graph.
VertexSet pava_extract(const UndirectedGraph& g, std::span<const double> w);

/// max_i min{ (i-1)/2, (1/i) * sum of the i largest weights }.
double density_upper_bound(const UndirectedGraph& g, std::span<const double> w);

/// Stable-set test: every weight inside S strictly exceeds every weight
/// outside, and every edge between S and the rest gives nothing to its S
/// endpoint. `share_tolerance` is the largest share still treated as zero.
bool is_stable_set(const UndirectedGraph& g, std::span<const VertexId> s, const VwuStateUds& state,
                   double share_tolerance = 0.0);

/// Improved Goldberg condition on the subgraph induced by S with per-vertex
/// weights `w` (indexed by vertex of g). True certifies S is densest in G[S].
bool goldberg_condition(const UndirectedGraph& g, std::span<const VertexId> s, std::span<const double> w);

/// Feasibility flow on G[S] at guess rho(S): saturates n*m (in units of the
/// unscaled network) iff no subset of S is denser than S.
bool saturates_density_network(const UndirectedGraph& g, std::span<const VertexId> s);

/// Exact-optimality check for a PAVA candidate. The shares of edges leaving S
/// are first rerouted entirely to the outside endpoint (still a feasible
/// assignment); S must be stable under that assignment and pass either the
/// Goldberg condition or the feasibility flow.
bool verify_exact_cp(const UndirectedGraph& g, std::span<const VertexId> s, const VwuStateUds& state);

/// upper - lower < 1 / (n (n - 1)), exactly. n >= 2.
bool exact_stop(const DensityBounds& bounds, std::size_t n);

/// Float upper bound against an exact lower bound. The float side is
/// conservatively padded so that rounding can only delay the stop.
bool exact_stop(double upper, const Rational& lower, std::size_t n);

/// (g - lower) / (2g) < eps / (3 - 2 eps); always true for eps >= 1.5.
bool approx_stop(double guess, double lower, double eps);

struct DirectedCandidates {
  /// Prefix pair maximising the directed density.
  VertexSet s;
  VertexSet t;
  /// Prefix pair maximising the c-biased density at the state's ratio.
  VertexSet biased_s;
  VertexSet biased_t;
};

/// Scans every (S-prefix, T-prefix) pair of the w_alpha / w_beta orders.
DirectedCandidates pava_extract_directed(const DirectedGraph& d, const VwuStateDds& state);

}  // namespace dsd
