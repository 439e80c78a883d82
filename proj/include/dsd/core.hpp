#pragma once

#include <cstdint>
#include <vector>

#include "dsd/graph.hpp"
#include "dsd/rational.hpp"

namespace dsd {

/// Lower and upper bound on the optimal density, kept as exact fractions.
struct DensityBounds {
  Rational lower;
  Rational upper;
};

struct CoreDecomposition {
  std::vector<std::uint32_t> core_number;
  std::uint32_t k_star = 0;
};

/// Bucket peeling in O(n + m).
CoreDecomposition core_numbers(const UndirectedGraph& g);

/// {v : core_number(v) >= k}, sorted.
VertexSet k_core(const CoreDecomposition& cores, std::uint32_t k);
VertexSet k_core(const UndirectedGraph& g, std::uint32_t k);

/// The ceil(lower_bound)-core. Contains every densest subgraph whenever
/// lower_bound does not exceed the optimum.
VertexSet reduce_uds(const UndirectedGraph& g, const Rational& lower_bound);
VertexSet reduce_uds(const CoreDecomposition& cores, const Rational& lower_bound);
VertexSet reduce_uds(const UndirectedGraph& g, double lower_bound);

/// (k*/2, k*). Throws GraphError on an edgeless graph.
DensityBounds initial_bounds(const UndirectedGraph& g);
DensityBounds initial_bounds(const CoreDecomposition& cores);

/// Maximal (S, T) pair where every u in S has at least x out-neighbours in T
/// and every v in T has at least y in-neighbours in S.
struct XyCore {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  VertexSet s;
  VertexSet t;

  bool empty() const noexcept { return s.empty() || t.empty(); }
};

XyCore xy_core(const DirectedGraph& d, std::uint32_t x, std::uint32_t y);

/// The [x, y]-core maximising x * y (ties prefer larger x). Throws on an
/// edgeless graph.
XyCore xy_core_max_product(const DirectedGraph& d);

/// Core thresholds that keep every densest pair whose size ratio lies in
/// [c_l, c_r], given a lower bound on the optimal density.
struct XyThresholds {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};
XyThresholds dds_core_thresholds(double lower_bound, double c_l, double c_r);

XyCore reduce_dds(const DirectedGraph& d, double lower_bound, double c_l, double c_r);

}  // namespace dsd
