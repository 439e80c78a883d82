#include "dsd/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dsd {

CoreDecomposition core_numbers(const UndirectedGraph& g) {
  const std::size_t n = g.num_vertices();
  CoreDecomposition out;
  out.core_number.assign(n, 0);
  if (n == 0) return out;

  // Batagelj-Zaversnik: vertices sorted by current degree, bucket starts in bin.
  const std::size_t max_deg = g.max_degree();
  std::vector<std::size_t> degree(n);
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    ++bin[degree[v]];
  }
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<VertexId> order(n);
  std::vector<std::size_t> position(n);
  for (VertexId v = 0; v < n; ++v) {
    position[v] = bin[degree[v]]++;
    order[position[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    for (VertexId u : g.neighbors(v)) {
      if (degree[u] > degree[v]) {
        std::size_t du = degree[u];
        std::size_t pu = position[u];
        std::size_t pw = bin[du];
        VertexId w = order[pw];
        if (u != w) {
          std::swap(order[pu], order[pw]);
          position[u] = pw;
          position[w] = pu;
        }
        ++bin[du];
        --degree[u];
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    out.core_number[v] = static_cast<std::uint32_t>(degree[v]);
    out.k_star = std::max(out.k_star, out.core_number[v]);
  }
  return out;
}

VertexSet k_core(const CoreDecomposition& cores, std::uint32_t k) {
  VertexSet out;
  for (VertexId v = 0; v < cores.core_number.size(); ++v) {
    if (cores.core_number[v] >= k) out.push_back(v);
  }
  return out;
}

VertexSet k_core(const UndirectedGraph& g, std::uint32_t k) { return k_core(core_numbers(g), k); }

VertexSet reduce_uds(const CoreDecomposition& cores, const Rational& lower_bound) {
  std::int64_t k = ceil_on_grid(lower_bound, 1);
  if (k < 0) k = 0;
  return k_core(cores, static_cast<std::uint32_t>(k));
}

VertexSet reduce_uds(const UndirectedGraph& g, const Rational& lower_bound) {
  return reduce_uds(core_numbers(g), lower_bound);
}

VertexSet reduce_uds(const UndirectedGraph& g, double lower_bound) {
  // Rounding noise must never push the threshold up past an integer.
  double k = std::ceil(lower_bound - 1e-9);
  if (k < 0) k = 0;
  return k_core(g, static_cast<std::uint32_t>(k));
}

DensityBounds initial_bounds(const CoreDecomposition& cores) {
  if (cores.k_star == 0) throw GraphError("initial bounds need at least one edge");
  return {Rational(cores.k_star, 2), Rational(cores.k_star, 1)};
}

DensityBounds initial_bounds(const UndirectedGraph& g) { return initial_bounds(core_numbers(g)); }

XyCore xy_core(const DirectedGraph& d, std::uint32_t x, std::uint32_t y) {
  const std::size_t n = d.num_vertices();
  std::vector<std::size_t> out_deg(n);
  std::vector<std::size_t> in_deg(n);
  std::vector<char> in_s(n, 1);
  std::vector<char> in_t(n, 1);
  // (vertex, removed from T?) pairs waiting to propagate.
  std::deque<std::pair<VertexId, bool>> queue;
  for (VertexId v = 0; v < n; ++v) {
    out_deg[v] = d.out_degree(v);
    in_deg[v] = d.in_degree(v);
    if (out_deg[v] < x) {
      in_s[v] = 0;
      queue.emplace_back(v, false);
    }
    if (in_deg[v] < y) {
      in_t[v] = 0;
      queue.emplace_back(v, true);
    }
  }
  while (!queue.empty()) {
    auto [v, t_side] = queue.front();
    queue.pop_front();
    if (!t_side) {
      for (VertexId w : d.out_neighbors(v)) {
        if (in_t[w] && --in_deg[w] < y) {
          in_t[w] = 0;
          queue.emplace_back(w, true);
        }
      }
    } else {
      for (VertexId u : d.in_neighbors(v)) {
        if (in_s[u] && --out_deg[u] < x) {
          in_s[u] = 0;
          queue.emplace_back(u, false);
        }
      }
    }
  }
  XyCore core;
  core.x = x;
  core.y = y;
  for (VertexId v = 0; v < n; ++v) {
    if (in_s[v]) core.s.push_back(v);
    if (in_t[v]) core.t.push_back(v);
  }
  return core;
}

XyCore xy_core_max_product(const DirectedGraph& d) {
  if (d.num_edges() == 0) throw GraphError("[x,y]-core search needs at least one arc");
  XyCore best;
  std::uint64_t best_product = 0;
  auto y_upper = static_cast<std::uint32_t>(d.max_in_degree());
  for (std::uint32_t x = 1; x <= d.max_out_degree() && y_upper >= 1; ++x) {
    // Max y with a non-empty [x, y]-core is non-increasing in x, so the
    // previous answer bounds the search.
    std::uint32_t lo = 0;
    std::uint32_t hi = y_upper;
    XyCore found;
    while (lo < hi) {
      std::uint32_t mid = lo + (hi - lo + 1) / 2;
      XyCore probe = xy_core(d, x, mid);
      if (probe.empty()) {
        hi = mid - 1;
      } else {
        lo = mid;
        found = std::move(probe);
      }
    }
    if (lo == 0) break;
    y_upper = lo;
    std::uint64_t product = static_cast<std::uint64_t>(x) * lo;
    if (product >= best_product) {
      best_product = product;
      best = std::move(found);
    }
  }
  return best;
}

XyThresholds dds_core_thresholds(double lower_bound, double c_l, double c_r) {
  // Thresholds are rounded down by a hair so that float error never removes
  // a vertex the exact bound would keep.
  auto conservative_ceil = [](double value) {
    double k = std::ceil(value - 1e-9);
    return k <= 0 ? std::uint32_t{0} : static_cast<std::uint32_t>(k);
  };
  return {conservative_ceil(lower_bound / (2.0 * std::sqrt(c_r))),
          conservative_ceil(std::sqrt(c_l) * lower_bound / 2.0)};
}

XyCore reduce_dds(const DirectedGraph& d, double lower_bound, double c_l, double c_r) {
  XyThresholds th = dds_core_thresholds(lower_bound, c_l, c_r);
  return xy_core(d, th.x, th.y);
}

}  // namespace dsd
