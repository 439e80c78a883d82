#include "dsd/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsd/flow.hpp"

namespace dsd {

std::vector<VertexId> weight_order(std::span<const double> w) {
  std::vector<VertexId> order(w.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return w[a] > w[b]; });
  return order;
}

VertexSet pava_extract(const UndirectedGraph& g, std::span<const double> w) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw GraphError("PAVA extraction on an empty graph");
  std::vector<VertexId> order = weight_order(w);
  std::vector<char> in_prefix(n, 0);
  std::size_t edges = 0;
  std::size_t best_edges = 0;
  std::size_t best_size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    VertexId u = order[i];
    for (VertexId v : g.neighbors(u)) edges += in_prefix[v];
    in_prefix[u] = 1;
    // edges / (i+1) > best_edges / best_size, compared exactly
    if (edges * best_size > best_edges * (i + 1)) {
      best_edges = edges;
      best_size = i + 1;
    }
  }
  VertexSet s(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_size));
  std::sort(s.begin(), s.end());
  return s;
}

double density_upper_bound(const UndirectedGraph& g, std::span<const double> w) {
  std::vector<VertexId> order = weight_order(w.first(g.num_vertices()));
  double prefix = 0.0;
  double best = 0.0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    prefix += w[order[i - 1]];
    double clique = static_cast<double>(i - 1) / 2.0;
    best = std::max(best, std::min(clique, prefix / static_cast<double>(i)));
  }
  return best;
}

bool is_stable_set(const UndirectedGraph& g, std::span<const VertexId> s, const VwuStateUds& state,
                   double share_tolerance) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in_s(n, 0);
  for (VertexId v : s) in_s.at(v) = 1;
  double min_inside = INFINITY;
  double max_outside = -INFINITY;
  for (VertexId v = 0; v < n; ++v) {
    if (in_s[v]) {
      min_inside = std::min(min_inside, state.w[v]);
    } else {
      max_outside = std::max(max_outside, state.w[v]);
    }
  }
  if (!(min_inside > max_outside)) return false;
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (in_s[edge.u] && !in_s[edge.v] && state.share_to_lower(e) > share_tolerance) return false;
    if (in_s[edge.v] && !in_s[edge.u] && state.share_to_upper(e) > share_tolerance) return false;
  }
  return true;
}

bool goldberg_condition(const UndirectedGraph& g, std::span<const VertexId> s, std::span<const double> w) {
  const std::size_t n = s.size();
  if (n <= 1) return true;
  const std::size_t m = count_edges(g, s);
  std::vector<double> weights;
  weights.reserve(n);
  for (VertexId v : s) weights.push_back(w[v]);
  std::sort(weights.begin(), weights.end(), std::greater<>());

  const double rho = static_cast<double>(m) / static_cast<double>(n);
  // The right-hand side is the smallest positive gap between an i-vertex
  // density and rho(S); the margin keeps float noise from certifying a
  // subgraph that merely ties that gap.
  const double margin = 1e-9 * std::max(1.0, rho);
  double prefix = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    prefix += weights[i - 1];
    const double di = static_cast<double>(i);
    double bound = std::min((di - 1.0) / 2.0, prefix / di);
    std::size_t im = i * m;
    std::size_t ceil_im = (im + n - 1) / n;
    double fractional = static_cast<double>(ceil_im * n - im) / static_cast<double>(n);
    double rhs = std::max(1.0 / (static_cast<double>(n) * di), fractional / di);
    if (!(bound - rho < rhs - margin)) return false;
  }
  return true;
}

bool saturates_density_network(const UndirectedGraph& g, std::span<const VertexId> s) {
  InducedSubgraph sub = induced_subgraph(g, s);
  const auto n = static_cast<std::int64_t>(sub.graph.num_vertices());
  const auto m = static_cast<std::int64_t>(sub.graph.num_edges());
  if (m == 0) return true;
  // Guess m/n on grid n: every capacity is scaled by n.
  ExactFlowNetwork net = build_uds_network_exact(sub.graph, m, n);
  int128 flow = net.max_flow();
  return flow == static_cast<int128>(n) * m * n;
}

bool verify_exact_cp(const UndirectedGraph& g, std::span<const VertexId> s, const VwuStateUds& state) {
  if (s.empty()) return false;
  std::vector<char> in_s(g.num_vertices(), 0);
  for (VertexId v : s) in_s.at(v) = 1;
  VwuStateUds repaired{state.share, {}};
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (in_s[edges[e].u] && !in_s[edges[e].v]) repaired.share[e] = 0.0;
    if (in_s[edges[e].v] && !in_s[edges[e].u]) repaired.share[e] = 1.0;
  }
  refresh_loads(g, repaired);
  if (!is_stable_set(g, s, repaired)) return false;
  return goldberg_condition(g, s, repaired.w) || saturates_density_network(g, s);
}

bool exact_stop(const DensityBounds& bounds, std::size_t n) {
  auto nn = static_cast<std::int64_t>(n);
  return compare_difference(bounds.upper, bounds.lower, Rational(1, nn * (nn - 1))) < 0;
}

bool exact_stop(double upper, const Rational& lower, std::size_t n) {
  double threshold = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
  double pad = 1e-9 * std::max(1.0, upper);
  return upper - lower.to_double() < threshold - pad;
}

bool approx_stop(double guess, double lower, double eps) {
  if (eps >= 1.5) return true;
  return (guess - lower) / (2.0 * guess) < eps / (3.0 - 2.0 * eps);
}

DirectedCandidates pava_extract_directed(const DirectedGraph& d, const VwuStateDds& state) {
  const std::size_t n = d.num_vertices();
  std::vector<VertexId> s_order = weight_order(state.w_alpha);
  std::vector<VertexId> t_order = weight_order(state.w_beta);
  std::vector<std::size_t> t_rank(n);
  for (std::size_t j = 0; j < n; ++j) t_rank[t_order[j]] = j;

  const double root_c = std::sqrt(state.c);
  std::vector<std::size_t> hits(n, 0);
  double best = -1.0;
  double best_biased = -1.0;
  std::size_t bi = 1, bj = 1, ci = 1, cj = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (VertexId v : d.out_neighbors(s_order[i])) ++hits[t_rank[v]];
    std::size_t arcs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      arcs += hits[j];
      double e = static_cast<double>(arcs);
      double si = static_cast<double>(i + 1);
      double tj = static_cast<double>(j + 1);
      double rho = e / std::sqrt(si * tj);
      double biased = 2.0 * root_c * e / (si + state.c * tj);
      if (rho > best) {
        best = rho;
        bi = i + 1;
        bj = j + 1;
      }
      if (biased > best_biased) {
        best_biased = biased;
        ci = i + 1;
        cj = j + 1;
      }
    }
  }
  auto prefix = [](const std::vector<VertexId>& order, std::size_t k) {
    VertexSet out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
  };
  return {prefix(s_order, bi), prefix(t_order, bj), prefix(s_order, ci), prefix(t_order, cj)};
}

}  // namespace dsd
