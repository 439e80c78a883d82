#include "dsd/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsd/extract.hpp"

namespace dsd {
namespace {

struct Candidate {
  VertexSet vertices;
  std::size_t edges = 0;

  Rational density() const {
    return Rational(static_cast<std::int64_t>(edges), static_cast<std::int64_t>(vertices.size()));
  }
};

bool denser(const Candidate& a, const Candidate& b) {
  if (b.vertices.empty()) return !a.vertices.empty();
  return a.density() > b.density();
}

Candidate densest_component_of(const UndirectedGraph& g, std::span<const VertexId> x) {
  Candidate c{densest_component(g, x), 0};
  c.edges = count_edges(g, c.vertices);
  return c;
}

// A grid point k / grid strictly inside (lo, hi); requires hi - lo >= 2 / grid.
std::int64_t grid_midpoint(const Rational& lo, const Rational& hi, std::int64_t grid) {
  int128 num = static_cast<int128>(lo.num) * hi.den + static_cast<int128>(hi.num) * lo.den;
  int128 den = static_cast<int128>(2) * lo.den * hi.den;
  return static_cast<std::int64_t>(num * grid / den);
}

std::size_t largest_component(const UndirectedGraph& g) {
  std::size_t best = 0;
  for (const VertexSet& comp : connected_components(g)) best = std::max(best, comp.size());
  return best;
}

std::int64_t uds_grid(std::size_t n) {
  auto nn = static_cast<std::int64_t>(std::max<std::size_t>(n, 2));
  return 2 * nn * (nn - 1);
}

bool saturated(const ExactFlowNetwork& net, const UndirectedGraph& g, std::int64_t grid) {
  return net.flow_value() ==
         static_cast<int128>(g.num_vertices()) * static_cast<int128>(g.num_edges()) * grid;
}

}  // namespace

MaxFlowResult max_flow(RealFlowNetwork& net) {
  MaxFlowResult result;
  result.value = net.max_flow();
  result.source_side = net.source_side();
  return result;
}

RealFlowNetwork build_uds_network(const UndirectedGraph& g, double guess) {
  const std::size_t n = g.num_vertices();
  const double m = static_cast<double>(g.num_edges());
  auto s = static_cast<std::uint32_t>(n);
  RealFlowNetwork net(n + 2, s, s + 1, 1e-9);
  for (VertexId v = 0; v < n; ++v) {
    net.add_arc(s, v, m);
    net.add_arc(v, s + 1, std::max(0.0, m + 2.0 * guess - static_cast<double>(g.degree(v))));
  }
  for (const Edge& e : g.edges()) net.add_arc(e.u, e.v, 1.0, 1.0);
  return net;
}

ExactFlowNetwork build_uds_network_exact(const UndirectedGraph& g, std::int64_t guess_num, std::int64_t grid) {
  const std::size_t n = g.num_vertices();
  const int128 m = static_cast<int128>(g.num_edges());
  auto s = static_cast<std::uint32_t>(n);
  ExactFlowNetwork net(n + 2, s, s + 1);
  for (VertexId v = 0; v < n; ++v) {
    net.add_arc(s, v, m * grid);
    int128 sink_cap = m * grid + 2 * static_cast<int128>(guess_num) - static_cast<int128>(g.degree(v)) * grid;
    net.add_arc(v, s + 1, std::max<int128>(0, sink_cap));
  }
  for (const Edge& e : g.edges()) net.add_arc(e.u, e.v, grid, grid);
  return net;
}

VertexSet uds_cut_side(ExactFlowNetwork& net, std::size_t n) {
  VertexSet side;
  for (auto v : net.source_side()) {
    if (v < n) side.push_back(v);
  }
  return side;
}

DsResult uds_flow_exact(const UndirectedGraph& g, FlowReduction reduction) {
  CoreDecomposition cores = core_numbers(g);
  DensityBounds bounds = initial_bounds(cores);
  Candidate best = densest_component_of(g, k_core(cores, cores.k_star));
  bounds.lower = best.density();

  RunStats stats;
  InducedSubgraph work{g, {}};
  work.to_parent = all_vertices(g.num_vertices());
  std::int64_t core_level = -1;
  auto reduce = [&] {
    auto level = ceil_on_grid(bounds.lower, 1);
    if (level <= core_level) return;
    core_level = level;
    work = induced_subgraph(g, reduce_uds(cores, bounds.lower));
    if (stats.reductions++ == 0) stats.reduced_edges = work.graph.num_edges();
  };
  if (reduction == FlowReduction::kMulti) {
    reduce();
  } else {
    stats.reduced_edges = g.num_edges();
  }
  std::size_t stop_n = reduction == FlowReduction::kMulti ? largest_component(work.graph) : g.num_vertices();

  while (stop_n >= 2 && !exact_stop(bounds, stop_n)) {
    const std::int64_t grid = uds_grid(stop_n);
    const std::int64_t k = grid_midpoint(bounds.lower, bounds.upper, grid);
    ExactFlowNetwork net = build_uds_network_exact(work.graph, k, grid);
    net.max_flow();
    ++stats.iterations;
    if (saturated(net, work.graph, grid)) {
      bounds.upper = Rational(k, grid);
      continue;
    }
    VertexSet side = map_to_parent(uds_cut_side(net, work.graph.num_vertices()), work.to_parent);
    Candidate found = densest_component_of(g, side);
    if (denser(found, best)) {
      best = std::move(found);
      bounds.lower = best.density();
    }
    if (reduction == FlowReduction::kMulti) {
      reduce();
      stop_n = largest_component(work.graph);
    }
  }

  DsResult result = make_result(g, best.vertices);
  result.verified = true;
  result.stats = stats;
  return result;
}

std::size_t default_blocking_rounds(std::size_t num_edges) {
  std::size_t rounds = 0;
  while ((std::size_t{1} << rounds) < num_edges) ++rounds;
  return std::max<std::size_t>(rounds, 1);
}

DsResult uds_flow_approx(const UndirectedGraph& g, double eps, std::optional<std::size_t> blocking_rounds) {
  if (!(eps > 0.0)) throw std::invalid_argument("uds_flow_approx: eps must be positive");
  const std::size_t rounds = blocking_rounds.value_or(default_blocking_rounds(g.num_edges()));
  const std::size_t n = g.num_vertices();
  const std::int64_t grid = uds_grid(n);

  CoreDecomposition cores = core_numbers(g);
  DensityBounds bounds = initial_bounds(cores);
  Candidate best = densest_component_of(g, k_core(cores, cores.k_star));
  bounds.lower = best.density();
  RunStats stats;
  stats.reduced_edges = g.num_edges();

  auto certified = [&] {
    return bounds.upper.to_double() <= (1.0 + eps) * bounds.lower.to_double() * (1.0 - 1e-12);
  };
  auto take = [&](Candidate c) {
    if (denser(c, best)) {
      best = std::move(c);
      bounds.lower = best.density();
    }
  };

  while (n >= 2 && !exact_stop(bounds, n)) {
    const std::int64_t k = grid_midpoint(bounds.lower, bounds.upper, grid);
    const Rational guess(k, grid);
    ExactFlowNetwork net = build_uds_network_exact(g, k, grid);
    ++stats.iterations;
    bool maximal = false;
    for (std::size_t r = 0; r < rounds && !maximal; ++r) maximal = !net.blocking_flow_round();
    bool decided = false;
    if (!maximal && net.has_augmenting_path()) {
      // Try the residual BFS layers as nested candidate sets.
      Candidate layered;
      VertexSet prefix;
      for (const auto& layer : net.residual_layers()) {
        for (auto v : layer) {
          if (v < n) prefix.push_back(v);
        }
        std::sort(prefix.begin(), prefix.end());
        Candidate c = densest_component_of(g, prefix);
        if (denser(c, layered)) layered = std::move(c);
      }
      if (!layered.vertices.empty() && layered.density() >= guess) {
        take(std::move(layered));
        decided = true;
      }
    }
    if (!decided) {
      net.max_flow();
      if (saturated(net, g, grid)) {
        bounds.upper = guess;
      } else {
        take(densest_component_of(g, uds_cut_side(net, n)));
      }
    }
    if (approx_stop(guess.to_double(), bounds.lower.to_double(), eps) && certified()) break;
  }

  DsResult result = make_result(g, best.vertices);
  result.upper_bound = std::max(result.density, bounds.upper.to_double());
  result.verified = exact_stop(bounds, std::max<std::size_t>(n, 2)) || certified();
  if (exact_stop(bounds, std::max<std::size_t>(n, 2))) result.upper_bound = result.density;
  result.stats = stats;
  return result;
}

RealFlowNetwork build_dds_network(const DirectedGraph& d, double c, double guess) {
  const std::size_t n = d.num_vertices();
  const double root_c = std::sqrt(c);
  auto s = static_cast<std::uint32_t>(2 * n);
  RealFlowNetwork net(2 * n + 2, s, s + 1, 1e-9);
  for (VertexId u = 0; u < n; ++u) {
    net.add_arc(s, u, 2.0 * static_cast<double>(d.out_degree(u)));
    net.add_arc(u, s + 1, guess / root_c);
    net.add_arc(static_cast<std::uint32_t>(n + u), s + 1, guess * root_c);
  }
  for (const Edge& a : d.arcs()) net.add_arc(a.u, static_cast<std::uint32_t>(n + a.v), 2.0);
  return net;
}

ExactFlowNetwork build_dds_network_exact(const DirectedGraph& d, Ratio c, std::int64_t h_num, std::int64_t grid) {
  const std::size_t n = d.num_vertices();
  auto s = static_cast<std::uint32_t>(2 * n);
  const int128 unit = static_cast<int128>(2) * c.b * grid;
  ExactFlowNetwork net(2 * n + 2, s, s + 1);
  for (VertexId u = 0; u < n; ++u) {
    net.add_arc(s, u, unit * static_cast<int128>(d.out_degree(u)));
    net.add_arc(u, s + 1, static_cast<int128>(h_num) * c.b);
    net.add_arc(static_cast<std::uint32_t>(n + u), s + 1, static_cast<int128>(h_num) * c.a);
  }
  for (const Edge& a : d.arcs()) net.add_arc(a.u, static_cast<std::uint32_t>(n + a.v), unit);
  return net;
}

PairSide dds_cut_side(ExactFlowNetwork& net, std::size_t n) {
  PairSide side;
  for (auto v : net.source_side()) {
    if (v < n) {
      side.s.push_back(v);
    } else if (v < 2 * n) {
      side.t.push_back(static_cast<VertexId>(v - n));
    }
  }
  return side;
}

namespace {

// h(S, T) = 2b|E(S,T)| / (b|S| + a|T|); the c-biased density is sqrt(c) * h.
Rational scaled_biased_density(const DirectedGraph& d, Ratio c, std::span<const VertexId> s,
                               std::span<const VertexId> t) {
  auto arcs = static_cast<std::int64_t>(count_arcs(d, s, t));
  return Rational(2 * c.b * arcs, static_cast<std::int64_t>(c.b * s.size() + c.a * t.size()));
}

bool dds_saturated(const ExactFlowNetwork& net, const DirectedGraph& d, Ratio c, std::int64_t grid) {
  return net.flow_value() == static_cast<int128>(2) * c.b * grid * static_cast<int128>(d.num_edges());
}

}  // namespace

RatioSolve solve_ratio_flow(const DirectedGraph& d, Ratio c, double lower_density) {
  const auto q = static_cast<std::int64_t>((c.a + c.b) * d.num_vertices());
  const std::int64_t grid = 2 * q * q;
  const double root_c = std::sqrt(c.value());

  Rational hi(2 * static_cast<std::int64_t>(d.num_edges()) * c.b, c.a + c.b);
  auto start = static_cast<std::int64_t>(std::floor(lower_density / root_c * static_cast<double>(grid))) - 1;
  Rational lo(std::max<std::int64_t>(0, start), grid);

  RatioSolve out;
  const Rational resolution(1, q * q);
  while (lo < hi && compare_difference(hi, lo, resolution) >= 0) {
    std::int64_t k = grid_midpoint(lo, hi, grid);
    ExactFlowNetwork net = build_dds_network_exact(d, c, k, grid);
    net.max_flow();
    ++out.iterations;
    if (dds_saturated(net, d, c, grid)) {
      hi = Rational(k, grid);
      continue;
    }
    PairSide side = dds_cut_side(net, d.num_vertices());
    lo = scaled_biased_density(d, c, side.s, side.t);
    out.found = true;
    out.s = std::move(side.s);
    out.t = std::move(side.t);
  }
  out.biased_upper = root_c * (out.found ? lo : hi).to_double();
  return out;
}

bool exists_denser_biased_pair(const DirectedGraph& d, Ratio c, std::span<const VertexId> s,
                               std::span<const VertexId> t) {
  Rational h = scaled_biased_density(d, c, s, t);
  ExactFlowNetwork net = build_dds_network_exact(d, c, h.num, h.den);
  net.max_flow();
  return !dds_saturated(net, d, c, h.den);
}

}  // namespace dsd
