#include "dsd/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>

#include "dsd/core.hpp"
#include "dsd/dds.hpp"

namespace dsd {
namespace {

using Entry = std::pair<std::uint64_t, VertexId>;
using MinHeap = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

struct PeelResult {
  VertexSet best;
  std::size_t edges = 0;
};

// One load-carrying pass over all of g. Entries in the heap go stale when a
// neighbour is removed; they are skipped on pop by re-checking the key.
PeelResult peel_pass(const UndirectedGraph& g, std::vector<std::uint64_t>& load) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> deg(n);
  std::vector<char> removed(n, 0);
  MinHeap heap;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    heap.push({load[v] + deg[v], v});
  }

  std::vector<VertexId> order;
  order.reserve(n);
  std::size_t edges = g.num_edges();
  std::size_t best_edges = edges;
  std::size_t best_size = n;
  std::size_t best_removed = 0;
  while (order.size() < n) {
    auto [key, v] = heap.top();
    heap.pop();
    if (removed[v] || key != load[v] + deg[v]) continue;
    load[v] += deg[v];
    removed[v] = 1;
    order.push_back(v);
    edges -= deg[v];
    for (VertexId u : g.neighbors(v)) {
      if (removed[u]) continue;
      --deg[u];
      heap.push({load[u] + deg[u], u});
    }
    std::size_t alive = n - order.size();
    if (alive > 0 && edges * best_size >= best_edges * alive) {
      best_edges = edges;
      best_size = alive;
      best_removed = order.size();
    }
  }

  std::fill(removed.begin(), removed.end(), 0);
  for (std::size_t i = 0; i < best_removed; ++i) removed[order[i]] = 1;
  PeelResult out;
  out.edges = best_edges;
  for (VertexId v = 0; v < n; ++v) {
    if (!removed[v]) out.best.push_back(v);
  }
  return out;
}

bool improves(const PeelResult& c, const VertexSet& best, std::size_t best_edges) {
  return best.empty() || c.edges * best.size() > best_edges * c.best.size();
}

}  // namespace

DsResult greedy(const UndirectedGraph& g) { return greedy_pp(g, 1); }

DsResult greedy_pp(const UndirectedGraph& g, std::size_t rounds) {
  if (g.num_edges() == 0) throw GraphError("peeling needs at least one edge");
  std::vector<std::uint64_t> load(g.num_vertices(), 0);
  VertexSet best;
  std::size_t best_edges = 0;
  for (std::size_t r = 0; r < std::max<std::size_t>(rounds, 1); ++r) {
    PeelResult pass = peel_pass(g, load);
    if (improves(pass, best, best_edges)) {
      best = std::move(pass.best);
      best_edges = pass.edges;
    }
  }
  DsResult result = make_result(g, std::move(best));
  result.stats.iterations = std::max<std::size_t>(rounds, 1);
  result.stats.reduced_edges = g.num_edges();
  return result;
}

DsResult greedy_pp_reduced(const UndirectedGraph& g, std::size_t rounds) {
  CoreDecomposition cores = core_numbers(g);
  DensityBounds bounds = initial_bounds(cores);
  std::vector<std::uint64_t> load(g.num_vertices(), 0);

  RunStats stats;
  std::int64_t level = ceil_on_grid(bounds.lower, 1);
  InducedSubgraph work = induced_subgraph(g, k_core(cores, static_cast<std::uint32_t>(level)));
  stats.reductions = 1;
  stats.reduced_edges = work.graph.num_edges();

  VertexSet best;
  std::size_t best_edges = 0;
  const std::size_t total = std::max<std::size_t>(rounds, 1);
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<std::uint64_t> local(work.to_parent.size());
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = load[work.to_parent[i]];
    PeelResult pass = peel_pass(work.graph, local);
    for (std::size_t i = 0; i < local.size(); ++i) load[work.to_parent[i]] = local[i];
    pass.best = map_to_parent(pass.best, work.to_parent);
    if (improves(pass, best, best_edges)) {
      best = std::move(pass.best);
      best_edges = pass.edges;
    }
    Rational lower(static_cast<std::int64_t>(best_edges), static_cast<std::int64_t>(best.size()));
    if (ceil_on_grid(lower, 1) > level) {
      level = ceil_on_grid(lower, 1);
      work = induced_subgraph(g, k_core(cores, static_cast<std::uint32_t>(level)));
      ++stats.reductions;
    }
  }
  DsResult result = make_result(g, std::move(best));
  result.stats = stats;
  result.stats.iterations = total;
  return result;
}

DsResult core_app(const UndirectedGraph& g) {
  CoreDecomposition cores = core_numbers(g);
  if (cores.k_star == 0) throw GraphError("peeling needs at least one edge");
  DsResult result = make_result(g, k_core(cores, cores.k_star));
  result.stats.reductions = 1;
  result.stats.reduced_edges = count_edges(g, result.s);
  return result;
}

namespace {

struct DirectedPeel {
  double density = -1.0;
  VertexSet s;
  VertexSet t;
};

void peel_at_ratio(const DirectedGraph& d, Ratio c, DirectedPeel& best) {
  const std::size_t n = d.num_vertices();
  std::vector<std::uint64_t> out_deg(n), in_deg(n);
  std::vector<char> in_s(n, 1), in_t(n, 1);
  MinHeap s_heap, t_heap;
  for (VertexId v = 0; v < n; ++v) {
    out_deg[v] = d.out_degree(v);
    in_deg[v] = d.in_degree(v);
    s_heap.push({out_deg[v], v});
    t_heap.push({in_deg[v], v});
  }

  std::size_t s_size = n, t_size = n, arcs = d.num_edges();
  std::vector<std::pair<bool, VertexId>> removals;  // (from S?, vertex)
  std::size_t best_step = 0;
  bool improved = false;
  while (s_size > 0 && t_size > 0) {
    double rho = static_cast<double>(arcs) / std::sqrt(static_cast<double>(s_size) * static_cast<double>(t_size));
    if (rho > best.density) {
      best.density = rho;
      best_step = removals.size();
      improved = true;
    }
    // |S| / |T| >= a / b
    if (static_cast<std::uint64_t>(s_size) * c.b >= static_cast<std::uint64_t>(t_size) * c.a) {
      VertexId u;
      while (true) {
        auto [key, v] = s_heap.top();
        s_heap.pop();
        if (in_s[v] && key == out_deg[v]) {
          u = v;
          break;
        }
      }
      in_s[u] = 0;
      --s_size;
      arcs -= out_deg[u];
      for (VertexId v : d.out_neighbors(u)) {
        if (!in_t[v]) continue;
        --in_deg[v];
        t_heap.push({in_deg[v], v});
      }
      removals.push_back({true, u});
    } else {
      VertexId v;
      while (true) {
        auto [key, x] = t_heap.top();
        t_heap.pop();
        if (in_t[x] && key == in_deg[x]) {
          v = x;
          break;
        }
      }
      in_t[v] = 0;
      --t_size;
      arcs -= in_deg[v];
      for (VertexId u : d.in_neighbors(v)) {
        if (!in_s[u]) continue;
        --out_deg[u];
        s_heap.push({out_deg[u], u});
      }
      removals.push_back({false, v});
    }
  }
  if (!improved) return;

  std::fill(in_s.begin(), in_s.end(), 1);
  std::fill(in_t.begin(), in_t.end(), 1);
  for (std::size_t i = 0; i < best_step; ++i) {
    (removals[i].first ? in_s : in_t)[removals[i].second] = 0;
  }
  best.s.clear();
  best.t.clear();
  for (VertexId v = 0; v < n; ++v) {
    if (in_s[v]) best.s.push_back(v);
    if (in_t[v]) best.t.push_back(v);
  }
}

}  // namespace

DsResult d_greedy(const DirectedGraph& d) {
  if (d.num_edges() == 0) throw GraphError("peeling needs at least one arc");
  DirectedPeel best;
  std::size_t probed = 0;
  for (Ratio c : candidate_ratios(d.num_vertices())) {
    peel_at_ratio(d, c, best);
    ++probed;
  }
  DsResult result = make_result(d, best.s, best.t);
  result.stats.ratios_probed = probed;
  result.stats.iterations = probed;
  result.stats.reduced_edges = d.num_edges();
  return result;
}

DsResult xy_core_app(const DirectedGraph& d) {
  XyCore core = xy_core_max_product(d);
  DsResult result = make_result(d, core.s, core.t);
  result.stats.reductions = 1;
  result.stats.reduced_edges = count_arcs(d, result.s, result.t);
  return result;
}

DsResult w_core_app(const DirectedGraph& d) {
  const std::size_t n = d.num_vertices();
  if (d.num_edges() == 0) throw GraphError("peeling needs at least one arc");
  std::vector<std::uint64_t> out_deg(n), in_deg(n);
  std::vector<char> removed(n, 0);
  MinHeap heap;
  std::size_t with_out = 0, with_in = 0;
  for (VertexId v = 0; v < n; ++v) {
    out_deg[v] = d.out_degree(v);
    in_deg[v] = d.in_degree(v);
    with_out += out_deg[v] > 0;
    with_in += in_deg[v] > 0;
    heap.push({out_deg[v] * in_deg[v], v});
  }

  std::size_t arcs = d.num_edges();
  std::vector<VertexId> order;
  double best = -1.0;
  std::size_t best_removed = 0;
  auto score = [&] {
    if (with_out == 0 || with_in == 0) return;
    double rho = static_cast<double>(arcs) / std::sqrt(static_cast<double>(with_out) * static_cast<double>(with_in));
    if (rho > best) {
      best = rho;
      best_removed = order.size();
    }
  };
  score();
  while (order.size() < n) {
    auto [key, v] = heap.top();
    heap.pop();
    if (removed[v] || key != out_deg[v] * in_deg[v]) continue;
    removed[v] = 1;
    order.push_back(v);
    with_out -= out_deg[v] > 0;
    with_in -= in_deg[v] > 0;
    arcs -= out_deg[v] + in_deg[v];
    for (VertexId u : d.out_neighbors(v)) {
      if (removed[u]) continue;
      if (--in_deg[u] == 0) --with_in;
      heap.push({out_deg[u] * in_deg[u], u});
    }
    for (VertexId u : d.in_neighbors(v)) {
      if (removed[u]) continue;
      if (--out_deg[u] == 0) --with_out;
      heap.push({out_deg[u] * in_deg[u], u});
    }
    score();
  }

  std::fill(removed.begin(), removed.end(), 0);
  for (std::size_t i = 0; i < best_removed; ++i) removed[order[i]] = 1;
  VertexSet s, t;
  for (VertexId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    bool has_out = false, has_in = false;
    for (VertexId u : d.out_neighbors(v)) has_out = has_out || !removed[u];
    for (VertexId u : d.in_neighbors(v)) has_in = has_in || !removed[u];
    if (has_out) s.push_back(v);
    if (has_in) t.push_back(v);
  }
  DsResult result = make_result(d, std::move(s), std::move(t));
  result.stats.iterations = n;
  result.stats.reduced_edges = d.num_edges();
  return result;
}

}  // namespace dsd
