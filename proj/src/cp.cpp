#include "dsd/cp.hpp"

#include <algorithm>
#include <cmath>

#include "dsd/core.hpp"
#include "dsd/extract.hpp"

namespace dsd {

VwuStateUds init_state_uds(const UndirectedGraph& g) {
  VwuStateUds state{std::vector<double>(g.num_edges(), 0.5), {}};
  refresh_loads(g, state);
  return state;
}

namespace {

// Exact minimiser of sum w^2 along the segment toward the target shares.
double line_search_step(const UndirectedGraph& g, const VwuStateUds& state, const std::vector<double>& target) {
  std::vector<double> dw(g.num_vertices(), 0.0);
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    double d = target[e] - state.share[e];
    dw[edges[e].u] += d;
    dw[edges[e].v] -= d;
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t v = 0; v < dw.size(); ++v) {
    num -= state.w[v] * dw[v];
    den += dw[v] * dw[v];
  }
  if (den <= 0.0) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace

void vwu_step(const UndirectedGraph& g, VwuStateUds& state, std::size_t t, const StepSchedule& schedule) {
  auto edges = g.edges();
  if (schedule.strategy == UpdateStrategy::kSimultaneous) {
    const double gamma = schedule.step(t);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge& edge = edges[e];
      double target = state.w[edge.u] <= state.w[edge.v] ? 1.0 : 0.0;
      double next = (1.0 - gamma) * state.share[e] + gamma * target;
      double delta = next - state.share[e];
      state.share[e] = next;
      state.w[edge.u] += delta;
      state.w[edge.v] -= delta;
    }
    refresh_loads(g, state);
    return;
  }

  std::vector<double> target(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    target[e] = state.w[edges[e].u] <= state.w[edges[e].v] ? 1.0 : 0.0;
  }
  const bool search = schedule.line_search && schedule.method == CpMethod::kFrankWolfe;
  const double gamma = search ? line_search_step(g, state, target) : schedule.step(t);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    state.share[e] = (1.0 - gamma) * state.share[e] + gamma * target[e];
  }
  refresh_loads(g, state);
}

void fista_step(const UndirectedGraph& g, VwuStateUds& state, FistaMomentum& momentum) {
  auto edges = g.edges();
  if (momentum.extrapolated.size() != edges.size()) {
    momentum.extrapolated = state.share;
    momentum.theta = 1.0;
  }
  std::vector<double>& y = momentum.extrapolated;
  std::vector<double> wy(g.num_vertices(), 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    wy[edges[e].u] += y[e];
    wy[edges[e].v] += 1.0 - y[e];
  }

  const double eta = 1.0 / (2.0 * static_cast<double>(std::max<std::size_t>(g.max_degree(), 1)));
  const double theta_next = (1.0 + std::sqrt(1.0 + 4.0 * momentum.theta * momentum.theta)) / 2.0;
  const double beta = (momentum.theta - 1.0) / theta_next;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    // The share pair (x, 1 - x) lives on a segment, so projection is a clamp.
    double next = std::clamp(y[e] - eta * (wy[edges[e].u] - wy[edges[e].v]), 0.0, 1.0);
    y[e] = next + beta * (next - state.share[e]);
    state.share[e] = next;
  }
  momentum.theta = theta_next;
  refresh_loads(g, state);
}

namespace {

// Carries the shares of the edges that survive into a smaller induced
// subgraph. Both edge lists are sorted in parent ids, so one merge suffices.
VwuStateUds restrict_state(const InducedSubgraph& from, const VwuStateUds& state, const InducedSubgraph& to) {
  VwuStateUds out{std::vector<double>(to.graph.num_edges(), 0.5), {}};
  auto old_edges = from.graph.edges();
  auto new_edges = to.graph.edges();
  std::size_t j = 0;
  for (std::size_t e = 0; e < new_edges.size(); ++e) {
    Edge target{to.to_parent[new_edges[e].u], to.to_parent[new_edges[e].v]};
    while (j < old_edges.size() &&
           Edge{from.to_parent[old_edges[j].u], from.to_parent[old_edges[j].v]} < target) {
      ++j;
    }
    out.share[e] = state.share[j];
  }
  refresh_loads(to.graph, out);
  return out;
}

}  // namespace

CpRun solve_cp_uds(const UndirectedGraph& g, const CpOptions& options) {
  CoreDecomposition cores = core_numbers(g);
  DensityBounds initial = initial_bounds(cores);

  CpRun run;
  RunStats& stats = run.result.stats;
  VertexSet best;
  Rational lower(0);
  double upper = initial.upper.to_double();

  InducedSubgraph work{g, all_vertices(g.num_vertices())};
  std::int64_t core_level = 0;
  auto reduce_to = [&](std::int64_t level) {
    if (level <= core_level) return false;
    core_level = level;
    InducedSubgraph next = induced_subgraph(g, k_core(cores, static_cast<std::uint32_t>(level)));
    run.state = restrict_state(work, run.state, next);
    work = std::move(next);
    if (stats.reductions++ == 0) stats.reduced_edges = work.graph.num_edges();
    return true;
  };

  run.state = init_state_uds(g);
  stats.reduced_edges = g.num_edges();
  if (options.reduction != CpReduction::kNone) {
    best = densest_component(g, k_core(cores, cores.k_star));
    lower = Rational(static_cast<std::int64_t>(count_edges(g, best)), static_cast<std::int64_t>(best.size()));
    Rational start = options.reduction == CpReduction::kSingle ? initial.lower : std::max(initial.lower, lower);
    reduce_to(ceil_on_grid(start, 1));
  }

  FistaMomentum momentum;
  bool certified = false;
  auto checkpoint = [&](std::size_t t) {
    VertexSet local = pava_extract(work.graph, run.state.w);
    Rational found(static_cast<std::int64_t>(count_edges(work.graph, local)), static_cast<std::int64_t>(local.size()));
    if (best.empty() || found > lower) {
      best = map_to_parent(local, work.to_parent);
      lower = found;
    }
    upper = std::min(upper, density_upper_bound(work.graph, run.state.w));
    run.trace.push_back({t, lower.to_double(), upper, found.to_double(), work.graph.num_edges()});

    bool done = false;
    if (options.stop == CpOptions::Stop::kExact) {
      const std::size_t n = work.graph.num_vertices();
      done = verify_exact_cp(work.graph, local, run.state) || (n >= 2 && exact_stop(upper, lower, n));
      certified = done;
    } else if (options.stop == CpOptions::Stop::kApprox) {
      done = upper <= (1.0 + options.eps) * lower.to_double();
      certified = done;
    }
    if (!done && options.reduction == CpReduction::kMulti && reduce_to(ceil_on_grid(lower, 1))) {
      momentum = FistaMomentum{};
    }
    return done;
  };

  const std::size_t limit =
      options.stop == CpOptions::Stop::kIterations ? options.iterations : options.iteration_cap;
  std::size_t next_check = std::max<std::size_t>(options.first_checkpoint, 1);
  std::size_t t = 0;
  bool checked_last = false;
  while (t < limit) {
    ++t;
    if (options.schedule.method == CpMethod::kFista) {
      fista_step(work.graph, run.state, momentum);
    } else {
      vwu_step(work.graph, run.state, t, options.schedule);
    }
    checked_last = false;
    if (t == next_check || t == limit) {
      if (t == next_check) next_check *= 2;
      checked_last = true;
      if (checkpoint(t)) break;
    }
  }
  if (!checked_last) checkpoint(t);

  DsResult result = make_result(g, best);
  result.stats = stats;
  result.stats.iterations = t;
  result.verified = certified;
  result.upper_bound = certified && options.stop == CpOptions::Stop::kExact ? result.density
                                                                             : std::max(result.density, upper);
  run.result = std::move(result);
  return run;
}

VwuStateDds init_state_dds(const DirectedGraph& d, double c) {
  VwuStateDds state;
  state.c = c;
  state.alpha.assign(d.num_edges(), 0.5);
  refresh_loads(d, state);
  return state;
}

void vwu_step_dds(const DirectedGraph& d, VwuStateDds& state, std::size_t t, const StepSchedule& schedule) {
  auto arcs = d.arcs();
  const double gamma = schedule.step(t);
  const double to_alpha = 2.0 * std::sqrt(state.c);
  const double to_beta = 2.0 / std::sqrt(state.c);
  if (schedule.strategy == UpdateStrategy::kSimultaneous) {
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      double target = state.w_alpha[arcs[e].u] <= state.w_beta[arcs[e].v] ? 1.0 : 0.0;
      double next = (1.0 - gamma) * state.alpha[e] + gamma * target;
      double delta = next - state.alpha[e];
      state.alpha[e] = next;
      state.w_alpha[arcs[e].u] += to_alpha * delta;
      state.w_beta[arcs[e].v] -= to_beta * delta;
    }
  } else {
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      double target = state.w_alpha[arcs[e].u] <= state.w_beta[arcs[e].v] ? 1.0 : 0.0;
      state.alpha[e] = (1.0 - gamma) * state.alpha[e] + gamma * target;
    }
  }
  refresh_loads(d, state);
}

RatioSolve solve_ratio_cp(const DirectedGraph& d, Ratio c, double eps, std::size_t iteration_cap) {
  const double root_c = std::sqrt(c.value());
  const auto q = static_cast<double>((c.a + c.b) * d.num_vertices());
  const double resolution = 1.0 / (q * q);
  const StepSchedule schedule{};

  VwuStateDds state = init_state_dds(d, c.value());
  RatioSolve out;
  out.verified = false;
  double best_density = -1.0;
  double objective = state.objective();
  auto consider = [&](const VertexSet& s, const VertexSet& t) {
    if (s.empty() || t.empty()) return;
    double rho = density(d, s, t);
    if (rho > best_density) {
      best_density = rho;
      out.s = s;
      out.t = t;
    }
  };

  std::size_t next_check = 16;
  std::size_t t = 0;
  while (t < iteration_cap) {
    ++t;
    vwu_step_dds(d, state, t, schedule);
    if (t != next_check && t != iteration_cap) continue;
    if (t == next_check) next_check *= 2;

    DirectedCandidates cand = pava_extract_directed(d, state);
    objective = std::min(objective, state.objective());
    consider(cand.s, cand.t);
    consider(cand.biased_s, cand.biased_t);
    const double arcs = static_cast<double>(count_arcs(d, cand.biased_s, cand.biased_t));
    const double h = 2.0 * c.b * arcs / (c.b * static_cast<double>(cand.biased_s.size()) +
                                          c.a * static_cast<double>(cand.biased_t.size()));
    if (eps == 0.0) {
      // Distinct values of h are at least 1/q^2 apart, so a smaller gap to the
      // objective (which bounds h from above) pins the optimum.
      bool tight = objective / root_c - h < resolution - 1e-9 * std::max(1.0, objective);
      if (tight || !exists_denser_biased_pair(d, c, cand.biased_s, cand.biased_t)) {
        out.verified = true;
        out.biased_upper = root_c * h;
        break;
      }
    } else if (objective <= (1.0 + eps) * root_c * h) {
      out.verified = true;
      out.biased_upper = objective;
      break;
    }
  }
  if (!out.verified) out.biased_upper = objective;
  out.found = !out.s.empty();
  out.iterations = t;
  return out;
}

}  // namespace dsd
