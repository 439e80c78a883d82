#include "dsd/vwu_state.hpp"

#include <algorithm>
#include <cmath>

namespace dsd {

void refresh_loads(const UndirectedGraph& g, VwuStateUds& state) {
  state.w.assign(g.num_vertices(), 0.0);
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    state.w[edges[e].u] += state.share[e];
    state.w[edges[e].v] += 1.0 - state.share[e];
  }
}

void refresh_loads(const DirectedGraph& d, VwuStateDds& state) {
  const double root_c = std::sqrt(state.c);
  state.w_alpha.assign(d.num_vertices(), 0.0);
  state.w_beta.assign(d.num_vertices(), 0.0);
  auto arcs = d.arcs();
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    state.w_alpha[arcs[e].u] += state.alpha[e];
    state.w_beta[arcs[e].v] += 1.0 - state.alpha[e];
  }
  for (double& x : state.w_alpha) x *= 2.0 * root_c;
  for (double& x : state.w_beta) x *= 2.0 / root_c;
}

double VwuStateDds::objective() const {
  double best = 0.0;
  for (double x : w_alpha) best = std::max(best, x);
  for (double x : w_beta) best = std::max(best, x);
  return best;
}

double StepSchedule::step(std::size_t t) const {
  const double td = static_cast<double>(t);
  return method == CpMethod::kMwu ? 1.0 / (td + 1.0) : 2.0 / (td + 2.0);
}

}  // namespace dsd
