#pragma once

#include <cstddef>
#include <vector>

#include "dsd/flow.hpp"
#include "dsd/graph.hpp"
#include "dsd/vwu_state.hpp"

namespace dsd {

/// Every edge split evenly: w is half the degree.
VwuStateUds init_state_uds(const UndirectedGraph& g);

/// One Frank-Wolfe or MWU iteration (t >= 1). Each edge moves toward sending
/// its whole unit to the lighter endpoint, ties to the smaller id.
void vwu_step(const UndirectedGraph& g, VwuStateUds& state, std::size_t t, const StepSchedule& schedule);

struct FistaMomentum {
  std::vector<double> extrapolated;
  double theta = 1.0;
};

/// Projected gradient step on sum w^2 with step 1/(2 max_degree) taken from
/// the extrapolated point, followed by the Nesterov update of that point.
void fista_step(const UndirectedGraph& g, VwuStateUds& state, FistaMomentum& momentum);

enum class CpReduction { kNone, kSingle, kMulti };

struct CpOptions {
  enum class Stop {
    kIterations,  ///< run exactly `iterations` steps
    kApprox,      ///< stop once upper <= (1 + eps) * lower
    kExact,       ///< stop once the candidate is certified optimal
  };

  StepSchedule schedule;
  Stop stop = Stop::kExact;
  std::size_t iterations = 0;
  double eps = 0.0;
  CpReduction reduction = CpReduction::kNone;
  /// Hard limit on iterations in the approx and exact modes.
  std::size_t iteration_cap = 1'000'000;
  /// First checkpoint; later ones follow at doubling iteration counts.
  std::size_t first_checkpoint = 16;
};

struct CpCheckpoint {
  std::size_t iteration = 0;
  double lower = 0.0;  ///< density of the best extracted candidate so far
  double upper = 0.0;  ///< best upper bound so far
  double candidate = 0.0;  ///< density of this checkpoint's PAVA prefix
  std::size_t working_edges = 0;
};

struct CpRun {
  VwuStateUds state;  ///< final state on the working graph
  DsResult result;
  std::vector<CpCheckpoint> trace;
};

/// Runs the vertex-weight-update loop on CP(G) with optional core
/// reductions. In exact mode a run that reaches the cap without a
/// certificate returns the best candidate with `verified == false`.
CpRun solve_cp_uds(const UndirectedGraph& g, const CpOptions& options);

/// alpha = 1/2 on every arc.
VwuStateDds init_state_dds(const DirectedGraph& d, double c);

/// One Frank-Wolfe/MWU iteration on CP(c). Arc (u, v) moves toward giving
/// its unit to whichever of w_alpha(u), w_beta(v) is smaller (ties to alpha).
void vwu_step_dds(const DirectedGraph& d, VwuStateDds& state, std::size_t t, const StepSchedule& schedule);

/// Frank-Wolfe on CP(c) for one ratio. With eps == 0 the answer is the exact
/// maximiser of the c-biased density (certified by the objective gap or by a
/// flow check); otherwise the run stops when the objective is within a factor
/// 1 + eps of the best candidate's c-biased density.
RatioSolve solve_ratio_cp(const DirectedGraph& d, Ratio c, double eps, std::size_t iteration_cap);

}  // namespace dsd
