#pragma once

#include <cstddef>
#include <vector>

#include "dsd/graph.hpp"

namespace dsd {

/// Edge-share variables for the undirected quadratic program. Edge e of the
/// canonical edge list (u < v) gives `share[e]` to u and 1 - share[e] to v,
/// so the per-edge sum is 1 by construction. `w` holds the received loads.
struct VwuStateUds {
  std::vector<double> share;
  std::vector<double> w;

  double share_to_lower(std::size_t e) const { return share[e]; }
  double share_to_upper(std::size_t e) const { return 1.0 - share[e]; }
};

/// Recomputes w from the shares.
void refresh_loads(const UndirectedGraph& g, VwuStateUds& state);

/// Arc-share variables for the directed program at ratio c. Arc e = (u, v)
/// gives alpha[e] to u's out-role and beta = 1 - alpha[e] to v's in-role.
/// w_alpha(u) = 2 sqrt(c) * sum alpha, w_beta(v) = 2 / sqrt(c) * sum beta.
struct VwuStateDds {
  double c = 1.0;
  std::vector<double> alpha;
  std::vector<double> w_alpha;
  std::vector<double> w_beta;

  double beta(std::size_t e) const { return 1.0 - alpha[e]; }
  /// max over vertices of max(w_alpha, w_beta); an upper bound on every
  /// c-biased density when the state is feasible.
  double objective() const;
};

void refresh_loads(const DirectedGraph& d, VwuStateDds& state);

enum class CpMethod { kFrankWolfe, kMwu, kFista };
enum class UpdateStrategy { kSequential, kSimultaneous };

struct StepSchedule {
  CpMethod method = CpMethod::kFrankWolfe;
  UpdateStrategy strategy = UpdateStrategy::kSequential;
  /// Frank-Wolfe only: replace 2/(t+2) with the exact minimiser of the
  /// quadratic along the update direction.
  bool line_search = false;

  /// 2/(t+2) for Frank-Wolfe, 1/(t+1) for MWU.
  double step(std::size_t t) const;
};

}  // namespace dsd
