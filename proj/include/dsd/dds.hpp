#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsd/flow.hpp"
#include "dsd/graph.hpp"

namespace dsd {

/// Every reduced fraction a/b with 1 <= a, b <= n, ascending.
std::vector<Ratio> candidate_ratios(std::size_t n);

/// What one probe at ratio c proved: no pair has c-biased density above
/// `biased_upper`. For another ratio x, every pair whose size ratio is x has
/// density at most biased_upper / c_bias_factor(c, x).
struct ConquerCertificate {
  double c = 1.0;
  double biased_upper = 0.0;

  /// Upper bound on the density of any pair with size ratio exactly x.
  double bound(double x) const;
};

/// Certificate from a probe whose exact optimum was `result` (c-biased
/// density of its pair at ratio tried_c).
ConquerCertificate conquer_bound(const DirectedGraph& d, double tried_c, const DsResult& result);

/// min(max_in / sqrt(x), max_out * sqrt(x)): no pair with |S|/|T| = x can be
/// denser than this, since |E(S,T)| <= |S| max_out and <= |T| max_in.
double degree_bound(const DirectedGraph& d, double x);

/// A contiguous run of candidate ratios, as indices into candidate_ratios(n).
struct RatioInterval {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double best_at_insertion = 0.0;
};

enum class RatioSolver { kFlow, kFrankWolfe };

struct DcOptions {
  RatioSolver solver = RatioSolver::kFlow;
  double eps = 0.0;
  bool adjust_intervals = true;
  /// Flow solver: the per-ratio binary search starts at gamma times the
  /// global lower bound.
  double gamma = 0.0;
  /// Frank-Wolfe per-ratio cap; defaults to dds_iteration_cap(d, eps).
  std::optional<std::size_t> iteration_cap;
};

/// min(1e6, 16 kappa m / eps^2) with kappa summed over the candidate ratios;
/// 1e6 when eps == 0.
std::size_t dds_iteration_cap(const DirectedGraph& d, double eps);

/// Divide and conquer over the candidate ratios with [x, y]-core reduction
/// and c-biased pruning.
DsResult divide_and_conquer(const DirectedGraph& d, const DcOptions& options);

/// DFWExact (eps == 0) or DFWApp.
DsResult dds_cp_solve(const DirectedGraph& d, double eps, std::optional<std::size_t> iteration_cap = {});

}  // namespace dsd
