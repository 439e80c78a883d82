#include "dsd/dds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsd/core.hpp"
#include "dsd/cp.hpp"

namespace dsd {

std::vector<Ratio> candidate_ratios(std::size_t n) {
  std::vector<Ratio> out;
  for (std::uint32_t a = 1; a <= n; ++a) {
    for (std::uint32_t b = 1; b <= n; ++b) {
      if (std::gcd(a, b) == 1) out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](Ratio x, Ratio y) {
    return static_cast<std::uint64_t>(x.a) * y.b < static_cast<std::uint64_t>(y.a) * x.b;
  });
  return out;
}

double ConquerCertificate::bound(double x) const { return biased_upper / c_bias_factor(c, x); }

ConquerCertificate conquer_bound(const DirectedGraph& d, double tried_c, const DsResult& result) {
  return {tried_c, c_biased_density(d, result.s, result.t, tried_c)};
}

double degree_bound(const DirectedGraph& d, double x) {
  double root = std::sqrt(x);
  return std::min(static_cast<double>(d.max_in_degree()) / root, static_cast<double>(d.max_out_degree()) * root);
}

std::size_t dds_iteration_cap(const DirectedGraph& d, double eps) {
  constexpr std::size_t kMaxIterations = 1'000'000;
  if (eps <= 0.0) return kMaxIterations;
  double kappa = 0.0;
  const auto out = static_cast<double>(d.max_out_degree());
  const auto in = static_cast<double>(d.max_in_degree());
  for (Ratio c : candidate_ratios(d.num_vertices())) {
    double root = std::sqrt(c.value());
    kappa += (root + 1.0 / root) * std::max(root * out, in / root);
  }
  double cap = 16.0 * kappa * static_cast<double>(d.num_edges()) / (eps * eps);
  return cap >= static_cast<double>(kMaxIterations) ? kMaxIterations : static_cast<std::size_t>(std::ceil(cap));
}

namespace {

struct PendingInterval {
  RatioInterval range;
  std::vector<ConquerCertificate> certificates;
};

struct Incumbent {
  VertexSet s;
  VertexSet t;
  double density = 0.0;

  void offer(const DirectedGraph& d, VertexSet cand_s, VertexSet cand_t) {
    if (cand_s.empty() || cand_t.empty()) return;
    double rho = density_of(d, cand_s, cand_t);
    if (rho > density) {
      density = rho;
      s = std::move(cand_s);
      t = std::move(cand_t);
    }
  }

  static double density_of(const DirectedGraph& d, const VertexSet& s, const VertexSet& t) {
    return dsd::density(d, s, t);
  }
};

Incumbent initial_incumbent(const DirectedGraph& d) {
  Incumbent best;
  XyCore core = xy_core_max_product(d);
  best.offer(d, core.s, core.t);
  return best;
}

// Index in [lo, hi] whose ratio is closest to the geometric mean of the ends.
std::size_t geometric_probe(const std::vector<Ratio>& ratios, std::size_t lo, std::size_t hi) {
  const double target = 0.5 * (std::log(ratios[lo].value()) + std::log(ratios[hi].value()));
  std::size_t best = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (std::abs(std::log(ratios[i].value()) - target) < std::abs(std::log(ratios[best].value()) - target)) {
      best = i;
    }
  }
  return best;
}

}  // namespace

DsResult divide_and_conquer(const DirectedGraph& d, const DcOptions& options) {
  if (d.num_edges() == 0) throw GraphError("densest subgraph needs at least one arc");
  const std::vector<Ratio> ratios = candidate_ratios(d.num_vertices());
  const std::size_t cap = options.iteration_cap.value_or(dds_iteration_cap(d, options.eps));

  Incumbent best = initial_incumbent(d);
  RunStats stats;
  bool verified = true;

  auto prunable = [&](double x, const std::vector<ConquerCertificate>& certs) {
    double bound = degree_bound(d, x);
    for (const ConquerCertificate& cert : certs) bound = std::min(bound, cert.bound(x));
    double target = (1.0 + options.eps) * best.density;
    return bound <= target - 1e-12 * std::max(1.0, target);
  };

  std::vector<PendingInterval> stack;
  stack.push_back({{0, ratios.size() - 1, best.density}, {}});
  while (!stack.empty()) {
    PendingInterval item = std::move(stack.back());
    stack.pop_back();
    std::size_t lo = item.range.lo;
    std::size_t hi = item.range.hi;
    while (lo <= hi && prunable(ratios[lo].value(), item.certificates)) ++lo;
    while (hi > lo && prunable(ratios[hi].value(), item.certificates)) --hi;
    if (lo > hi) continue;

    const double c_l = ratios[lo].value();
    const double c_r = ratios[hi].value();
    if (options.adjust_intervals && c_r / c_l > 4.0) {
      std::size_t mid = geometric_probe(ratios, lo, hi);
      if (mid == hi) --mid;
      stack.push_back({{mid + 1, hi, best.density}, item.certificates});
      stack.push_back({{lo, mid, best.density}, std::move(item.certificates)});
      continue;
    }

    XyCore core = reduce_dds(d, best.density, c_l, c_r);
    ++stats.reductions;
    if (core.empty()) continue;
    InducedPairSubgraph sub = induced_pair_subgraph(d, core.s, core.t);
    if (stats.reductions == 1 || stats.reduced_edges == 0) stats.reduced_edges = sub.graph.num_edges();

    const std::size_t p = geometric_probe(ratios, lo, hi);
    const Ratio c = ratios[p];
    RatioSolve solve = options.solver == RatioSolver::kFlow
                           ? solve_ratio_flow(sub.graph, c, options.gamma * best.density)
                           : solve_ratio_cp(sub.graph, c, options.eps, cap);
    ++stats.ratios_probed;
    stats.iterations += solve.iterations;
    verified = verified && solve.verified;
    if (solve.found) {
      best.offer(d, map_to_parent(solve.s, sub.to_parent), map_to_parent(solve.t, sub.to_parent));
    }

    item.certificates.push_back({c.value(), solve.biased_upper});
    if (p < hi) stack.push_back({{p + 1, hi, best.density}, item.certificates});
    if (p > lo) stack.push_back({{lo, p - 1, best.density}, std::move(item.certificates)});
  }

  DsResult result = make_result(d, best.s, best.t);
  result.stats = stats;
  result.verified = verified;
  return result;
}

DsResult dds_cp_solve(const DirectedGraph& d, double eps, std::optional<std::size_t> iteration_cap) {
  DcOptions options;
  options.solver = RatioSolver::kFrankWolfe;
  options.eps = eps;
  options.iteration_cap = iteration_cap;
  return divide_and_conquer(d, options);
}

DsResult dds_flow_exact(const DirectedGraph& d, DdsStrategy strategy, double gamma, bool adjust_intervals) {
  if (strategy == DdsStrategy::kDivideConquer) {
    DcOptions options;
    options.solver = RatioSolver::kFlow;
    options.gamma = gamma;
    options.adjust_intervals = adjust_intervals;
    return divide_and_conquer(d, options);
  }
  if (d.num_edges() == 0) throw GraphError("densest subgraph needs at least one arc");
  Incumbent best = initial_incumbent(d);
  RunStats stats;
  stats.reduced_edges = d.num_edges();
  for (Ratio c : candidate_ratios(d.num_vertices())) {
    RatioSolve solve = solve_ratio_flow(d, c, gamma * best.density);
    ++stats.ratios_probed;
    stats.iterations += solve.iterations;
    if (solve.found) best.offer(d, std::move(solve.s), std::move(solve.t));
  }
  DsResult result = make_result(d, best.s, best.t);
  result.stats = stats;
  result.verified = true;
  return result;
}

}  // namespace dsd
