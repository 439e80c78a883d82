#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "dsd/dds.hpp"
#include "dsd/flow.hpp"
#include "dsd/framework.hpp"
#include "oracles.hpp"

using namespace dsd;

namespace {

// Best density over pairs with |S| / |T| exactly a / b.
double max_density_at_ratio(const DirectedGraph& d, Ratio c) {
  double best = 0.0;
  const std::uint32_t full = 1U << d.num_vertices();
  for (std::uint32_t s = 1; s < full; ++s) {
    for (std::uint32_t t = 1; t < full; ++t) {
      auto ss = static_cast<std::uint32_t>(std::popcount(s));
      auto tt = static_cast<std::uint32_t>(std::popcount(t));
      if (std::uint64_t{ss} * c.b != std::uint64_t{tt} * c.a) continue;
      double e = 0.0;
      for (const Edge& a : d.arcs()) {
        if ((s >> a.u & 1U) && (t >> a.v & 1U)) e += 1.0;
      }
      best = std::max(best, e / std::sqrt(static_cast<double>(ss) * tt));
    }
  }
  return best;
}

DcOptions dc(RatioSolver solver, double eps, bool adjust) {
  DcOptions options;
  options.solver = solver;
  options.eps = eps;
  options.adjust_intervals = adjust;
  return options;
}

}  // namespace

TEST_CASE("candidate ratio examples") {
  CHECK(candidate_ratios(1) == std::vector<Ratio>{{1, 1}});
  CHECK(candidate_ratios(2) == std::vector<Ratio>{{1, 2}, {1, 1}, {2, 1}});
  CHECK(candidate_ratios(3) == std::vector<Ratio>{{1, 3}, {1, 2}, {2, 3}, {1, 1}, {3, 2}, {2, 1}, {3, 1}});
  for (std::size_t n = 1; n <= 12; ++n) {
    auto r = candidate_ratios(n);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1].value() < r[i].value());
  }
}

TEST_CASE("bias prefactor is at most one with equality only at the true ratio") {
  std::vector<double> xs{0.1, 0.25, 0.5, 1.0, 4.0 / 3.0, 2.0, 7.0};
  for (double a : xs) {
    for (double b : xs) {
      double f = c_bias_factor(a, b);
      CHECK(f <= 1.0 + 1e-15);
      if (a == b) CHECK(f == doctest::Approx(1.0));
      if (a != b) CHECK(f < 1.0);
    }
  }
}

TEST_CASE("conquer certificate bounds every ratio on the probed graph") {
  std::mt19937_64 rng(151);
  for (int i = 0; i < 20; ++i) {
    auto d = oracle::random_digraph(rng, 5, 0.45);
    auto ratios = candidate_ratios(d.num_vertices());
    for (Ratio tried : {Ratio{1, 1}, Ratio{2, 3}, Ratio{5, 1}}) {
      auto solve = solve_ratio_flow(d, tried, 0.0);
      auto cert = conquer_bound(d, tried.value(), make_result(d, solve.s, solve.t));
      CHECK(cert.bound(tried.value()) == doctest::Approx(oracle::max_biased_density(d, tried.value())));
      for (Ratio x : ratios) {
        double at_x = max_density_at_ratio(d, x);
        CHECK(at_x <= cert.bound(x.value()) + 1e-9);
        CHECK(at_x <= degree_bound(d, x.value()) + 1e-9);
      }
    }
  }
}

TEST_CASE("certificate grows as the ratio moves away from the probe") {
  // A single probe only rules out ratios near it; the bound loosens on both
  // sides in log scale.
  ConquerCertificate cert{1.0, 1.0};
  CHECK(cert.bound(1.0) == doctest::Approx(1.0));
  CHECK(cert.bound(2.0) > cert.bound(1.0));
  CHECK(cert.bound(4.0) > cert.bound(2.0));
  CHECK(cert.bound(0.5) == doctest::Approx(cert.bound(2.0)));
}

TEST_CASE("2-cycle prunes all but one ratio") {
  auto two_cycle = oracle::make_digraph(2, {{0, 1}, {1, 0}});
  auto r = divide_and_conquer(two_cycle, dc(RatioSolver::kFlow, 0.0, true));
  CHECK(r.density == doctest::Approx(1.0));
  CHECK(r.stats.ratios_probed <= 3);
  CHECK(r.stats.ratios_probed < candidate_ratios(2).size());
}

TEST_CASE("divide and conquer is exact on small digraphs") {
  std::mt19937_64 rng(157);
  for (int i = 0; i < 40; ++i) {
    auto d = oracle::random_digraph(rng, 3 + i % 5, 0.2 + 0.1 * (i % 5));
    CAPTURE(i);
    double best = oracle::max_directed_density(d);
    auto on = divide_and_conquer(d, dc(RatioSolver::kFlow, 0.0, true));
    auto off = divide_and_conquer(d, dc(RatioSolver::kFlow, 0.0, false));
    CHECK(on.density == doctest::Approx(best).epsilon(1e-12));
    CHECK(off.density == doctest::Approx(best).epsilon(1e-12));
    CHECK(on.stats.ratios_probed <= candidate_ratios(d.num_vertices()).size());
    CHECK(density(d, on.s, on.t) == doctest::Approx(on.density));

    auto fw = dds_cp_solve(d, 0.0);
    CHECK(fw.density == doctest::Approx(best).epsilon(1e-9));
    CHECK(fw.verified);
  }
}

TEST_CASE("frank-wolfe driver examples") {
  auto two_cycle = oracle::make_digraph(2, {{0, 1}, {1, 0}});
  CHECK(dds_cp_solve(two_cycle, 0.0).density == doctest::Approx(1.0));

  auto complete = oracle::make_digraph(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  CHECK(dds_cp_solve(complete, 0.0).density == doctest::Approx(2.0));

  auto arc = oracle::make_digraph(2, {{0, 1}});
  CHECK(dds_cp_solve(arc, 0.5).density >= 1.0 / 1.5);

  auto star = oracle::make_digraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto s = divide_and_conquer(star, dc(RatioSolver::kFrankWolfe, 0.001, true));
  CHECK(s.density >= 2.0 / 1.001);
}

TEST_CASE("approximate drivers respect their ratio") {
  std::mt19937_64 rng(163);
  for (int i = 0; i < 30; ++i) {
    auto d = oracle::random_digraph(rng, 3 + i % 5, 0.35);
    double best = oracle::max_directed_density(d);
    for (double eps : {1.0, 0.1, 0.01}) {
      auto fw = dds_cp_solve(d, eps);
      CHECK(fw.density * (1.0 + eps) >= best - 1e-9);
      auto flow = divide_and_conquer(d, dc(RatioSolver::kFlow, eps, true));
      CHECK(flow.density * (1.0 + eps) >= best - 1e-9);
    }
  }
}

TEST_CASE("enumerate-all with gamma pruning stays exact") {
  std::mt19937_64 rng(167);
  for (int i = 0; i < 20; ++i) {
    auto d = oracle::random_digraph(rng, 5, 0.4);
    double best = oracle::max_directed_density(d);
    for (double gamma : {0.0, 0.5, 1.0}) {
      auto r = dds_flow_exact(d, DdsStrategy::kEnumerateAll, gamma);
      CHECK(r.density == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("iteration cap formula") {
  auto arc = oracle::make_digraph(2, {{0, 1}});
  CHECK(dds_iteration_cap(arc, 0.0) == 1'000'000);
  // kappa over {1/2, 1, 2} with unit degrees
  double kappa = 0.0;
  for (double c : {0.5, 1.0, 2.0}) {
    double r = std::sqrt(c);
    kappa += (r + 1.0 / r) * std::max(r, 1.0 / r);
  }
  CHECK(dds_iteration_cap(arc, 1.0) == static_cast<std::size_t>(std::ceil(16.0 * kappa)));
  CHECK(dds_iteration_cap(arc, 1e-4) == 1'000'000);
}
