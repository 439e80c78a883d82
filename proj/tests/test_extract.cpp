#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "dsd/cp.hpp"
#include "dsd/extract.hpp"
#include "oracles.hpp"

using namespace dsd;

namespace {

VwuStateUds random_feasible_state(const UndirectedGraph& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VwuStateUds state;
  state.share.resize(g.num_edges());
  for (double& x : state.share) x = unit(rng);
  refresh_loads(g, state);
  return state;
}

VwuStateUds converged_state(const UndirectedGraph& g, std::size_t steps) {
  VwuStateUds state = init_state_uds(g);
  StepSchedule schedule{CpMethod::kFrankWolfe, UpdateStrategy::kSequential, true};
  for (std::size_t t = 1; t <= steps; ++t) vwu_step(g, state, t, schedule);
  return state;
}

UndirectedGraph k4_pendant() { return oracle::disjoint_union(oracle::clique(4), UndirectedGraph(1, {}), {{3, 4}}); }

}  // namespace

TEST_CASE("pava examples") {
  auto tri = oracle::clique(3);
  std::vector<double> w{3, 2, 1};
  CHECK(pava_extract(tri, w) == VertexSet{0, 1, 2});

  auto tp = oracle::triangle_pendant();
  std::vector<double> ranked{3, 3, 3, 1};
  CHECK(pava_extract(tp, ranked) == VertexSet{0, 1, 2});

  std::vector<double> uniform(4, 1.5);
  CHECK(pava_extract(oracle::clique(4), uniform) == VertexSet{0, 1, 2, 3});

  CHECK_THROWS_AS(pava_extract(UndirectedGraph(0, {}), std::vector<double>{}), GraphError);
}

TEST_CASE("weight order breaks ties by smaller id") {
  std::vector<double> w{1, 2, 2, 0, 2};
  CHECK(weight_order(w) == std::vector<VertexId>{1, 2, 4, 0, 3});
}

TEST_CASE("pava returns the best prefix found by a full rescan") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 80; ++i) {
    auto g = oracle::random_graph(rng, 3 + i % 10, 0.4);
    std::vector<double> w(g.num_vertices());
    std::uniform_int_distribution<int> pick(0, 4);
    for (double& x : w) x = pick(rng);
    auto order = weight_order(w);
    auto expected = oracle::best_prefix_by_rescan(g, order);
    auto s = pava_extract(g, w);
    CHECK(oracle::set_density(g, s) == expected);
    // Among tied prefixes the shortest one is returned.
    for (std::size_t k = 1; k < s.size(); ++k) {
      std::vector<VertexId> shorter(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      CHECK_FALSE(oracle::set_density(g, shorter) == expected);
    }
  }
}

TEST_CASE("density upper bound examples") {
  CHECK(density_upper_bound(oracle::clique(3), std::vector<double>{1, 1, 1}) == doctest::Approx(1.0));
  CHECK(density_upper_bound(oracle::make_graph(2, {{0, 1}}), std::vector<double>{0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(density_upper_bound(oracle::clique(4), std::vector<double>(4, 1.5)) == doctest::Approx(1.5));
}

TEST_CASE("sandwich holds for any feasible state") {
  std::mt19937_64 rng(73);
  for (const auto& [name, g] : oracle::uds_corpus()) {
    CAPTURE(name);
    double best = oracle::max_density(g).value();
    for (int k = 0; k < 5; ++k) {
      auto state = random_feasible_state(g, rng);
      double lower = density(g, pava_extract(g, state.w));
      double upper = density_upper_bound(g, state.w);
      CHECK(lower <= best + 1e-12);
      CHECK(best <= upper + 1e-12);
    }
  }
}

TEST_CASE("stable sets") {
  auto g = k4_pendant();
  // The optimum: K4 edges split evenly, the pendant edge loads vertex 4.
  VwuStateUds exact;
  exact.share = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0};
  refresh_loads(g, exact);
  CHECK(is_stable_set(g, all_vertices(5), exact));
  CHECK(is_stable_set(g, VertexSet{0, 1, 2, 3}, exact));
  CHECK_FALSE(is_stable_set(g, VertexSet{0, 1, 2, 4}, exact));
  CHECK_FALSE(is_stable_set(g, VertexSet{4}, exact));

  // Frank-Wolfe only approaches the optimum, so a small cross share remains.
  auto state = converged_state(g, 2000);
  CHECK(state.share[6] > 0.0);
  CHECK_FALSE(is_stable_set(g, VertexSet{0, 1, 2, 3}, state));
  CHECK(is_stable_set(g, VertexSet{0, 1, 2, 3}, state, 1e-2));
  CHECK_FALSE(is_stable_set(g, VertexSet{0, 1, 2, 4}, state, 1e-2));
}

TEST_CASE("goldberg condition examples") {
  CHECK(goldberg_condition(oracle::clique(3), VertexSet{0, 1, 2}, std::vector<double>{1, 1, 1}));
  CHECK(goldberg_condition(oracle::clique(4), VertexSet{0, 1, 2, 3}, std::vector<double>(4, 1.5)));
  // Half-degree weights on K4 plus a pendant, S = everything: the i = 4
  // prefix sits exactly at the threshold, so S is not certified.
  auto g = k4_pendant();
  std::vector<double> half_degrees{1.5, 1.5, 1.5, 2.0, 0.5};
  CHECK_FALSE(goldberg_condition(g, all_vertices(5), half_degrees));
}

TEST_CASE("verify_exact_cp examples") {
  auto tri = oracle::clique(3);
  auto tri_state = converged_state(tri, 200);
  CHECK(verify_exact_cp(tri, VertexSet{0, 1, 2}, tri_state));

  auto g = k4_pendant();
  auto state = converged_state(g, 2000);
  CHECK(verify_exact_cp(g, VertexSet{0, 1, 2, 3}, state));
  CHECK_FALSE(verify_exact_cp(g, VertexSet{4}, state));
  CHECK_FALSE(verify_exact_cp(g, VertexSet{}, state));

  // Triangle plus pendant: the whole graph ties the triangle at density 1,
  // so every optimal load is 1 and the triangle can never be strictly
  // separated. The whole vertex set is certified instead.
  auto tp = oracle::triangle_pendant();
  auto tp_state = converged_state(tp, 4000);
  CHECK_FALSE(verify_exact_cp(tp, VertexSet{0, 1, 2}, tp_state));
  CHECK(verify_exact_cp(tp, all_vertices(4), tp_state));
}

TEST_CASE("saturation check agrees with the oracle on which sets are densest within themselves") {
  CHECK(saturates_density_network(oracle::clique(4), VertexSet{0, 1, 2, 3}));
  // K4 plus pendant is not its own densest subgraph.
  CHECK_FALSE(saturates_density_network(k4_pendant(), all_vertices(5)));
  std::mt19937_64 rng(79);
  for (int i = 0; i < 30; ++i) {
    auto g = oracle::random_graph(rng, 3 + i % 7, 0.5);
    auto all = all_vertices(g.num_vertices());
    bool whole_is_densest = oracle::set_density(g, all) == oracle::max_density(g);
    CHECK(saturates_density_network(g, all) == whole_is_densest);
  }
}

TEST_CASE("verify_exact_cp is sound along FW and FISTA trajectories") {
  std::size_t accepted = 0;
  for (const auto& [name, g] : oracle::uds_corpus()) {
    CAPTURE(name);
    auto best = oracle::max_density(g);
    VwuStateUds state = init_state_uds(g);
    StepSchedule schedule{CpMethod::kFrankWolfe, UpdateStrategy::kSequential, false};
    for (std::size_t t = 1; t <= 512; ++t) {
      vwu_step(g, state, t, schedule);
      if ((t + 1) % 16 != 0) continue;
      auto s = pava_extract(g, state.w);
      if (verify_exact_cp(g, s, state)) {
        ++accepted;
        CHECK(oracle::set_density(g, s) == best);
      }
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("stop rules") {
  CHECK(exact_stop(DensityBounds{Rational(1), Rational(21, 20)}, 4));
  CHECK_FALSE(exact_stop(DensityBounds{Rational(1), Rational(13, 12)}, 4));
  CHECK(exact_stop(1.05, Rational(1), 4));
  CHECK_FALSE(exact_stop(1.0 + 1.0 / 12.0, Rational(1), 4));

  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> pos(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double lower = pos(rng);
    double g = lower + pos(rng) + 1e-6;
    CHECK(approx_stop(g, lower, 1.0));
    CHECK(approx_stop(g, 0.0, 1.0));
  }
  CHECK_FALSE(approx_stop(2.0, 1.0, 0.1));
  CHECK(approx_stop(1.01, 1.0, 0.1));
}

TEST_CASE("distinct densities on at most n vertices differ by at least 1/(n(n-1))") {
  for (std::int64_t n = 2; n <= 8; ++n) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<Rational> values;
    for (std::int64_t v = 1; v <= n; ++v) {
      for (std::int64_t e = 0; e <= v * (v - 1) / 2; ++e) {
        std::int64_t g = std::gcd(e, v);
        if (seen.insert({e / g, v / g}).second) values.emplace_back(e / g, v / g);
      }
    }
    std::sort(values.begin(), values.end());
    Rational threshold(1, n * (n - 1));
    bool touches = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
      int cmp = compare_difference(values[i], values[i - 1], threshold);
      CHECK(cmp >= 0);
      touches = touches || cmp == 0;
    }
    // For n >= 3 the bound is attained, e.g. 3/4 and 2/3 on four vertices.
    if (n >= 3) CHECK(touches);
  }
}

TEST_CASE("directed pava examples") {
  auto arc = oracle::make_digraph(2, {{0, 1}});
  auto st = init_state_dds(arc, 1.0);
  auto c = pava_extract_directed(arc, st);
  CHECK(c.s == VertexSet{0});
  CHECK(c.t == VertexSet{1});

  auto star = oracle::make_digraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto star_state = init_state_dds(star, 0.25);
  StepSchedule schedule{CpMethod::kFrankWolfe, UpdateStrategy::kSequential, false};
  for (std::size_t t = 1; t <= 200; ++t) vwu_step_dds(star, star_state, t, schedule);
  auto sc = pava_extract_directed(star, star_state);
  CHECK(sc.s == VertexSet{0});
  CHECK(sc.t == VertexSet{1, 2, 3, 4});

  auto two_cycle = oracle::make_digraph(2, {{0, 1}, {1, 0}});
  auto tc = pava_extract_directed(two_cycle, init_state_dds(two_cycle, 1.0));
  CHECK(density(two_cycle, tc.s, tc.t) == doctest::Approx(1.0));
}

TEST_CASE("directed pava never beats the directed optimum") {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 30; ++i) {
    auto d = oracle::random_digraph(rng, 6, 0.4);
    double best = oracle::max_directed_density(d);
    for (double c : {0.5, 1.0, 2.0}) {
      auto state = init_state_dds(d, c);
      StepSchedule schedule{CpMethod::kFrankWolfe, UpdateStrategy::kSequential, false};
      for (std::size_t t = 1; t <= 50; ++t) vwu_step_dds(d, state, t, schedule);
      auto cand = pava_extract_directed(d, state);
      CHECK(density(d, cand.s, cand.t) <= best + 1e-12);
      CHECK(c_biased_density(d, cand.biased_s, cand.biased_t, c) <= oracle::max_biased_density(d, c) + 1e-12);
    }
  }
}
