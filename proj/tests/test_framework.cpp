#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <json.hpp>

#include "dsd/framework.hpp"
#include "oracles.hpp"

using namespace dsd;

TEST_CASE("algorithm names round-trip") {
  for (UdsAlgo a : all_uds_algos()) CHECK(parse_uds_algo(algo_name(a)) == a);
  for (DdsAlgo a : all_dds_algos()) CHECK(parse_dds_algo(algo_name(a)) == a);
  CHECK(all_uds_algos().size() == 13);
  CHECK(all_dds_algos().size() == 7);
  CHECK_THROWS_AS(parse_uds_algo("nope"), UsageError);
  CHECK_THROWS_AS(parse_dds_algo("greedy"), UsageError);
  CHECK(parse_reduction("multi") == CpReduction::kMulti);
  CHECK(parse_strategy("simultaneous") == UpdateStrategy::kSimultaneous);
  CHECK_THROWS_AS(parse_reduction("double"), UsageError);
  CHECK_THROWS_AS(parse_strategy("parallel"), UsageError);
  CHECK(is_exact(UdsAlgo::kCoreExact));
  CHECK_FALSE(is_exact(UdsAlgo::kGreedy));
  CHECK(is_exact(DdsAlgo::kDcExact));
  CHECK_FALSE(is_exact(DdsAlgo::kDfwApp));
}

TEST_CASE("usage errors") {
  auto g = oracle::clique(4);
  UdsRunOptions bad;
  bad.algo = UdsAlgo::kFlowExact;
  bad.eps = 0.1;
  CHECK_THROWS_AS(run_uds(g, bad), UsageError);
  UdsRunOptions zero;
  zero.algo = UdsAlgo::kFwApp;
  zero.eps = 0.0;
  CHECK_THROWS_AS(run_uds(g, zero), UsageError);

  auto d = oracle::make_digraph(2, {{0, 1}});
  DdsRunOptions gamma;
  gamma.algo = DdsAlgo::kDflowExact;
  gamma.gamma = 1.5;
  CHECK_THROWS_AS(run_dds(d, gamma), UsageError);
  DdsRunOptions eps;
  eps.algo = DdsAlgo::kDcExact;
  eps.eps = 0.5;
  CHECK_THROWS_AS(run_dds(d, eps), UsageError);

  CHECK_THROWS_AS(gen_two_clique(2, 0.1, 1), UsageError);
  CHECK_THROWS_AS(gen_two_clique(10, 1.0, 1), UsageError);
}

TEST_CASE("brute-force oracles agree with the independent test oracles") {
  for (const auto& [name, g] : oracle::uds_corpus()) {
    CAPTURE(name);
    auto r = brute_force_uds(g);
    CHECK(oracle::set_density(g, r.s) == oracle::max_density(g));
    CHECK(r.verified);
  }
  std::mt19937_64 rng(173);
  for (int i = 0; i < 20; ++i) {
    auto d = oracle::random_digraph(rng, 3 + i % 5, 0.4);
    auto r = brute_force_dds(d);
    CHECK(r.density == doctest::Approx(oracle::max_directed_density(d)).epsilon(1e-12));
  }
  CHECK_THROWS(brute_force_uds(oracle::path(21)));
}

TEST_CASE("every undirected algorithm runs through the dispatcher") {
  for (const auto& [name, g] : oracle::uds_corpus()) {
    CAPTURE(name);
    double best = oracle::max_density(g).value();
    for (UdsAlgo a : all_uds_algos()) {
      CAPTURE(algo_name(a));
      UdsRunOptions options;
      options.algo = a;
      auto r = run_uds(g, options);
      CHECK(r.density <= best + 1e-12);
      if (is_exact(a)) {
        CHECK(r.density == doctest::Approx(best).epsilon(1e-12));
        CHECK(r.verified);
      } else {
        CHECK(2.0 * r.density >= best - 1e-12);
      }
      CHECK(r.stats.elapsed_ms >= 0.0);
    }
  }
}

TEST_CASE("every directed algorithm runs through the dispatcher") {
  std::mt19937_64 rng(179);
  for (int i = 0; i < 15; ++i) {
    auto d = oracle::random_digraph(rng, 3 + i % 5, 0.4);
    double best = oracle::max_directed_density(d);
    for (DdsAlgo a : all_dds_algos()) {
      CAPTURE(algo_name(a));
      DdsRunOptions options;
      options.algo = a;
      auto r = run_dds(d, options);
      CHECK(r.density <= best + 1e-9);
      if (is_exact(a)) {
        CHECK(r.density == doctest::Approx(best).epsilon(1e-9));
      } else {
        CHECK(2.0 * r.density >= best - 1e-9);
      }
    }
  }
}

TEST_CASE("two-clique generator") {
  auto g = gen_two_clique(10, 0.2, 42);
  CHECK(g.num_vertices() == 20);
  CHECK(g.num_edges() == 45 + (45 - 9) + 1);
  CHECK(gen_two_clique(10, 0.2, 42) == g);
  CHECK(count_edges(g, all_vertices(10)) == 45);

  auto k4 = gen_two_clique(4, 0.0, 9);
  CHECK(k4.num_vertices() == 8);
  CHECK(k4.num_edges() == 13);
  auto half = gen_two_clique(4, 0.5, 9);
  CHECK(count_edges(half, VertexSet{4, 5, 6, 7}) == 3);
  // Without removals the bridge makes the whole graph denser than one clique.
  CHECK(brute_force_uds(k4).s == all_vertices(8));

  // With at least one edge removed the first clique is the unique optimum.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto h = gen_two_clique(8, 0.1, seed);
    auto best = brute_force_uds(h);
    CHECK(best.s == all_vertices(8));
  }
}

TEST_CASE("csv formatting") {
  RunRecord rec;
  rec.dataset = "toy";
  rec.algo = "greedy";
  rec.eps = 0.1;
  rec.reduction = "none";
  rec.strategy = "sequential";
  rec.result = make_result(oracle::clique(4), all_vertices(4));
  rec.result.stats.iterations = 3;
  rec.result.stats.elapsed_ms = 1.25;
  rec.result.verified = true;
  CHECK(csv_header() ==
        "dataset,algo,eps,reduction,strategy,gamma,density,s_size,t_size,iterations,ratios_probed,reductions,"
        "elapsed_ms,verified");
  CHECK(csv_row(rec) == "toy,greedy,0.1,none,sequential,,1.5,4,0,3,0,0,1.250,true");
  rec.timing = false;
  CHECK(csv_row(rec) == "toy,greedy,0.1,none,sequential,,1.5,4,0,3,0,0,,true");
}

TEST_CASE("json records use original labels") {
  RunRecord rec;
  rec.dataset = "arc";
  rec.algo = "dflow_exact";
  rec.gamma = 0.0;
  auto d = oracle::make_digraph(2, {{0, 1}});
  rec.result = make_result(d, VertexSet{0}, VertexSet{1});
  rec.timing = false;
  std::vector<std::int64_t> labels{10, 20};
  auto j = nlohmann::json::parse(json_record(rec, labels));
  CHECK(j["s"] == nlohmann::json::array({10}));
  CHECK(j["t"] == nlohmann::json::array({20}));
  CHECK(j["density"].get<double>() == doctest::Approx(1.0));
  CHECK(j["eps"].is_null());
  CHECK(j["elapsed_ms"].is_null());
  CHECK_FALSE(j.contains("peak_rss_kib"));
}

TEST_CASE("iteration cap from the environment") {
  ::setenv("DSD_ITER_CAP", "500", 1);
  CHECK(iteration_cap_from_env() == std::optional<std::size_t>{500});
  ::setenv("DSD_ITER_CAP", "abc", 1);
  CHECK_FALSE(iteration_cap_from_env().has_value());
  ::unsetenv("DSD_ITER_CAP");
  CHECK_FALSE(iteration_cap_from_env().has_value());
}

TEST_CASE("multi reduction keeps the pendant when the optimum density is one") {
  auto g = oracle::triangle_pendant();
  UdsRunOptions options;
  options.algo = UdsAlgo::kFwExact;
  options.reduction = CpReduction::kMulti;
  auto r = run_uds(g, options);
  CHECK(r.verified);
  CHECK(r.density == doctest::Approx(1.0));
  CHECK(r.stats.reduced_edges == g.num_edges());
}
