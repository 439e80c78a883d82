#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsd/cp.hpp"
#include "dsd/graph.hpp"

namespace dsd {

/// Bad algorithm names or flag combinations.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class UdsAlgo {
  kFlowExact,
  kCoreExact,
  kFwExact,
  kMwuExact,
  kFistaExact,
  kGreedy,
  kGreedyPp,
  kCoreApp,
  kFwApp,
  kMwuApp,
  kFistaApp,
  kFlowApp,
  kGreedyM,
};

enum class DdsAlgo { kDflowExact, kDcExact, kDfwExact, kDgreedy, kXycoreApp, kWcoreApp, kDfwApp };

UdsAlgo parse_uds_algo(std::string_view name);
DdsAlgo parse_dds_algo(std::string_view name);
std::string_view algo_name(UdsAlgo algo);
std::string_view algo_name(DdsAlgo algo);
std::vector<UdsAlgo> all_uds_algos();
std::vector<DdsAlgo> all_dds_algos();

bool is_exact(UdsAlgo algo);
bool is_exact(DdsAlgo algo);

CpReduction parse_reduction(std::string_view name);
std::string_view reduction_name(CpReduction reduction);
UpdateStrategy parse_strategy(std::string_view name);
std::string_view strategy_name(UpdateStrategy strategy);

struct UdsRunOptions {
  UdsAlgo algo = UdsAlgo::kFlowExact;
  /// Required by the approximation algorithms that take a ratio; rejected
  /// by the exact ones.
  std::optional<double> eps;
  CpReduction reduction = CpReduction::kNone;
  UpdateStrategy strategy = UpdateStrategy::kSequential;
  /// Passes for greedy_pp / greedy_m, blocking rounds for flow_app, and the
  /// iteration cap for the CP solvers.
  std::optional<std::size_t> iters;
  /// Safety cap for CP solvers when `iters` is absent.
  std::optional<std::size_t> iteration_cap;
};

struct DdsRunOptions {
  DdsAlgo algo = DdsAlgo::kDflowExact;
  std::optional<double> eps;
  double gamma = 0.0;
  bool adjust_intervals = true;
  std::optional<std::size_t> iteration_cap;
};

/// Greedy++ pass count when none is given.
inline constexpr std::size_t kDefaultPeelingRounds = 10;
/// eps used by approximation algorithms when none is given.
inline constexpr double kDefaultEps = 0.1;

/// Runs one algorithm and fills in elapsed_ms. Throws UsageError on an
/// incompatible option set.
DsResult run_uds(const UndirectedGraph& g, const UdsRunOptions& options);
DsResult run_dds(const DirectedGraph& d, const DdsRunOptions& options);

/// Exhaustive search, n <= 20.
DsResult brute_force_uds(const UndirectedGraph& g);
/// Exhaustive search over (S, T) pairs, n <= 8.
DsResult brute_force_dds(const DirectedGraph& d);

/// Two k-cliques on 0..k-1 and k..2k-1 joined by the edge (k-1, k), with
/// floor(fraction * k(k-1)/2) edges of the second clique removed uniformly
/// at random.
UndirectedGraph gen_two_clique(std::size_t k, double removal_fraction, std::uint64_t seed);

/// DSD_ITER_CAP when set to a positive integer.
std::optional<std::size_t> iteration_cap_from_env();

/// One output row.
struct RunRecord {
  std::string dataset;
  std::string algo;
  std::optional<double> eps;
  std::string reduction;
  std::string strategy;
  std::optional<double> gamma;
  DsResult result;
  bool timing = true;
};

std::string_view csv_header();
std::string csv_row(const RunRecord& record);
/// JSON object with the CSV fields plus the vertex sets (as input labels when
/// `labels` is non-empty) and peak resident memory where available.
std::string json_record(const RunRecord& record, std::span<const std::int64_t> labels);

/// Peak resident set size in KiB, if the platform reports it.
std::optional<long> peak_rss_kib();

}  // namespace dsd
