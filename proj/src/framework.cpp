#include "dsd/framework.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <utility>

#include <json.hpp>

#include "dsd/dds.hpp"
#include "dsd/flow.hpp"
#include "dsd/peeling.hpp"

namespace dsd {
namespace {

constexpr std::array<std::pair<UdsAlgo, std::string_view>, 13> kUdsNames{{
    {UdsAlgo::kFlowExact, "flow_exact"},
    {UdsAlgo::kCoreExact, "core_exact"},
    {UdsAlgo::kFwExact, "fw_exact"},
    {UdsAlgo::kMwuExact, "mwu_exact"},
    {UdsAlgo::kFistaExact, "fista_exact"},
    {UdsAlgo::kGreedy, "greedy"},
    {UdsAlgo::kGreedyPp, "greedy_pp"},
    {UdsAlgo::kCoreApp, "core_app"},
    {UdsAlgo::kFwApp, "fw_app"},
    {UdsAlgo::kMwuApp, "mwu_app"},
    {UdsAlgo::kFistaApp, "fista_app"},
    {UdsAlgo::kFlowApp, "flow_app"},
    {UdsAlgo::kGreedyM, "greedy_m"},
}};

constexpr std::array<std::pair<DdsAlgo, std::string_view>, 7> kDdsNames{{
    {DdsAlgo::kDflowExact, "dflow_exact"},
    {DdsAlgo::kDcExact, "dc_exact"},
    {DdsAlgo::kDfwExact, "dfw_exact"},
    {DdsAlgo::kDgreedy, "dgreedy"},
    {DdsAlgo::kXycoreApp, "xycore_app"},
    {DdsAlgo::kWcoreApp, "wcore_app"},
    {DdsAlgo::kDfwApp, "dfw_app"},
}};

template <typename Enum, std::size_t N>
Enum lookup(const std::array<std::pair<Enum, std::string_view>, N>& table, std::string_view name,
            const char* what) {
  for (const auto& [value, label] : table) {
    if (label == name) return value;
  }
  throw UsageError(std::string("unknown ") + what + ": " + std::string(name));
}

template <typename Enum, std::size_t N>
std::string_view label_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [v, label] : table) {
    if (v == value) return label;
  }
  return "?";
}

double checked_eps(std::optional<double> eps) {
  double value = eps.value_or(kDefaultEps);
  if (!(value > 0.0)) throw UsageError("eps must be positive");
  return value;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string format_double(const char* fmt, double value) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), fmt, value);
  return buf.data();
}

}  // namespace

UdsAlgo parse_uds_algo(std::string_view name) { return lookup(kUdsNames, name, "undirected algorithm"); }
DdsAlgo parse_dds_algo(std::string_view name) { return lookup(kDdsNames, name, "directed algorithm"); }
std::string_view algo_name(UdsAlgo algo) { return label_of(kUdsNames, algo); }
std::string_view algo_name(DdsAlgo algo) { return label_of(kDdsNames, algo); }

std::vector<UdsAlgo> all_uds_algos() {
  std::vector<UdsAlgo> out;
  for (const auto& entry : kUdsNames) out.push_back(entry.first);
  return out;
}

std::vector<DdsAlgo> all_dds_algos() {
  std::vector<DdsAlgo> out;
  for (const auto& entry : kDdsNames) out.push_back(entry.first);
  return out;
}

bool is_exact(UdsAlgo algo) {
  switch (algo) {
    case UdsAlgo::kFlowExact:
    case UdsAlgo::kCoreExact:
    case UdsAlgo::kFwExact:
    case UdsAlgo::kMwuExact:
    case UdsAlgo::kFistaExact:
      return true;
    default:
      return false;
  }
}

bool is_exact(DdsAlgo algo) {
  return algo == DdsAlgo::kDflowExact || algo == DdsAlgo::kDcExact || algo == DdsAlgo::kDfwExact;
}

CpReduction parse_reduction(std::string_view name) {
  if (name == "none") return CpReduction::kNone;
  if (name == "single") return CpReduction::kSingle;
  if (name == "multi") return CpReduction::kMulti;
  throw UsageError("unknown reduction: " + std::string(name));
}

std::string_view reduction_name(CpReduction reduction) {
  switch (reduction) {
    case CpReduction::kSingle:
      return "single";
    case CpReduction::kMulti:
      return "multi";
    default:
      return "none";
  }
}

UpdateStrategy parse_strategy(std::string_view name) {
  if (name == "sequential") return UpdateStrategy::kSequential;
  if (name == "simultaneous") return UpdateStrategy::kSimultaneous;
  throw UsageError("unknown strategy: " + std::string(name));
}

std::string_view strategy_name(UpdateStrategy strategy) {
  return strategy == UpdateStrategy::kSimultaneous ? "simultaneous" : "sequential";
}

DsResult run_uds(const UndirectedGraph& g, const UdsRunOptions& options) {
  if (is_exact(options.algo) && options.eps) {
    throw UsageError(std::string(algo_name(options.algo)) + " is exact and takes no --eps");
  }
  const auto start = std::chrono::steady_clock::now();

  auto run_cp = [&](CpMethod method, CpOptions::Stop stop) {
    CpOptions cp;
    cp.schedule.method = method;
    cp.schedule.strategy = options.strategy;
    cp.stop = stop;
    cp.reduction = options.reduction;
    if (stop == CpOptions::Stop::kApprox) cp.eps = checked_eps(options.eps);
    if (options.iters) {
      cp.iteration_cap = *options.iters;
    } else if (options.iteration_cap) {
      cp.iteration_cap = *options.iteration_cap;
    }
    return solve_cp_uds(g, cp).result;
  };

  const std::size_t rounds = options.iters.value_or(kDefaultPeelingRounds);
  DsResult result;
  switch (options.algo) {
    case UdsAlgo::kFlowExact:
      result = uds_flow_exact(g, FlowReduction::kNone);
      break;
    case UdsAlgo::kCoreExact:
      result = uds_flow_exact(g, FlowReduction::kMulti);
      break;
    case UdsAlgo::kFwExact:
      result = run_cp(CpMethod::kFrankWolfe, CpOptions::Stop::kExact);
      break;
    case UdsAlgo::kMwuExact:
      result = run_cp(CpMethod::kMwu, CpOptions::Stop::kExact);
      break;
    case UdsAlgo::kFistaExact:
      result = run_cp(CpMethod::kFista, CpOptions::Stop::kExact);
      break;
    case UdsAlgo::kFwApp:
      result = run_cp(CpMethod::kFrankWolfe, CpOptions::Stop::kApprox);
      break;
    case UdsAlgo::kMwuApp:
      result = run_cp(CpMethod::kMwu, CpOptions::Stop::kApprox);
      break;
    case UdsAlgo::kFistaApp:
      result = run_cp(CpMethod::kFista, CpOptions::Stop::kApprox);
      break;
    case UdsAlgo::kGreedy:
      result = greedy(g);
      break;
    case UdsAlgo::kGreedyPp:
      result = greedy_pp(g, rounds);
      break;
    case UdsAlgo::kGreedyM:
      result = greedy_pp_reduced(g, rounds);
      break;
    case UdsAlgo::kCoreApp:
      result = core_app(g);
      break;
    case UdsAlgo::kFlowApp:
      result = uds_flow_approx(g, checked_eps(options.eps), options.iters);
      break;
  }
  result.stats.elapsed_ms = elapsed_since(start);
  return result;
}

DsResult run_dds(const DirectedGraph& d, const DdsRunOptions& options) {
  if (is_exact(options.algo) && options.eps) {
    throw UsageError(std::string(algo_name(options.algo)) + " is exact and takes no --eps");
  }
  if (options.gamma < 0.0 || options.gamma > 1.0) throw UsageError("gamma must lie in [0, 1]");
  const auto start = std::chrono::steady_clock::now();

  DcOptions dc;
  dc.adjust_intervals = options.adjust_intervals;
  dc.gamma = options.gamma;
  dc.iteration_cap = options.iteration_cap;
  DsResult result;
  switch (options.algo) {
    case DdsAlgo::kDflowExact:
      result = dds_flow_exact(d, DdsStrategy::kEnumerateAll, options.gamma);
      break;
    case DdsAlgo::kDcExact:
      result = dds_flow_exact(d, DdsStrategy::kDivideConquer, options.gamma, options.adjust_intervals);
      break;
    case DdsAlgo::kDfwExact:
      dc.solver = RatioSolver::kFrankWolfe;
      result = divide_and_conquer(d, dc);
      break;
    case DdsAlgo::kDfwApp:
      dc.solver = RatioSolver::kFrankWolfe;
      dc.eps = checked_eps(options.eps);
      result = divide_and_conquer(d, dc);
      break;
    case DdsAlgo::kDgreedy:
      result = d_greedy(d);
      break;
    case DdsAlgo::kXycoreApp:
      result = xy_core_app(d);
      break;
    case DdsAlgo::kWcoreApp:
      result = w_core_app(d);
      break;
  }
  result.stats.elapsed_ms = elapsed_since(start);
  return result;
}

DsResult brute_force_uds(const UndirectedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw GraphError("brute_force_uds supports at most 20 vertices");
  if (n == 0) throw GraphError("brute_force_uds needs a vertex");
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  // edges[mask] built from mask without its lowest vertex.
  const std::uint32_t full = 1U << n;
  std::vector<std::uint16_t> edges(full, 0);
  std::uint32_t best_mask = 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    auto low = static_cast<unsigned>(std::countr_zero(mask));
    std::uint32_t rest = mask & (mask - 1);
    edges[mask] = static_cast<std::uint16_t>(edges[rest] + std::popcount(adj[low] & rest));
    auto size = static_cast<std::uint64_t>(std::popcount(mask));
    auto best_size = static_cast<std::uint64_t>(std::popcount(best_mask));
    if (static_cast<std::uint64_t>(edges[mask]) * best_size > static_cast<std::uint64_t>(edges[best_mask]) * size) {
      best_mask = mask;
    }
  }
  VertexSet s;
  for (VertexId v = 0; v < n; ++v) {
    if (best_mask >> v & 1U) s.push_back(v);
  }
  DsResult result = make_result(g, std::move(s));
  result.verified = true;
  return result;
}

DsResult brute_force_dds(const DirectedGraph& d) {
  const std::size_t n = d.num_vertices();
  if (n > 8) throw GraphError("brute_force_dds supports at most 8 vertices");
  if (n == 0) throw GraphError("brute_force_dds needs a vertex");
  std::vector<std::uint32_t> out(n, 0);
  for (const Edge& a : d.arcs()) out[a.u] |= 1U << a.v;

  const std::uint32_t full = 1U << n;
  std::uint32_t best_s = 1, best_t = 1;
  std::uint64_t best_e = 0, best_st = 1;
  for (std::uint32_t s = 1; s < full; ++s) {
    for (std::uint32_t t = 1; t < full; ++t) {
      std::uint64_t e = 0;
      for (VertexId u = 0; u < n; ++u) {
        if (s >> u & 1U) e += static_cast<std::uint64_t>(std::popcount(out[u] & t));
      }
      std::uint64_t st = static_cast<std::uint64_t>(std::popcount(s)) * static_cast<std::uint64_t>(std::popcount(t));
      // e^2 / st > best_e^2 / best_st
      if (e * e * best_st > best_e * best_e * st) {
        best_e = e;
        best_st = st;
        best_s = s;
        best_t = t;
      }
    }
  }
  VertexSet s, t;
  for (VertexId v = 0; v < n; ++v) {
    if (best_s >> v & 1U) s.push_back(v);
    if (best_t >> v & 1U) t.push_back(v);
  }
  DsResult result = make_result(d, std::move(s), std::move(t));
  result.verified = true;
  return result;
}

UndirectedGraph gen_two_clique(std::size_t k, double removal_fraction, std::uint64_t seed) {
  if (k < 3) throw UsageError("two-clique generator needs k >= 3");
  if (removal_fraction < 0.0 || removal_fraction >= 1.0) throw UsageError("removal fraction must lie in [0, 1)");
  std::vector<Edge> first, second;
  for (VertexId u = 0; u < k; ++u) {
    for (VertexId v = u + 1; v < k; ++v) {
      first.push_back({u, v});
      second.push_back({static_cast<VertexId>(u + k), static_cast<VertexId>(v + k)});
    }
  }
  auto removed = static_cast<std::size_t>(std::floor(removal_fraction * static_cast<double>(second.size())));
  std::mt19937_64 rng(seed);
  std::shuffle(second.begin(), second.end(), rng);
  second.erase(second.begin(), second.begin() + static_cast<std::ptrdiff_t>(removed));

  std::vector<Edge> edges = std::move(first);
  edges.insert(edges.end(), second.begin(), second.end());
  edges.push_back({static_cast<VertexId>(k - 1), static_cast<VertexId>(k)});
  return UndirectedGraph(2 * k, edges);
}

std::optional<std::size_t> iteration_cap_from_env() {
  const char* raw = std::getenv("DSD_ITER_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) return std::nullopt;
  return static_cast<std::size_t>(value);
}

std::string_view csv_header() {
  return "dataset,algo,eps,reduction,strategy,gamma,density,s_size,t_size,iterations,ratios_probed,reductions,"
         "elapsed_ms,verified";
}

std::string csv_row(const RunRecord& r) {
  const RunStats& st = r.result.stats;
  std::string row;
  row += r.dataset + ',' + r.algo + ',';
  row += (r.eps ? format_double("%g", *r.eps) : std::string()) + ',';
  row += r.reduction + ',' + r.strategy + ',';
  row += (r.gamma ? format_double("%g", *r.gamma) : std::string()) + ',';
  row += format_double("%.12g", r.result.density) + ',';
  row += std::to_string(r.result.s.size()) + ',' + std::to_string(r.result.t.size()) + ',';
  row += std::to_string(st.iterations) + ',' + std::to_string(st.ratios_probed) + ',' +
         std::to_string(st.reductions) + ',';
  row += (r.timing ? format_double("%.3f", st.elapsed_ms) : std::string()) + ',';
  row += r.result.verified ? "true" : "false";
  return row;
}

std::optional<long> peak_rss_kib() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
  return usage.ru_maxrss;
}

std::string json_record(const RunRecord& r, std::span<const std::int64_t> labels) {
  auto as_labels = [&](const VertexSet& set) {
    nlohmann::json out = nlohmann::json::array();
    for (VertexId v : set) {
      if (labels.empty()) {
        out.push_back(v);
      } else {
        out.push_back(labels[v]);
      }
    }
    return out;
  };
  const RunStats& st = r.result.stats;
  nlohmann::json j;
  j["dataset"] = r.dataset;
  j["algo"] = r.algo;
  j["eps"] = r.eps ? nlohmann::json(*r.eps) : nlohmann::json(nullptr);
  j["reduction"] = r.reduction;
  j["strategy"] = r.strategy;
  j["gamma"] = r.gamma ? nlohmann::json(*r.gamma) : nlohmann::json(nullptr);
  j["density"] = r.result.density;
  j["upper_bound"] = r.result.upper_bound;
  j["s_size"] = r.result.s.size();
  j["t_size"] = r.result.t.size();
  j["iterations"] = st.iterations;
  j["ratios_probed"] = st.ratios_probed;
  j["reductions"] = st.reductions;
  j["elapsed_ms"] = r.timing ? nlohmann::json(st.elapsed_ms) : nlohmann::json(nullptr);
  j["verified"] = r.result.verified;
  j["s"] = as_labels(r.result.s);
  j["t"] = as_labels(r.result.t);
  if (r.timing) {
    auto rss = peak_rss_kib();
    j["peak_rss_kib"] = rss ? nlohmann::json(*rss) : nlohmann::json(nullptr);
  }
  return j.dump();
}

}  // namespace dsd
