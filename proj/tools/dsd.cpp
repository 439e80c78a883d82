// Command-line driver: single runs, brute-force oracle rows, the two-clique
// generator, and an algorithm x eps benchmark grid.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsd/framework.hpp"

namespace {

using dsd::DdsAlgo;
using dsd::UdsAlgo;

struct OutputOptions {
  std::string out;
  std::string format = "csv";
  bool no_timing = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string dataset_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

bool takes_eps(UdsAlgo algo) {
  return algo == UdsAlgo::kFwApp || algo == UdsAlgo::kMwuApp || algo == UdsAlgo::kFistaApp ||
         algo == UdsAlgo::kFlowApp;
}

bool takes_eps(DdsAlgo algo) { return algo == DdsAlgo::kDfwApp; }

std::string render(const dsd::RunRecord& record, const OutputOptions& out, std::span<const std::int64_t> labels) {
  return out.format == "json" ? dsd::json_record(record, labels) : dsd::csv_row(record);
}

// Writes rows to --out (or stdout). Appending skips the header when the file
// already has content.
void emit(const std::vector<std::string>& rows, const OutputOptions& out, bool append) {
  const bool csv = out.format == "csv";
  if (out.out.empty()) {
    if (csv) std::cout << dsd::csv_header() << '\n';
    for (const auto& row : rows) std::cout << row << '\n';
    return;
  }
  bool has_content = append && std::filesystem::exists(out.out) && std::filesystem::file_size(out.out) > 0;
  std::ofstream file(out.out, append ? std::ios::app : std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + out.out);
  if (csv && !has_content) file << dsd::csv_header() << '\n';
  for (const auto& row : rows) file << row << '\n';
  if (!file) throw IoError("failed writing output file: " + out.out);
}

dsd::RunRecord uds_record(const std::string& dataset, const dsd::UdsRunOptions& opt, dsd::DsResult result,
                          bool timing) {
  dsd::RunRecord r;
  r.dataset = dataset;
  r.algo = std::string(dsd::algo_name(opt.algo));
  r.eps = takes_eps(opt.algo) ? std::optional<double>(opt.eps.value_or(dsd::kDefaultEps)) : opt.eps;
  r.reduction = std::string(dsd::reduction_name(opt.reduction));
  r.strategy = std::string(dsd::strategy_name(opt.strategy));
  r.result = std::move(result);
  r.timing = timing;
  return r;
}

dsd::RunRecord dds_record(const std::string& dataset, const dsd::DdsRunOptions& opt, dsd::DsResult result,
                          bool timing) {
  dsd::RunRecord r;
  r.dataset = dataset;
  r.algo = std::string(dsd::algo_name(opt.algo));
  r.eps = takes_eps(opt.algo) ? std::optional<double>(opt.eps.value_or(dsd::kDefaultEps)) : opt.eps;
  r.gamma = opt.gamma;
  r.result = std::move(result);
  r.timing = timing;
  return r;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.out, "Output file (default: stdout)");
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-timing", out.no_timing, "Leave elapsed_ms blank so output is byte-stable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest subgraph discovery toolkit"};
  app.require_subcommand(1);

  std::string input;
  bool directed = false;
  std::string algo;
  std::optional<double> eps;
  std::string reduction = "none";
  std::string strategy = "sequential";
  double gamma = 0.0;
  bool adjust_intervals = true;
  std::optional<std::size_t> iters;
  OutputOptions out;

  auto* uds = app.add_subcommand("uds", "Undirected densest subgraph");
  uds->add_option("--input", input, "Edge list file")->required();
  uds->add_option("--algo", algo, "Algorithm")->required();
  uds->add_option("--eps", eps, "Approximation parameter");
  uds->add_option("--reduction", reduction, "Core reduction for CP solvers")
      ->check(CLI::IsMember({"none", "single", "multi"}));
  uds->add_option("--strategy", strategy, "Weight update strategy")
      ->check(CLI::IsMember({"sequential", "simultaneous"}));
  uds->add_option("--iters", iters, "Peeling passes, blocking rounds, or CP iteration cap");
  add_output_flags(uds, out);

  auto* dds = app.add_subcommand("dds", "Directed densest subgraph");
  dds->add_option("--input", input, "Edge list file")->required();
  dds->add_option("--algo", algo, "Algorithm")->required();
  dds->add_option("--eps", eps, "Approximation parameter");
  dds->add_option("--gamma", gamma, "Binary search starts at gamma times the lower bound");
  dds->add_option("--adjust-intervals", adjust_intervals, "Split wide ratio intervals before reduction");
  dds->add_option("--iters", iters, "Per-ratio iteration cap for Frank-Wolfe");
  add_output_flags(dds, out);

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum for small graphs");
  oracle->add_option("--input", input, "Edge list file")->required();
  oracle->add_flag("--directed", directed, "Treat input as directed");
  add_output_flags(oracle, out);

  auto* gen = app.add_subcommand("gen", "Synthetic graph generators");
  gen->require_subcommand(1);
  auto* two_clique = gen->add_subcommand("two-clique", "Two k-cliques joined by one edge");
  std::size_t k = 20;
  double remove = 0.0;
  std::uint64_t seed = 0;
  std::string gen_out;
  two_clique->add_option("--k", k, "Clique size");
  two_clique->add_option("--remove", remove, "Fraction of second-clique edges to remove");
  two_clique->add_option("--seed", seed, "Random seed");
  two_clique->add_option("--out", gen_out, "Output file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Run an algorithm x eps grid and append CSV rows");
  std::vector<std::string> inputs;
  std::string algos;
  std::string eps_grid = "1,0.1,0.01";
  bench->add_option("--input", inputs, "Edge list files")->required();
  bench->add_flag("--directed", directed, "Treat inputs as directed");
  bench->add_option("--algo", algos, "Comma-separated algorithms (default: all)");
  bench->add_option("--eps-grid", eps_grid, "Comma-separated eps values for approximation algorithms");
  bench->add_option("--reduction", reduction, "Core reduction for CP solvers")
      ->check(CLI::IsMember({"none", "single", "multi"}));
  bench->add_option("--strategy", strategy, "Weight update strategy")
      ->check(CLI::IsMember({"sequential", "simultaneous"}));
  bench->add_option("--gamma", gamma, "Binary search lower-bound factor (directed)");
  bench->add_option("--adjust-intervals", adjust_intervals, "Split wide ratio intervals (directed)");
  bench->add_option("--iters", iters, "Peeling passes, blocking rounds, or iteration cap");
  bench->add_option("--seed", seed, "Recorded for reproducibility; algorithms are deterministic");
  add_output_flags(bench, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 2;
  }

  const bool timing = !out.no_timing;
  const auto env_cap = dsd::iteration_cap_from_env();
  try {
    if (*uds) {
      auto loaded = dsd::load_undirected_file(input);
      dsd::UdsRunOptions opt;
      opt.algo = dsd::parse_uds_algo(algo);
      opt.eps = eps;
      opt.reduction = dsd::parse_reduction(reduction);
      opt.strategy = dsd::parse_strategy(strategy);
      opt.iters = iters;
      opt.iteration_cap = env_cap;
      auto record = uds_record(dataset_name(input), opt, dsd::run_uds(loaded.graph, opt), timing);
      emit({render(record, out, loaded.graph.labels())}, out, false);
    } else if (*dds) {
      auto loaded = dsd::load_directed_file(input);
      dsd::DdsRunOptions opt;
      opt.algo = dsd::parse_dds_algo(algo);
      opt.eps = eps;
      opt.gamma = gamma;
      opt.adjust_intervals = adjust_intervals;
      opt.iteration_cap = iters ? iters : env_cap;
      auto record = dds_record(dataset_name(input), opt, dsd::run_dds(loaded.graph, opt), timing);
      emit({render(record, out, loaded.graph.labels())}, out, false);
    } else if (*oracle) {
      dsd::RunRecord record;
      record.dataset = dataset_name(input);
      record.algo = "brute_force";
      record.timing = timing;
      std::vector<std::int64_t> labels;
      const auto start = std::chrono::steady_clock::now();
      if (directed) {
        auto loaded = dsd::load_directed_file(input);
        record.result = dsd::brute_force_dds(loaded.graph);
        labels.assign(loaded.graph.labels().begin(), loaded.graph.labels().end());
      } else {
        auto loaded = dsd::load_undirected_file(input);
        record.result = dsd::brute_force_uds(loaded.graph);
        labels.assign(loaded.graph.labels().begin(), loaded.graph.labels().end());
      }
      record.result.stats.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      emit({render(record, out, labels)}, out, false);
    } else if (*two_clique) {
      dsd::UndirectedGraph g = dsd::gen_two_clique(k, remove, seed);
      if (gen_out.empty()) {
        dsd::write_edge_list(std::cout, g);
      } else {
        std::ofstream file(gen_out);
        if (!file) throw IoError("cannot open output file: " + gen_out);
        dsd::write_edge_list(file, g);
        if (!file) throw IoError("failed writing output file: " + gen_out);
      }
    } else if (*bench) {
      std::vector<std::optional<double>> grid;
      for (const auto& item : split_list(eps_grid)) grid.push_back(std::stod(item));
      std::vector<std::string> rows;
      for (const auto& path : inputs) {
        if (directed) {
          auto loaded = dsd::load_directed_file(path);
          std::vector<DdsAlgo> list;
          for (const auto& name : split_list(algos)) list.push_back(dsd::parse_dds_algo(name));
          if (list.empty()) list = dsd::all_dds_algos();
          for (DdsAlgo a : list) {
            for (const auto& e : takes_eps(a) ? grid : std::vector<std::optional<double>>{std::nullopt}) {
              dsd::DdsRunOptions opt;
              opt.algo = a;
              opt.eps = e;
              opt.gamma = gamma;
              opt.adjust_intervals = adjust_intervals;
              opt.iteration_cap = iters ? iters : env_cap;
              auto record = dds_record(dataset_name(path), opt, dsd::run_dds(loaded.graph, opt), timing);
              rows.push_back(render(record, out, loaded.graph.labels()));
            }
          }
        } else {
          auto loaded = dsd::load_undirected_file(path);
          std::vector<UdsAlgo> list;
          for (const auto& name : split_list(algos)) list.push_back(dsd::parse_uds_algo(name));
          if (list.empty()) list = dsd::all_uds_algos();
          for (UdsAlgo a : list) {
            for (const auto& e : takes_eps(a) ? grid : std::vector<std::optional<double>>{std::nullopt}) {
              dsd::UdsRunOptions opt;
              opt.algo = a;
              opt.eps = e;
              opt.reduction = dsd::parse_reduction(reduction);
              opt.strategy = dsd::parse_strategy(strategy);
              opt.iters = iters;
              opt.iteration_cap = env_cap;
              auto record = uds_record(dataset_name(path), opt, dsd::run_uds(loaded.graph, opt), timing);
              rows.push_back(render(record, out, loaded.graph.labels()));
            }
          }
        }
      }
      emit(rows, out, true);
    }
  } catch (const dsd::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
