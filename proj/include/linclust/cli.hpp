#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "linclust/dp_solver.hpp"
#include "linclust/graph.hpp"
#include "linclust/objective.hpp"

namespace linclust {

/// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

/// Column order of the bench CSV. Bump the version whenever it changes.
inline constexpr int kBenchCsvVersion = 1;
inline constexpr std::string_view kBenchCsvHeader =
    "alpha,sigma,n,q,seed,algorithm,objective,Q,num_layers,rmi_vs_truth,entropy,runtime_ms";

Algorithm parse_algorithm(std::string_view name);
ObjectiveKind parse_objective(std::string_view name);

/// Builds the named objective for a collapsed graph.
PairwiseObjective make_objective(ObjectiveKind kind, const ScoredGraph& g, double lambda);

/// External ids of every layer, top layer first.
nlohmann::ordered_json layer_ids(const ScoredGraph& g, const Partition& p);

struct RunSpec {
  Algorithm algorithm = Algorithm::kDp;
  ObjectiveKind objective = ObjectiveKind::kModularity;
  double lambda = 0.5;
  bool periodic = false;
  bool directed = false;
  std::uint64_t seed = 0;
  std::size_t cap = 1000;  // dp-all output bound
  std::filesystem::path edges;
  std::filesystem::path scores;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Loads, collapses, solves, and reports:
/// {"objective", "lambda", "algorithm", "Q", "num_layers", "layers",
///  "collapsed_supernodes", "runtime_ms"}; dp-all adds "optima".
/// Throws InputError or InfeasibleError.
nlohmann::ordered_json run_solve(const RunSpec& spec);

/// Re-evaluates a solve result against its input files. With a truth file
/// ("id label" lines) also reports the reduced mutual information.
nlohmann::ordered_json run_eval(const RunSpec& spec, const nlohmann::json& result,
                                const std::optional<std::filesystem::path>& truth);

struct BenchGrid {
  std::vector<double> alphas{0.9};
  std::vector<double> sigmas{0.05};
  std::vector<std::size_t> ns{500};
  std::size_t q = 3;
  double p_in = 0.05;
  double p_out = 0.0005;
  std::optional<double> mean_degree;  // overrides p_in / p_out when set
  double eps = 0.2;
  std::size_t seeds = 10;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::kDp, Algorithm::kMerge, Algorithm::kCriticalGap,
                                    Algorithm::kGreedy};
  ObjectiveKind objective = ObjectiveKind::kModularity;
  std::size_t jobs = 1;
};

struct BenchRow {
  double alpha = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
  std::size_t q = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kDp;
  ObjectiveKind objective = ObjectiveKind::kModularity;
  double quality = 0.0;
  std::size_t num_layers = 0;
  double rmi_vs_truth = 0.0;
  double entropy = 0.0;
  double runtime_ms = 0.0;
};

/// One row per (alpha, sigma, n, seed, algorithm), in that nesting order
/// regardless of how many jobs run.
std::vector<BenchRow> run_bench(const BenchGrid& grid);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace linclust
