#include "linclust/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "linclust/baselines.hpp"
#include "linclust/error.hpp"
#include "linclust/metrics.hpp"
#include "linclust/oracle.hpp"
#include "linclust/periodic.hpp"
#include "linclust/synthgen.hpp"

namespace linclust {

namespace {

using ordered_json = nlohmann::ordered_json;

bool is_periodic_algorithm(Algorithm a) {
  return a == Algorithm::kPeriodicExhaustive || a == Algorithm::kPeriodicStable;
}

// The graph a run operates on, linear or circular.
struct LoadedGraph {
  ScoredGraph graph;  // collapsed; for periodic runs, ordered by angle
  std::optional<CircularScoredGraph> circle;
};

LoadedGraph load_graph(const RunSpec& spec) {
  const ScoredGraph raw = parse_graph(read_text_file(spec.edges), read_text_file(spec.scores), spec.directed);
  LoadedGraph out;
  if (spec.periodic) {
    out.circle = CircularScoredGraph::from_angles(raw).collapsed();
    out.graph = out.circle->graph();
  } else {
    out.graph = collapse_equal_scores(raw);
  }
  return out;
}

void check_feasible(const RunSpec& spec) {
  if (spec.objective == ObjectiveKind::kStrata && !spec.directed) {
    throw InfeasibleError("the strata objective needs a directed graph (--directed)");
  }
  if (spec.objective == ObjectiveKind::kCustom) throw InfeasibleError("custom objectives are library-only");
  if (is_periodic_algorithm(spec.algorithm) && !spec.periodic) {
    throw InfeasibleError("periodic algorithms need angle scores (--periodic)");
  }
  if (spec.periodic && (spec.algorithm == Algorithm::kDp || spec.algorithm == Algorithm::kDpAllOptima ||
                        spec.algorithm == Algorithm::kGreedy)) {
    throw InfeasibleError("algorithm '" + std::string(to_string(spec.algorithm)) +
                          "' works on a line; use periodic-exhaustive, periodic-stable, merge, cgm or brute");
  }
}


Solution run_algorithm(const RunSpec& spec, const LoadedGraph& lg, const PairwiseObjective& obj,
                       std::vector<Partition>* optima) {
  const ScoredGraph& g = lg.graph;
  switch (spec.algorithm) {
    case Algorithm::kDp: return solve(g, obj);
    case Algorithm::kDpAllOptima: {
      const auto t0 = std::chrono::steady_clock::now();
      Solution s = solve(g, obj);
      *optima = solve_all_optima(g, obj, spec.cap);
      s.algorithm = Algorithm::kDpAllOptima;
      s.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return s;
    }
    case Algorithm::kPeriodicExhaustive: return solve_periodic_exhaustive(*lg.circle, obj);
    case Algorithm::kPeriodicStable: return solve_periodic_stable(*lg.circle, obj);
    case Algorithm::kGreedy: return greedy_local(g, obj, spec.seed);
    case Algorithm::kMerge: return lg.circle ? merge_heuristic_periodic(*lg.circle, obj) : merge_heuristic(g, obj);
    case Algorithm::kCriticalGap: return lg.circle ? critical_gap_periodic(*lg.circle, obj) : critical_gap(g, obj);
    case Algorithm::kBruteForce:
      return brute_force_best(g, obj, lg.circle ? EmbeddingMode::kCircular : EmbeddingMode::kLinear);
  }
  throw InputError("unknown algorithm");
}

// Layer of each original node id, from a result document.
std::unordered_map<std::string, std::size_t> layer_of_ids(const nlohmann::json& result) {
  std::unordered_map<std::string, std::size_t> out;
  if (!result.contains("layers") || !result["layers"].is_array()) throw InputError("result has no 'layers'");
  std::size_t r = 0;
  for (const auto& layer : result["layers"]) {
    for (const auto& id : layer) {
      if (!out.emplace(id.get<std::string>(), r).second) {
        throw InputError("node '" + id.get<std::string>() + "' appears in two layers");
      }
    }
    ++r;
  }
  return out;
}

std::unordered_map<std::string, std::string> read_truth(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> truth;
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string id, label;
    if (!(fields >> id)) continue;
    if (!(fields >> label)) throw InputError("truth line without a label: " + line);
    truth[id] = label;
  }
  return truth;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<BenchRow> run_cell(const BenchGrid& grid, double alpha, double sigma, std::size_t n,
                               std::uint64_t seed) {
  PlantedConfig cfg;
  if (grid.mean_degree) {
    cfg = PlantedConfig::sparse(n, grid.q, *grid.mean_degree, grid.eps, alpha, sigma, seed);
  } else {
    cfg.n = n;
    cfg.q = grid.q;
    cfg.p_in = grid.p_in;
    cfg.p_out = grid.p_out;
    cfg.sigma = sigma;
    cfg.alpha = alpha;
    cfg.seed = seed;
  }
  const PlantedInstance inst = generate_planted(cfg);
  const ScoredGraph g = collapse_equal_scores(inst.graph);
  // truth per original node; the collapsed node of each original node
  std::vector<std::size_t> truth, super;
  for (std::size_t i = 0, s = 0; i < inst.graph.size(); ++i) {
    if (i > 0 && inst.graph.score(i) != inst.graph.score(i - 1)) ++s;
    truth.push_back(inst.truth[i]);
    super.push_back(s);
  }
  const Labeling truth_labels(truth);
  const PairwiseObjective obj = make_objective(grid.objective, g, 0.5);

  std::vector<BenchRow> rows;
  for (Algorithm a : grid.algorithms) {
    RunSpec spec;
    spec.algorithm = a;
    spec.objective = grid.objective;
    spec.seed = seed;
    LoadedGraph lg{g, std::nullopt};
    const Solution sol = run_algorithm(spec, lg, obj, nullptr);
    const auto node_layer = sol.partition.labels();
    std::vector<std::size_t> per_original(super.size());
    for (std::size_t i = 0; i < super.size(); ++i) per_original[i] = node_layer[super[i]];
    const Labeling found(per_original);

    BenchRow row;
    row.alpha = alpha;
    row.sigma = sigma;
    row.n = n;
    row.q = grid.q;
    row.seed = seed;
    row.algorithm = a;
    row.objective = grid.objective;
    row.quality = sol.quality;
    row.num_layers = sol.partition.layer_count();
    row.rmi_vs_truth = reduced_mutual_information(truth_labels, found);
    row.entropy = entropy_of_sizes(found);
    row.runtime_ms = sol.runtime_ms;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ordered_json layer_ids(const ScoredGraph& g, const Partition& p) {
  ordered_json layers = ordered_json::array();
  const std::size_t n = g.size();
  const auto ls = p.layers();
  for (std::size_t r = 0; r < ls.size(); ++r) {
    ordered_json ids = ordered_json::array();
    for (std::size_t t = 0; t < p.layer_size(r); ++t) {
      for (const auto& id : g.ids((ls[r].lo + t) % n)) ids.push_back(id);
    }
    layers.push_back(std::move(ids));
  }
  return layers;
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kDp, Algorithm::kDpAllOptima, Algorithm::kPeriodicExhaustive,
                      Algorithm::kPeriodicStable, Algorithm::kGreedy, Algorithm::kMerge, Algorithm::kCriticalGap,
                      Algorithm::kBruteForce}) {
    if (to_string(a) == name) return a;
  }
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

ObjectiveKind parse_objective(std::string_view name) {
  for (ObjectiveKind k : {ObjectiveKind::kModularity, ObjectiveKind::kPenalizedDensity, ObjectiveKind::kStrata}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown objective '" + std::string(name) + "'");
}

PairwiseObjective make_objective(ObjectiveKind kind, const ScoredGraph& g, double lambda) {
  switch (kind) {
    case ObjectiveKind::kModularity: return modularity_increments(g);
    case ObjectiveKind::kPenalizedDensity: return penalized_density_increments(g);
    case ObjectiveKind::kStrata: return strata_increments(g, lambda);
    case ObjectiveKind::kCustom: break;
  }
  throw InfeasibleError("custom objectives cannot be built from a graph alone");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

ordered_json run_solve(const RunSpec& spec) {
  check_feasible(spec);
  const LoadedGraph lg = load_graph(spec);
  const ScoredGraph& g = lg.graph;
  const PairwiseObjective obj = make_objective(spec.objective, g, spec.lambda);
  std::vector<Partition> optima;
  const Solution sol = run_algorithm(spec, lg, obj, &optima);

  ordered_json doc;
  doc["objective"] = to_string(spec.objective);
  doc["lambda"] = spec.objective == ObjectiveKind::kStrata ? ordered_json(spec.lambda) : ordered_json(nullptr);
  doc["algorithm"] = to_string(spec.algorithm);
  doc["Q"] = sol.quality;
  doc["num_layers"] = sol.partition.layer_count();
  doc["layers"] = layer_ids(g, sol.partition);
  ordered_json supernodes = ordered_json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.ids(i).size() > 1) supernodes.push_back(g.ids(i));
  }
  doc["collapsed_supernodes"] = std::move(supernodes);
  doc["runtime_ms"] = sol.runtime_ms;
  if (spec.algorithm == Algorithm::kDpAllOptima) {
    ordered_json all = ordered_json::array();
    for (const auto& p : optima) all.push_back(layer_ids(g, p));
    doc["optima"] = std::move(all);
  }
  return doc;
}

ordered_json run_eval(const RunSpec& spec, const nlohmann::json& result,
                      const std::optional<std::filesystem::path>& truth_path) {
  check_feasible(spec);
  const LoadedGraph lg = load_graph(spec);
  const ScoredGraph& g = lg.graph;
  const std::size_t n = g.size();
  const auto layer_of = layer_of_ids(result);

  // Every super-node must sit wholly inside one layer.
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> r;
    for (const auto& id : g.ids(i)) {
      auto it = layer_of.find(id);
      if (it == layer_of.end()) throw InputError("node '" + id + "' is missing from the result");
      if (r && *r != it->second) throw InputError("super-node containing '" + id + "' is split across layers");
      r = it->second;
    }
    label[i] = *r;
  }
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = i > 0 ? i - 1 : (spec.periodic ? n - 1 : n);
    if (prev == n || label[prev] != label[i]) starts.push_back(i);
  }
  if (starts.empty()) starts.push_back(0);
  const std::size_t distinct = std::set<std::size_t>(label.begin(), label.end()).size();
  if (distinct != starts.size()) throw InputError("result layers are not contiguous in score order");
  const Partition p(n, starts, spec.periodic);
  const PairwiseObjective obj = make_objective(spec.objective, g, spec.lambda);
  const double q = partition_quality(obj, p);

  ordered_json doc;
  doc["objective"] = to_string(spec.objective);
  doc["num_layers"] = p.layer_count();
  doc["Q"] = q;
  if (result.contains("Q") && result["Q"].is_number()) {
    doc["Q_reported"] = result["Q"].get<double>();
    doc["abs_diff"] = std::abs(q - result["Q"].get<double>());
  }
  // per original node
  std::vector<std::size_t> found;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& id : g.ids(i)) {
      ids.push_back(id);
      found.push_back(label[i]);
    }
  }
  const Labeling found_labels(found);
  doc["entropy"] = entropy_of_sizes(found_labels);
  if (truth_path) {
    const auto truth = read_truth(*truth_path);
    std::map<std::string, std::size_t> codes;
    std::vector<std::size_t> truth_codes;
    for (const auto& id : ids) {
      auto it = truth.find(id);
      if (it == truth.end()) throw InputError("node '" + id + "' has no truth label");
      truth_codes.push_back(codes.emplace(it->second, codes.size()).first->second);
    }
    doc["rmi_vs_truth"] = reduced_mutual_information(Labeling(truth_codes), found_labels);
  }
  return doc;
}

std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  if (grid.objective == ObjectiveKind::kStrata || grid.objective == ObjectiveKind::kCustom) {
    throw InfeasibleError("bench instances are undirected; use modularity or density");
  }
  for (Algorithm a : grid.algorithms) {
    if (is_periodic_algorithm(a)) throw InfeasibleError("bench instances live on a line");
    if (a == Algorithm::kBruteForce) {
      for (std::size_t n : grid.ns) {
        if (n > kOracleMaxNodes) throw InfeasibleError("brute force is capped at " + std::to_string(kOracleMaxNodes) + " nodes");
      }
    }
  }
  struct Cell {
    double alpha, sigma;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double alpha : grid.alphas) {
    for (double sigma : grid.sigmas) {
      for (std::size_t n : grid.ns) {
        for (std::size_t s = 0; s < grid.seeds; ++s) cells.push_back({alpha, sigma, n, grid.base_seed + s});
      }
    }
  }

  std::vector<std::vector<BenchRow>> results(cells.size());
  const std::size_t jobs = std::max<std::size_t>(1, grid.jobs);
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      results[c] = run_cell(grid, cells[c].alpha, cells[c].sigma, cells[c].n, cells[c].seed);
    }
  } else {
    for (std::size_t begin = 0; begin < cells.size(); begin += jobs) {
      std::vector<std::future<std::vector<BenchRow>>> batch;
      for (std::size_t c = begin; c < std::min(cells.size(), begin + jobs); ++c) {
        batch.push_back(std::async(std::launch::async, run_cell, std::cref(grid), cells[c].alpha,
                                   cells[c].sigma, cells[c].n, cells[c].seed));
      }
      for (std::size_t k = 0; k < batch.size(); ++k) results[begin + k] = batch[k].get();
    }
  }
  std::vector<BenchRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.3f", r.runtime_ms);
    os << format_double(r.alpha) << ',' << format_double(r.sigma) << ',' << r.n << ',' << r.q << ',' << r.seed
       << ',' << to_string(r.algorithm) << ',' << to_string(r.objective) << ',' << format_double(r.quality)
       << ',' << r.num_layers << ',' << format_double(r.rmi_vs_truth) << ',' << format_double(r.entropy) << ','
       << runtime << '\n';
  }
  return os.str();
}

}  // namespace linclust
