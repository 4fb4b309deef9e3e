// Command-line front end: solve, generate, eval, bench, verify-fixtures.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "linclust/cli.hpp"
#include "linclust/error.hpp"
#include "linclust/fixtures.hpp"
#include "linclust/synthgen.hpp"

namespace {

using namespace linclust;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct SolveFlags {
  std::string algorithm = "dp";
  std::string objective = "modularity";
  RunSpec spec;
  std::string edges, scores, output;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--edges", edges, "edge file")->required();
    cmd->add_option("--scores", scores, "score file (angles in radians with --periodic)")->required();
    cmd->add_flag("--directed", spec.directed, "read edges as directed");
    cmd->add_flag("--periodic", spec.periodic, "scores are angles on a circle");
    cmd->add_option("--objective", objective, "modularity | density | strata");
    cmd->add_option("--lambda", spec.lambda, "strata mixing weight in [0, 1]");
    cmd->add_option("--output,-o", output, "output file (default stdout)");
  }

  RunSpec resolve() {
    spec.algorithm = parse_algorithm(algorithm);
    spec.objective = parse_objective(objective);
    spec.edges = edges;
    spec.scores = scores;
    return spec;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal contiguous layer detection in scored networks"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "find the best contiguous partition");
  solve_flags.add_to(solve_cmd);
  solve_cmd->add_option("--algorithm,-a", solve_flags.algorithm,
                        "dp | dp-all | periodic-exhaustive | periodic-stable | greedy | merge | cgm | brute");
  solve_cmd->add_option("--seed", solve_flags.spec.seed, "seed for greedy visiting order");
  solve_cmd->add_option("--cap", solve_flags.spec.cap, "maximum number of optima listed by dp-all");

  SolveFlags eval_flags;
  std::string eval_result, eval_truth;
  auto* eval_cmd = app.add_subcommand("eval", "re-evaluate a solve result");
  eval_flags.add_to(eval_cmd);
  eval_cmd->add_option("--result", eval_result, "JSON written by solve")->required();
  eval_cmd->add_option("--truth", eval_truth, "file of \"id label\" lines");

  PlantedConfig gen;
  std::optional<double> gen_mean_degree;
  double gen_eps = 0.2;
  std::string gen_edges, gen_scores, gen_truth;
  auto* gen_cmd = app.add_subcommand("generate", "sample a planted layered network");
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--q", gen.q);
  gen_cmd->add_option("--p-in", gen.p_in);
  gen_cmd->add_option("--p-out", gen.p_out);
  gen_cmd->add_option("--mean-degree", gen_mean_degree, "sparse mode; overrides --p-in/--p-out");
  gen_cmd->add_option("--eps", gen_eps, "sparse mode ratio <k_out>/<k_in>");
  gen_cmd->add_option("--sigma", gen.sigma);
  gen_cmd->add_option("--alpha", gen.alpha);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--edges-out", gen_edges)->required();
  gen_cmd->add_option("--scores-out", gen_scores)->required();
  gen_cmd->add_option("--truth-out", gen_truth);

  BenchGrid grid;
  std::vector<std::string> bench_algorithms{"dp", "merge", "cgm", "greedy"};
  std::string bench_objective = "modularity", bench_output;
  auto* bench_cmd = app.add_subcommand("bench", "sweep planted instances and write CSV");
  bench_cmd->add_option("--alphas", grid.alphas)->delimiter(',');
  bench_cmd->add_option("--sigmas", grid.sigmas)->delimiter(',');
  bench_cmd->add_option("--ns", grid.ns)->delimiter(',');
  bench_cmd->add_option("--q", grid.q);
  bench_cmd->add_option("--p-in", grid.p_in);
  bench_cmd->add_option("--p-out", grid.p_out);
  bench_cmd->add_option("--mean-degree", grid.mean_degree, "sparse mode; overrides --p-in/--p-out");
  bench_cmd->add_option("--eps", grid.eps);
  bench_cmd->add_option("--seeds", grid.seeds, "seeds per cell");
  bench_cmd->add_option("--base-seed", grid.base_seed);
  bench_cmd->add_option("--algorithms", bench_algorithms)->delimiter(',');
  bench_cmd->add_option("--objective", bench_objective);
  bench_cmd->add_option("--jobs,-j", grid.jobs, "cells run concurrently");
  bench_cmd->add_option("--output,-o", bench_output, "CSV file (default stdout)");

  std::string fixture_dir = "fixtures";
  bool regenerate = false;
  auto* fix_cmd = app.add_subcommand("verify-fixtures", "re-derive fixture expectations");
  fix_cmd->add_option("--dir", fixture_dir);
  fix_cmd->add_flag("--regenerate", regenerate, "overwrite stored expectations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*solve_cmd) {
      const RunSpec spec = solve_flags.resolve();
      emit(run_solve(spec).dump(2) + "\n", solve_flags.output);
    } else if (*eval_cmd) {
      eval_flags.algorithm = "dp";
      const RunSpec spec = eval_flags.resolve();
      nlohmann::json result;
      try {
        result = nlohmann::json::parse(read_text_file(eval_result));
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad result file: ") + e.what());
      }
      std::optional<std::filesystem::path> truth;
      if (!eval_truth.empty()) truth = eval_truth;
      emit(run_eval(spec, result, truth).dump(2) + "\n", eval_flags.output);
    } else if (*gen_cmd) {
      PlantedConfig cfg = gen;
      if (gen_mean_degree) {
        cfg = PlantedConfig::sparse(gen.n, gen.q, *gen_mean_degree, gen_eps, gen.alpha, gen.sigma, gen.seed);
      }
      const PlantedInstance inst = generate_planted(cfg);
      write_text_file(gen_edges, format_edges(inst.graph));
      write_text_file(gen_scores, format_scores(inst.graph));
      if (!gen_truth.empty()) {
        std::string text;
        for (std::size_t i = 0; i < inst.graph.size(); ++i) {
          text += inst.graph.ids(i).front() + " " + std::to_string(inst.truth[i]) + "\n";
        }
        write_text_file(gen_truth, text);
      }
    } else if (*bench_cmd) {
      grid.algorithms.clear();
      for (const auto& a : bench_algorithms) grid.algorithms.push_back(parse_algorithm(a));
      grid.objective = parse_objective(bench_objective);
      emit(bench_csv(run_bench(grid)), bench_output);
    } else if (*fix_cmd) {
      const FixtureReport report = verify_fixtures(fixture_dir, regenerate);
      for (const auto& c : report.checks) {
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "\n";
        for (const auto& m : c.messages) std::cout << "     " << m << "\n";
      }
      if (!report.ok()) return kExitInputError;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}
