#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "linclust/cli.hpp"
#include "linclust/error.hpp"
#include "linclust/synthgen.hpp"

using namespace linclust;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = LINCLUST_FIXTURE_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("linclust_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    write_text_file(dir_ / name, text);
    return dir_ / name;
  }

  // Runs the command-line tool and returns its exit status.
  int run(const std::string& args, std::string* err = nullptr) {
    const fs::path err_path = dir_ / "stderr.txt";
    const std::string cmd = std::string(LINCLUST_CLI) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    if (err) *err = read_text_file(err_path);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() { return read_text_file(dir_ / "stdout.txt"); }

  RunSpec fixture_spec(const std::string& name) {
    RunSpec spec;
    spec.edges = kFixtures / name / "edges.txt";
    spec.scores = kFixtures / name / "scores.txt";
    return spec;
  }

  void write_planted(std::size_t n, std::uint64_t seed) {
    PlantedConfig cfg;
    cfg.n = n;
    cfg.p_in = 0.3;
    cfg.p_out = 0.02;
    cfg.seed = seed;
    const auto inst = generate_planted(cfg);
    write("edges.txt", format_edges(inst.graph));
    write("scores.txt", format_scores(inst.graph));
  }

  fs::path dir_;
};

nlohmann::ordered_json without_runtime(nlohmann::ordered_json doc) {
  doc.erase("runtime_ms");
  return doc;
}

}  // namespace

TEST_F(CliTest, SolveTwoCliques) {
  const auto doc = run_solve(fixture_spec("two_cliques"));
  EXPECT_NEAR(doc["Q"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(doc["num_layers"], 2);
  EXPECT_EQ(doc["layers"][0], nlohmann::ordered_json({"a1", "a2", "a3"}));
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"objective", "lambda", "algorithm", "Q", "num_layers", "layers",
                                            "collapsed_supernodes", "runtime_ms"}));
  EXPECT_TRUE(doc["lambda"].is_null());

  ASSERT_EQ(run("solve --algorithm dp --objective modularity --edges " + (kFixtures / "two_cliques/edges.txt").string() +
                " --scores " + (kFixtures / "two_cliques/scores.txt").string()),
            kExitOk);
  const auto cli_doc = nlohmann::ordered_json::parse(out());
  EXPECT_EQ(without_runtime(cli_doc), without_runtime(doc));
}

TEST_F(CliTest, BruteForceCapExitsInfeasible) {
  write_planted(30, 1);
  RunSpec spec;
  spec.edges = dir_ / "edges.txt";
  spec.scores = dir_ / "scores.txt";
  spec.algorithm = Algorithm::kBruteForce;
  EXPECT_THROW(run_solve(spec), InfeasibleError);
  std::string err;
  EXPECT_EQ(run("solve -a brute --edges " + spec.edges.string() + " --scores " + spec.scores.string(), &err),
            kExitInfeasible);
  EXPECT_NE(err.find("24"), std::string::npos) << err;
}

TEST_F(CliTest, InfeasibleSpecs) {
  const std::string files = " --edges " + (kFixtures / "two_cliques/edges.txt").string() + " --scores " +
                            (kFixtures / "two_cliques/scores.txt").string();
  std::string err;
  EXPECT_EQ(run("solve --objective strata" + files, &err), kExitInfeasible);
  EXPECT_NE(err.find("directed"), std::string::npos);
  EXPECT_EQ(run("solve -a periodic-stable" + files), kExitInfeasible);
  EXPECT_EQ(run("solve -a periodic-exhaustive" + files), kExitInfeasible);
  const std::string seam = " --periodic --edges " + (kFixtures / "seam_circle/edges.txt").string() + " --scores " +
                           (kFixtures / "seam_circle/scores.txt").string();
  EXPECT_EQ(run("solve -a dp" + seam), kExitInfeasible);
}

TEST_F(CliTest, InputErrors) {
  const auto edges = write("edges.txt", "a b\na zz\n");
  const auto scores = write("scores.txt", "a 1\nb 0\n");
  std::string err;
  EXPECT_EQ(run("solve --edges " + edges.string() + " --scores " + scores.string(), &err), kExitInputError);
  EXPECT_NE(err.find("zz"), std::string::npos);
  EXPECT_EQ(run("solve --edges " + (dir_ / "missing.txt").string() + " --scores " + scores.string()),
            kExitInputError);
  EXPECT_EQ(run("solve --objective nonsense --edges " + edges.string() + " --scores " + scores.string()),
            kExitInputError);
  EXPECT_EQ(run("solve --edges"), kExitInputError);
  const auto good = write("good.txt", "a b\n");
  EXPECT_EQ(run("solve --edges " + good.string() + " --scores " + scores.string() + " -o /nonexistent/dir/out.json"),
            kExitInputError);
  EXPECT_EQ(run("bench --ns 20 --seeds 1 -o /nonexistent/dir/out.csv"), kExitInputError);
}

TEST_F(CliTest, DeterministicOutput) {
  write_planted(80, 7);
  const std::string args = "solve -a greedy --seed 3 --edges " + (dir_ / "edges.txt").string() + " --scores " +
                           (dir_ / "scores.txt").string();
  ASSERT_EQ(run(args), kExitOk);
  const std::string first = out();
  ASSERT_EQ(run(args), kExitOk);
  const std::string second = out();
  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line)) {
      if (line.find("\"runtime_ms\"") == std::string::npos) kept += line + "\n";
    }
    return kept;
  };
  EXPECT_EQ(strip(first), strip(second));
  EXPECT_NE(first.find("\"runtime_ms\""), std::string::npos);
}

TEST_F(CliTest, ResultsRoundTripThroughEval) {
  struct Case {
    std::string fixture;
    Algorithm algorithm;
    ObjectiveKind objective;
    double lambda;
    bool directed, periodic;
  };
  const std::vector<Case> cases{
      {"two_cliques", Algorithm::kDp, ObjectiveKind::kModularity, 0, false, false},
      {"two_cliques", Algorithm::kDpAllOptima, ObjectiveKind::kPenalizedDensity, 0, false, false},
      {"two_cliques", Algorithm::kGreedy, ObjectiveKind::kModularity, 0, false, false},
      {"two_cliques", Algorithm::kCriticalGap, ObjectiveKind::kModularity, 0, false, false},
      {"mutual_dyad", Algorithm::kMerge, ObjectiveKind::kStrata, 0.5, true, false},
      {"unreciprocated_dyad", Algorithm::kBruteForce, ObjectiveKind::kStrata, 0.0, true, false},
      {"seam_circle", Algorithm::kPeriodicExhaustive, ObjectiveKind::kModularity, 0, false, true},
      {"seam_circle", Algorithm::kPeriodicStable, ObjectiveKind::kModularity, 0, false, true},
      {"seam_circle", Algorithm::kMerge, ObjectiveKind::kModularity, 0, false, true},
      {"seam_circle", Algorithm::kCriticalGap, ObjectiveKind::kModularity, 0, false, true},
      {"seam_circle", Algorithm::kBruteForce, ObjectiveKind::kPenalizedDensity, 0, false, true},
  };
  for (const auto& c : cases) {
    RunSpec spec = fixture_spec(c.fixture);
    spec.algorithm = c.algorithm;
    spec.objective = c.objective;
    spec.lambda = c.lambda;
    spec.directed = c.directed;
    spec.periodic = c.periodic;
    const auto doc = run_solve(spec);
    const auto back = run_eval(spec, nlohmann::json::parse(doc.dump()), std::nullopt);
    EXPECT_NEAR(back["Q"].get<double>(), doc["Q"].get<double>(), 1e-9) << c.fixture << " " << to_string(c.algorithm);
    EXPECT_EQ(back["num_layers"], doc["num_layers"]);
  }
}

TEST_F(CliTest, DpAllListsOptima) {
  RunSpec spec = fixture_spec("two_cliques");
  spec.algorithm = Algorithm::kDpAllOptima;
  const auto doc = run_solve(spec);
  ASSERT_TRUE(doc.contains("optima"));
  EXPECT_EQ(doc["optima"].size(), 1u);
  EXPECT_EQ(doc["optima"][0], doc["layers"]);
}

TEST_F(CliTest, CollapsedSupernodesReported) {
  const auto edges = write("edges.txt", "a b\nb c\nc d\n");
  const auto scores = write("scores.txt", "a 2\nb 2\nc 1\nd 0\n");
  RunSpec spec;
  spec.edges = edges;
  spec.scores = scores;
  const auto doc = run_solve(spec);
  ASSERT_EQ(doc["collapsed_supernodes"].size(), 1u);
  EXPECT_EQ(doc["collapsed_supernodes"][0], nlohmann::ordered_json({"a", "b"}));
  // a split super-node is rejected on evaluation
  nlohmann::json bad = nlohmann::json::parse(doc.dump());
  bad["layers"] = {{"a"}, {"b", "c", "d"}};
  EXPECT_THROW(run_eval(spec, bad, std::nullopt), InputError);
  bad["layers"] = {{"a", "b", "d"}, {"c"}};
  EXPECT_THROW(run_eval(spec, bad, std::nullopt), InputError);
}

TEST_F(CliTest, GenerateAndEvalWithTruth) {
  const std::string files = " --edges-out " + (dir_ / "e.txt").string() + " --scores-out " +
                            (dir_ / "s.txt").string() + " --truth-out " + (dir_ / "t.txt").string();
  ASSERT_EQ(run("generate --n 90 --q 3 --p-in 0.4 --p-out 0.01 --sigma 0.01 --alpha 1 --seed 4" + files), kExitOk);
  const auto g = parse_graph(read_text_file(dir_ / "e.txt"), read_text_file(dir_ / "s.txt"), false);
  EXPECT_EQ(g.size(), 90u);
  ASSERT_EQ(run("solve --edges " + (dir_ / "e.txt").string() + " --scores " + (dir_ / "s.txt").string() + " -o " +
                (dir_ / "r.json").string()),
            kExitOk);
  ASSERT_EQ(run("eval --edges " + (dir_ / "e.txt").string() + " --scores " + (dir_ / "s.txt").string() +
                " --result " + (dir_ / "r.json").string() + " --truth " + (dir_ / "t.txt").string()),
            kExitOk);
  const auto doc = nlohmann::json::parse(out());
  EXPECT_LT(doc["abs_diff"].get<double>(), 1e-9);
  EXPECT_GT(doc["rmi_vs_truth"].get<double>(), 1.0);
  ASSERT_EQ(run("generate --n 300 --mean-degree 10 --eps 0.2 --seed 1" + files), kExitOk);
}

TEST_F(CliTest, BenchGridArithmeticAndOrder) {
  BenchGrid grid;
  grid.alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  grid.sigmas = {0.01};
  grid.ns = {40};
  grid.seeds = 10;
  const auto rows = run_bench(grid);
  EXPECT_EQ(rows.size(), 440u);
  const auto csv = bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kBenchCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 441);
  EXPECT_EQ(rows[0].algorithm, Algorithm::kDp);
  EXPECT_EQ(rows[3].algorithm, Algorithm::kGreedy);
  EXPECT_EQ(rows[4].seed, 1u);
  EXPECT_EQ(rows[40].alpha, 0.1);
}

TEST_F(CliTest, BenchConcurrencyKeepsRowOrder) {
  BenchGrid grid;
  grid.alphas = {0.5, 0.9};
  grid.ns = {60, 80};
  grid.seeds = 3;
  const auto serial = run_bench(grid);
  grid.jobs = 3;
  const auto parallel = run_bench(grid);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].seed, parallel[i].seed);
    EXPECT_EQ(serial[i].n, parallel[i].n);
    EXPECT_EQ(serial[i].algorithm, parallel[i].algorithm);
    EXPECT_EQ(serial[i].quality, parallel[i].quality);
    EXPECT_EQ(serial[i].rmi_vs_truth, parallel[i].rmi_vs_truth);
  }
}

TEST_F(CliTest, BenchDpDominatesEveryRow) {
  BenchGrid grid;
  grid.alphas = {0.5};
  grid.ns = {500};
  grid.seeds = 3;
  const auto rows = run_bench(grid);
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    ASSERT_EQ(rows[i].algorithm, Algorithm::kDp);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_GE(rows[i].quality, rows[i + k].quality - 1e-12);
  }
}

TEST_F(CliTest, BenchRejectsInfeasibleGrids) {
  BenchGrid grid;
  grid.objective = ObjectiveKind::kStrata;
  EXPECT_THROW(run_bench(grid), InfeasibleError);
  grid.objective = ObjectiveKind::kModularity;
  grid.algorithms = {Algorithm::kPeriodicStable};
  EXPECT_THROW(run_bench(grid), InfeasibleError);
  grid.algorithms = {Algorithm::kBruteForce};
  EXPECT_THROW(run_bench(grid), InfeasibleError);
  EXPECT_EQ(run("bench --algorithms brute --ns 100"), kExitInfeasible);
}

TEST_F(CliTest, BenchCli) {
  ASSERT_EQ(run("bench --alphas 0,1 --ns 30 --seeds 2 --algorithms dp,cgm -o " + (dir_ / "b.csv").string()),
            kExitOk);
  const auto csv = read_text_file(dir_ / "b.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
  ASSERT_EQ(run("bench --alphas 0.9 --sigmas 0.25 --ns 200 --mean-degree 10 --eps 0.2 --seeds 1 --algorithms dp"),
            kExitOk);
  const std::string text = out();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}
