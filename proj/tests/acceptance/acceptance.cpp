// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "linclust/baselines.hpp"
#include "linclust/dp_solver.hpp"
#include "linclust/fixtures.hpp"
#include "linclust/metrics.hpp"
#include "linclust/oracle.hpp"
#include "linclust/periodic.hpp"
#include "linclust/synthgen.hpp"
#include "support/instances.hpp"

using namespace linclust;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %s: %s [%s]\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// One draw of the exactness ensemble.
struct Instance {
  ScoredGraph graph;
  PairwiseObjective objective;
  std::string label;
};

const char* kObjectiveNames[] = {"modularity", "density", "strata(0)", "strata(0.5)", "strata(1)"};

PairwiseObjective make(int kind, const ScoredGraph& g) {
  switch (kind) {
    case 0: return modularity_increments(g);
    case 1: return penalized_density_increments(g);
    case 2: return strata_increments(g, 0.0);
    case 3: return strata_increments(g, 0.5);
    default: return strata_increments(g, 1.0);
  }
}

// 300 instances, n in 2..12, p alternating 0.2 / 0.5, objectives cycling.
// Strata needs directed graphs; the others use undirected ones. Edgeless
// draws are redrawn so modularity is defined.
std::vector<Instance> exactness_ensemble() {
  std::mt19937_64 rng(2024);
  std::vector<Instance> out;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 11);
    const double p = (i / 11) % 2 ? 0.2 : 0.5;
    const int kind = i % 5;
    ScoredGraph g;
    do {
      g = collapse_equal_scores(gen::random_graph(rng, n, p, kind >= 2));
    } while (g.edge_count() == 0);
    out.push_back({g, make(kind, g), fmt("n=%zu p=%.1f %s", n, p, kObjectiveNames[kind])});
  }
  return out;
}

void criterion_1(const std::vector<Instance>& ensemble) {
  const auto t0 = Clock::now();
  double worst = 0;
  std::size_t bad = 0;
  for (const auto& inst : ensemble) {
    const double d = std::abs(solve(inst.graph, inst.objective).quality -
                              brute_force_best(inst.graph, inst.objective, EmbeddingMode::kLinear).quality);
    worst = std::max(worst, d);
    if (!(d < 1e-12)) ++bad;
  }
  const double secs = seconds_since(t0);
  report("1", bad == 0 && ensemble.size() >= 200 && secs < 300,
         "dp Q equals brute-force Q on random linear instances",
         fmt("%zu instances, %zu mismatches, max |diff| %.3g < 1e-12, %.1f s < 300 s", ensemble.size(), bad, worst,
             secs));
}

void criterion_2() {
  std::mt19937_64 rng(2025);
  std::size_t count = 0, exhaustive_bad = 0, stable_bad = 0;
  double worst = 0, worst_stable = 0;
  std::string first_stable_miss;
  for (int i = 0; i < 250; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 9);
    const double p = (i / 9) % 2 ? 0.2 : 0.5;
    const int kind = i % 5;
    CircularScoredGraph c;
    do {
      c = gen::random_circle(rng, n, p, kind >= 2);
    } while (c.graph().edge_count() == 0);
    const auto obj = make(kind, c.graph());
    const double ex = solve_periodic_exhaustive(c, obj).quality;
    const double bf = brute_force_best(c.graph(), obj, EmbeddingMode::kCircular).quality;
    const double st = solve_periodic_stable(c, obj).quality;
    worst = std::max(worst, std::abs(ex - bf));
    worst_stable = std::max(worst_stable, std::abs(ex - st));
    if (!(std::abs(ex - bf) < 1e-12)) ++exhaustive_bad;
    if (!(std::abs(ex - st) < 1e-12)) {
      if (stable_bad++ == 0) first_stable_miss = fmt("first: instance %d n=%zu %s", i, n, kObjectiveNames[kind]);
    }
    ++count;
  }
  report("2a", exhaustive_bad == 0, "periodic exhaustive Q equals circular brute-force Q",
         fmt("%zu instances, %zu mismatches, max |diff| %.3g < 1e-12", count, exhaustive_bad, worst));
  report("2b", stable_bad == 0, "periodic stable search Q equals exhaustive Q",
         fmt("%zu instances, %zu mismatches, max gap %.4g%s%s", count, stable_bad, worst_stable,
             stable_bad ? "; " : "", first_stable_miss.c_str()));
}

PlantedInstance planted(std::size_t n, double alpha, double sigma, std::uint64_t seed) {
  PlantedConfig cfg;
  cfg.n = n;
  cfg.q = 3;
  cfg.p_in = 0.05;
  cfg.p_out = 0.0005;
  cfg.alpha = alpha;
  cfg.sigma = sigma;
  cfg.seed = seed;
  return generate_planted(cfg);
}

void criterion_3(const std::vector<Instance>& ensemble) {
  std::size_t count = 0, bad = 0;
  double worst = 0;
  auto check = [&](const ScoredGraph& g, const PairwiseObjective& obj, std::uint64_t seed) {
    const double dp = solve(g, obj).quality;
    for (double h : {merge_heuristic(g, obj).quality, critical_gap(g, obj).quality, greedy_local(g, obj, seed).quality}) {
      worst = std::max(worst, h - dp);
      if (!(dp >= h - 1e-12)) ++bad;
    }
    ++count;
  };
  std::uint64_t seed = 0;
  for (const auto& inst : ensemble) check(inst.graph, inst.objective, seed++);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = collapse_equal_scores(planted(500, s < 25 ? 0.9 : 0.5, 0.05, 100 + s).graph);
    check(g, modularity_increments(g), s);
  }
  report("3", bad == 0, "dp Q >= merge, cgm and greedy Q",
         fmt("%zu instances (%zu random + 50 planted), %zu violations, max heuristic excess %.3g", count,
             ensemble.size(), bad, worst));
}

void criterion_4() {
  std::mt19937_64 rng(2026);
  double worst = 0;
  std::size_t count_bad = 0;
  const std::size_t n = 40;
  for (int i = 0; i < 50; ++i) {
    PairwiseObjective obj;
    if (i % 5 == 4) {
      obj = gen::random_custom(rng, n, i % 2 ? SummationMode::kSymmetric : SummationMode::kUpperTriangular);
    } else {
      ScoredGraph g;
      do {
        g = collapse_equal_scores(gen::random_graph(rng, n, i % 2 ? 0.2 : 0.5, i % 5 >= 2, true));
      } while (g.edge_count() == 0);
      obj = make(i % 5, g);
    }
    const auto state = run_dp(obj);
    if (state.increment_evaluations() != n * (n + 1) / 2) ++count_bad;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k <= j; ++k) worst = std::max(worst, std::abs(state.memo(k, j) - layer_quality_naive(obj, k, j)));
    }
  }
  report("4", worst < 1e-9 && count_bad == 0, "memoized layer qualities equal direct sums; n(n+1)/2 evaluations",
         fmt("50 instances n=40, max |diff| %.3g < 1e-9, %zu runs with evaluation count != %zu", worst, count_bad,
             n * (n + 1) / 2));
}

void criterion_5() {
  auto instance = [](std::size_t n) {
    const auto cfg = PlantedConfig::sparse(n, 3, 10.0, 0.2, 0.9, 0.25, 7);
    return collapse_equal_scores(generate_planted(cfg).graph);
  };
  auto best_time = [](const ScoredGraph& g, int reps) {
    const auto obj = modularity_increments(g);
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
      const auto t0 = Clock::now();
      const auto s = solve(g, obj);
      best = std::min(best, seconds_since(t0));
      if (s.partition.node_count() != g.size()) std::abort();
    }
    return best;
  };
  const auto g2048 = instance(2048), g4096 = instance(4096), g8192 = instance(8192);
  const double t2048 = best_time(g2048, 5), t4096 = best_time(g4096, 5);
  const double t8192 = best_time(g8192, 1);
  const double ratio = t4096 / t2048;
  report("5", t8192 <= 600 && ratio >= 3.0 && ratio <= 6.0, "dp scales quadratically and solves n=8192 in minutes",
         fmt("n=8192 %.2f s <= 600 s; t(4096)/t(2048) = %.3f / %.3f = %.2f in [3, 6]", t8192, t4096, t2048, ratio));
}

double mean_rmi(double alpha) {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = planted(500, alpha, 0.01, seed);
    const auto g = collapse_equal_scores(inst.graph);
    const auto layer = solve(g, modularity_increments(g)).partition.labels();
    std::vector<std::size_t> found;
    for (std::size_t i = 0, s = 0; i < inst.graph.size(); ++i) {
      if (i > 0 && inst.graph.score(i) != inst.graph.score(i - 1)) ++s;
      found.push_back(layer[s]);
    }
    sum += reduced_mutual_information(Labeling(inst.truth), Labeling(found));
  }
  return sum / 20;
}

void criterion_6() {
  const double high = mean_rmi(0.9), none = mean_rmi(0.0);
  report("6", high - none > 0.2 && none <= 0.05, "dp recovers planted layers only when scores are informative",
         fmt("mean RMI alpha=0.9: %.4f bits, alpha=0: %.4f bits; margin %.4f > 0.2, alpha=0 mean %.4f <= 0.05", high,
             none, high - none, none));
}

void criterion_7() {
  double greedy_layers = 0, dp_layers = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = collapse_equal_scores(planted(500, 0.9, 0.25, seed).graph);
    const auto obj = modularity_increments(g);
    dp_layers += static_cast<double>(solve(g, obj).partition.layer_count());
    greedy_layers += static_cast<double>(greedy_local(g, obj, seed).partition.layer_count());
  }
  report("7", greedy_layers > dp_layers, "greedy local moves inflate the layer count",
         fmt("mean layers over 20 seeds: greedy %.2f > dp %.2f", greedy_layers / 20, dp_layers / 20));
}

void criterion_8() {
  std::mt19937_64 rng(2027);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    ScoredGraph g;
    do {
      g = collapse_equal_scores(gen::random_graph(rng, 2 + static_cast<std::size_t>(i % 40), 0.3, true, true));
    } while (g.edge_count() == 0);
    const auto all = Partition::single_layer(g.size());
    for (const auto& obj : {modularity_increments(g), strata_increments(g, 0.0), strata_increments(g, 1.0)}) {
      worst = std::max(worst, std::abs(partition_quality(obj, all)));
    }
  }
  report("8", worst < 1e-12, "all-in-one layer has Q = 0 for modularity and strata lambda in {0, 1}",
         fmt("100 random directed graphs, max |Q| %.3g < 1e-12", worst));
}

void criterion_9() {
  bool entropy_ok = true;
  for (std::size_t q : {1, 2, 4, 8}) {
    std::vector<std::size_t> raw;
    for (std::size_t i = 0; i < 3 * q; ++i) raw.push_back(i % q);
    entropy_ok = entropy_ok && entropy_of_sizes(Labeling(raw)) == std::log2(static_cast<double>(q));
  }
  const std::vector<std::uint64_t> twos{2, 2};
  const auto omega = count_contingency_tables(twos, twos);
  const std::vector<std::size_t> halves{0, 0, 1, 1};
  const double rmi = reduced_mutual_information(Labeling(halves), Labeling(halves));
  const double expected = 1.0 - std::log2(3.0) / 4.0;
  report("9", entropy_ok && omega == 3.0 && std::abs(rmi - expected) < 1e-12, "metric identities",
         fmt("entropy of q equal groups == log2 q: %s; Omega([2,2],[2,2]) = %.0f; RMI(halves) - (1 - log2(3)/4) = %.3g",
             entropy_ok ? "yes" : "no", omega.value_or(-1), rmi - expected));
}

void criterion_10() {
  const auto fixtures = verify_fixtures(LINCLUST_FIXTURE_DIR);
  bool seam_ok = false;
  for (const auto& c : fixtures.checks) seam_ok = seam_ok || (c.name == "seam_circle" && c.ok);
  report("10", fixtures.ok() && seam_ok,
         "substitute for the non-reproducible empirical tables: fixtures incl. the seam-straddling circle",
         fmt("%zu fixtures re-derived by enumeration, all match: %s; seam fixture periodic Q > linear Q: %s",
             fixtures.checks.size(), fixtures.ok() ? "yes" : "no", seam_ok ? "yes" : "no"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const auto ensemble = exactness_ensemble();
  criterion_1(ensemble);
  criterion_2();
  criterion_3(ensemble);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d criteria failed; total %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
