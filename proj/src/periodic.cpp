#include "linclust/periodic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "linclust/error.hpp"

namespace linclust {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void check_inputs(const CircularScoredGraph& g, const PairwiseObjective& obj) {
  if (g.size() == 0) throw InputError("cannot solve an empty graph");
  if (obj.size() != g.size()) throw InputError("objective and graph sizes differ");
  if (!g.graph().has_distinct_scores()) {
    throw InputError("angles must be distinct; collapse equal angles first");
  }
}

}  // namespace

CircularScoredGraph CircularScoredGraph::from_angles(const ScoredGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.score(i);
    if (!(x >= 0.0 && x < kTwoPi)) throw InputError("angles must lie in [0, 2 pi)");
  }
  // g is sorted by decreasing angle; reverse it.
  std::vector<std::size_t> order(n);
  std::vector<double> neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = n - 1 - i;
    neg[i] = -g.score(n - 1 - i);
  }
  CircularScoredGraph out;
  out.graph_ = g.relabeled(order, neg);
  return out;
}

CircularScoredGraph CircularScoredGraph::collapsed() const {
  CircularScoredGraph out;
  out.graph_ = collapse_equal_scores(graph_);
  return out;
}

std::vector<std::size_t> unfold_order(std::size_t n, std::size_t u) {
  if (u >= n) throw InputError("cut index out of range");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = (u + 1 + i) % n;
  return order;
}

ScoredGraph unfold_at(const CircularScoredGraph& g, std::size_t u) {
  const std::size_t n = g.size();
  const auto order = unfold_order(n, u);
  // Position along the unfolded line, decreasing with the new index.
  std::vector<double> scores(n);
  const double origin = g.angle(order[0]);
  for (std::size_t i = 0; i < n; ++i) {
    double d = g.angle(order[i]) - origin;
    if (i > 0 && order[i] < order[0]) d += kTwoPi;
    scores[i] = -d;
  }
  return g.graph().relabeled(order, scores);
}

CutpointResult solve_at_cut(const CircularScoredGraph& g, const PairwiseObjective& obj, std::size_t u) {
  check_inputs(g, obj);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.size();
  const auto order = unfold_order(n, u);
  const SolverState state = run_dp(obj.permuted(order), MemoStorage::kRolling);
  const Partition line = state.partition();
  std::vector<std::size_t> starts;
  for (std::size_t s : line.starts()) starts.push_back(order[s]);

  CutpointResult res;
  res.u = u;
  res.solution.partition = Partition(n, std::move(starts), true);
  res.solution.quality = state.best()[n];
  res.solution.algorithm = Algorithm::kPeriodicExhaustive;
  res.solution.runtime_ms = elapsed_ms(t0);
  return res;
}

Solution solve_periodic_exhaustive(const CircularScoredGraph& g, const PairwiseObjective& obj) {
  check_inputs(g, obj);
  const auto t0 = std::chrono::steady_clock::now();
  Solution best;
  for (std::size_t u = 0; u < g.size(); ++u) {
    CutpointResult r = solve_at_cut(g, obj, u);
    if (u == 0 || r.solution.quality > best.quality) best = std::move(r.solution);
  }
  best.algorithm = Algorithm::kPeriodicExhaustive;
  best.runtime_ms = elapsed_ms(t0);
  return best;
}

std::size_t largest_gap_cut(const CircularScoredGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw InputError("empty graph");
  std::size_t best_u = n - 1;
  double best_gap = -1.0;
  for (std::size_t u = 0; u < n; ++u) {
    double gap = g.angle((u + 1) % n) - g.angle(u);
    if (u + 1 == n) gap += kTwoPi;
    if (gap > best_gap) {
      best_gap = gap;
      best_u = u;
    }
  }
  return best_u;
}

Solution solve_periodic_stable(const CircularScoredGraph& g, const PairwiseObjective& obj,
                               std::optional<std::size_t> start_u, StableSearchStats* stats) {
  check_inputs(g, obj);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.size();
  const std::size_t u0 = start_u.value_or(largest_gap_cut(g));
  if (u0 >= n) throw InputError("start cut out of range");

  StableSearchStats local;
  std::set<std::size_t> attempted{u0};
  CutpointResult first = solve_at_cut(g, obj, u0);
  ++local.dp_runs;
  Solution best = first.solution;

  // Partitions still to be tested for stability, one generation per round.
  std::vector<CutpointResult> frontier{std::move(first)};
  while (!frontier.empty() && local.rounds < n) {
    ++local.rounds;
    std::vector<CutpointResult> next;
    for (const CutpointResult& current : frontier) {
      // A single layer unfolded at u still has its line ends at u and u + 1.
      std::vector<std::size_t> starts{(current.u + 1) % n};
      if (current.solution.partition.layer_count() > 1) {
        const auto s = current.solution.partition.starts();
        starts.assign(s.begin(), s.end());
      }
      for (std::size_t start : starts) {
        // The last node of the layer above and the first node of this one.
        for (std::size_t cut : {(start + n - 1) % n, start}) {
          if (!attempted.insert(cut).second) continue;
          CutpointResult r = solve_at_cut(g, obj, cut);
          ++local.dp_runs;
          if (r.solution.quality > best.quality) best = r.solution;
          if (r.solution.quality > current.solution.quality) next.push_back(std::move(r));
        }
      }
    }
    frontier = std::move(next);
  }
  const bool stable = frontier.empty();
  Solution incumbent = std::move(best);
  if (!stable) {
    local.fell_back = true;
    incumbent = solve_periodic_exhaustive(g, obj);
  }
  incumbent.algorithm = Algorithm::kPeriodicStable;
  incumbent.runtime_ms = elapsed_ms(t0);
  if (stats) *stats = local;
  return incumbent;
}

}  // namespace linclust
