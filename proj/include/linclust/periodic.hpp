#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linclust/dp_solver.hpp"
#include "linclust/graph.hpp"
#include "linclust/objective.hpp"

namespace linclust {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A network embedded on a circle. Nodes are ordered by increasing angle and
/// node indices are taken modulo n. The wrapped graph stores -angle as its
/// score, so it still satisfies the ScoredGraph ordering.
class CircularScoredGraph {
 public:
  CircularScoredGraph() = default;

  /// Takes a graph whose scores are angles in radians, [0, 2 pi).
  static CircularScoredGraph from_angles(const ScoredGraph& g);

  std::size_t size() const { return graph_.size(); }
  double angle(std::size_t i) const { return -graph_.score(i); }
  const ScoredGraph& graph() const { return graph_; }

  /// Merges nodes sharing an angle.
  CircularScoredGraph collapsed() const;

 private:
  ScoredGraph graph_;
};

/// Unfolded node order for a cut between u and u + 1 (mod n): node u + 1
/// comes first and u last.
std::vector<std::size_t> unfold_order(std::size_t n, std::size_t u);

/// The linear graph obtained by cutting the circle between u and u + 1.
ScoredGraph unfold_at(const CircularScoredGraph& g, std::size_t u);

struct CutpointResult {
  std::size_t u = 0;
  Solution solution;  // layers in circular indices
  bool stable = false;
};

/// Runs the linear DP on the unfolding at u and maps the result back to
/// circular indices. obj is indexed like g.
CutpointResult solve_at_cut(const CircularScoredGraph& g, const PairwiseObjective& obj, std::size_t u);

/// Best of the n unfoldings; ties go to the smallest cut index.
Solution solve_periodic_exhaustive(const CircularScoredGraph& g, const PairwiseObjective& obj);

struct StableSearchStats {
  std::size_t rounds = 0;
  std::size_t dp_runs = 0;
  bool fell_back = false;
};

/// Cut ending at the widest angular gap (between u and u + 1).
std::size_t largest_gap_cut(const CircularScoredGraph& g);

/// Search for a stable partition: every partition reached is re-cut at
/// both nodes of each of its layer boundaries, and every strictly better
/// result is examined in the next round. Cuts already tried are never re-run.
/// Returns the best partition seen. After n rounds without convergence the
/// exhaustive search takes over.
Solution solve_periodic_stable(const CircularScoredGraph& g, const PairwiseObjective& obj,
                               std::optional<std::size_t> start_u = std::nullopt,
                               StableSearchStats* stats = nullptr);

}  // namespace linclust
