#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "linclust/graph.hpp"
#include "linclust/objective.hpp"

namespace linclust {

enum class Algorithm {
  kDp,
  kDpAllOptima,
  kPeriodicExhaustive,
  kPeriodicStable,
  kGreedy,
  kMerge,
  kCriticalGap,
  kBruteForce,
};

std::string_view to_string(Algorithm a);

struct Solution {
  Partition partition;
  double quality = 0.0;
  Algorithm algorithm = Algorithm::kDp;
  double runtime_ms = 0.0;
};

/// How many layer qualities the solver keeps. The full triangle allows
/// random access to every f(L_{k,j}) after the run; the rolling variant keeps
/// two columns and needs O(n) memory.
enum class MemoStorage { kFullTriangle, kRolling };

/// Arrays of a completed dynamic-programming run over n nodes.
///
/// best(j) is the optimal quality of the top j nodes (best(0) == 0) and
/// last_start(j) the smallest start index of the bottom layer among the
/// maximizers for that prefix. Layer qualities are indexed by their inclusive
/// node limits k <= j.
class SolverState {
 public:
  SolverState(std::size_t n, MemoStorage storage);

  std::size_t size() const { return n_; }
  MemoStorage storage() const { return storage_; }

  std::span<const double> best() const { return best_; }
  std::span<const std::size_t> last_start() const { return last_start_; }

  /// f(L_{k,j}); only available with MemoStorage::kFullTriangle.
  double memo(std::size_t k, std::size_t j) const;

  /// Number of quality increments read while filling the table.
  std::uint64_t increment_evaluations() const { return increment_evaluations_; }

  /// Every maximizing bottom-layer start for prefix j (only recorded when
  /// the run tracked ties).
  std::span<const std::size_t> maximizers(std::size_t j) const { return maximizers_[j]; }

  /// Backtracks through last_start().
  Partition partition() const;

 private:
  friend SolverState run_dp(const PairwiseObjective&, MemoStorage, bool);

  std::size_t n_;
  MemoStorage storage_;
  std::vector<double> best_;
  std::vector<std::size_t> last_start_;
  struct FreeDeleter {
    void operator()(double* p) const;
  };
  std::unique_ptr<double[], FreeDeleter> memo_;  // column-major lower triangle, column j holds k = 0..j
  std::vector<std::vector<std::size_t>> maximizers_;
  std::uint64_t increment_evaluations_ = 0;
};

/// Fills the DP table for nodes 0..n-1 of obj.
///
/// Q*_j = max_k { Q*_{k-1} + f(L_{k,j}) } with layer qualities updated as
///   f(L_{k,j}) = f(L_{k,j-1}) + f(L_{k+1,j}) - f(L_{k+1,j-1}) + pair(k, j)
/// visiting j upwards and k downwards so every right-hand term is known.
/// Ties are resolved towards the smallest k using exact comparison.
SolverState run_dp(const PairwiseObjective& obj, MemoStorage storage = MemoStorage::kFullTriangle,
                   bool track_all_maximizers = false);

/// Optimal contiguous partition of a collapsed graph.
Solution solve(const ScoredGraph& g, const PairwiseObjective& obj,
               MemoStorage storage = MemoStorage::kFullTriangle);

/// Every optimal partition, at most cap of them, sorted by layer starts.
/// The partition returned by solve() is always included.
std::vector<Partition> solve_all_optima(const ScoredGraph& g, const PairwiseObjective& obj,
                                        std::size_t cap);

}  // namespace linclust
