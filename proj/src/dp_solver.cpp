#include "linclust/dp_solver.hpp"

#ifdef __linux__
#include <sys/mman.h>
#endif

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <new>

#include "linclust/error.hpp"

namespace linclust {

namespace {

std::size_t column_offset(std::size_t j) { return j * (j + 1) / 2; }

constexpr std::size_t kHugePage = std::size_t{2} << 20;

// Uninitialized; every entry is written before it is read. Large tables are
// backed by huge pages where the kernel allows it.
double* allocate_table(std::size_t count) {
  const std::size_t bytes = std::max<std::size_t>(count * sizeof(double), 1);
  const bool huge = bytes >= kHugePage;
  const std::size_t rounded = huge ? (bytes + kHugePage - 1) / kHugePage * kHugePage : bytes;
  void* p = huge ? std::aligned_alloc(kHugePage, rounded) : std::malloc(bytes);
  if (!p) throw std::bad_alloc();
#ifdef __linux__
  if (huge) madvise(p, rounded, MADV_HUGEPAGE);
#endif
  return static_cast<double*>(p);
}

void check_inputs(const ScoredGraph& g, const PairwiseObjective& obj) {
  if (g.size() == 0) throw InputError("cannot solve an empty graph");
  if (obj.size() != g.size()) throw InputError("objective and graph sizes differ");
  if (!g.has_distinct_scores()) {
    throw InputError("scores must be strictly decreasing; collapse equal scores first");
  }
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDp: return "dp";
    case Algorithm::kDpAllOptima: return "dp-all";
    case Algorithm::kPeriodicExhaustive: return "periodic-exhaustive";
    case Algorithm::kPeriodicStable: return "periodic-stable";
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kMerge: return "merge";
    case Algorithm::kCriticalGap: return "cgm";
    case Algorithm::kBruteForce: return "brute";
  }
  return "unknown";
}

void SolverState::FreeDeleter::operator()(double* p) const { std::free(p); }

SolverState::SolverState(std::size_t n, MemoStorage storage)
    : n_(n), storage_(storage), best_(n + 1, 0.0), last_start_(n + 1, 0) {}

double SolverState::memo(std::size_t k, std::size_t j) const {
  if (storage_ != MemoStorage::kFullTriangle) throw InputError("memo table was not kept");
  if (k > j || j >= n_) throw InputError("memo index out of range");
  return memo_[column_offset(j) + k];
}

Partition SolverState::partition() const {
  std::vector<std::size_t> starts;
  for (std::size_t j = n_; j > 0; j = last_start_[j]) starts.push_back(last_start_[j]);
  return Partition(n_, std::move(starts));
}

SolverState run_dp(const PairwiseObjective& obj, MemoStorage storage, bool track_all_maximizers) {
  const std::size_t n = obj.size();
  SolverState state(n, storage);
  const bool full = storage == MemoStorage::kFullTriangle;
  if (full) state.memo_.reset(allocate_table(column_offset(n)));
  if (track_all_maximizers) state.maximizers_.resize(n + 1);

  std::vector<double> increments(n);
  std::vector<double> prev_col, cur_col;  // rolling storage
  if (!full) {
    prev_col.resize(n);
    cur_col.resize(n);
  }

  for (std::size_t j = 0; j < n; ++j) {
    obj.fill_column(j, increments);
    state.increment_evaluations_ += j + 1;

    double* col = full ? state.memo_.get() + column_offset(j) : cur_col.data();
    const double* left = full && j > 0 ? state.memo_.get() + column_offset(j - 1) : prev_col.data();

    // Prefix j+1 in DP terms; candidate bottom layers [k, j].
    double best = 0.0;
    std::size_t arg = j;
    for (std::size_t k = j + 1; k-- > 0;) {
      double f = increments[k];
      if (k < j) {
        f += left[k] + col[k + 1];
        if (k + 1 < j) f -= left[k + 1];
      }
      col[k] = f;
      const double candidate = state.best_[k] + f;
      if (k == j || candidate >= best) {
        if (track_all_maximizers) {
          auto& ties = state.maximizers_[j + 1];
          if (k == j || candidate > best) ties.clear();
          ties.push_back(k);
        }
        best = candidate;
        arg = k;
      }
    }
    state.best_[j + 1] = best;
    state.last_start_[j + 1] = arg;
    if (!full) std::swap(prev_col, cur_col);
  }
  if (track_all_maximizers) {
    for (auto& ties : state.maximizers_) std::sort(ties.begin(), ties.end());
  }
  return state;
}

Solution solve(const ScoredGraph& g, const PairwiseObjective& obj, MemoStorage storage) {
  check_inputs(g, obj);
  const auto t0 = std::chrono::steady_clock::now();
  SolverState state = run_dp(obj, storage);
  Solution sol;
  sol.partition = state.partition();
  sol.quality = state.best()[g.size()];
  sol.algorithm = Algorithm::kDp;
  sol.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

std::vector<Partition> solve_all_optima(const ScoredGraph& g, const PairwiseObjective& obj,
                                        std::size_t cap) {
  check_inputs(g, obj);
  if (cap == 0) throw InputError("cap must be positive");
  const std::size_t n = g.size();
  SolverState state = run_dp(obj, MemoStorage::kRolling, true);

  std::vector<Partition> found;
  std::vector<std::size_t> starts;
  // Depth-first from the bottom layer, smallest start first, so the first
  // completed path is the smallest-k partition.
  std::function<void(std::size_t)> branch = [&](std::size_t j) {
    if (found.size() >= cap) return;
    if (j == 0) {
      found.emplace_back(n, starts);
      return;
    }
    for (std::size_t k : state.maximizers(j)) {
      starts.push_back(k);
      branch(k);
      starts.pop_back();
      if (found.size() >= cap) return;
    }
  };
  branch(n);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace linclust
