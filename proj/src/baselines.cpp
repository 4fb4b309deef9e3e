#include "linclust/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

#include "linclust/error.hpp"

namespace linclust {

namespace {

// Smallest change in Q counted as an improvement by the local search.
constexpr double kMoveTolerance = 1e-12;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void check_inputs(std::size_t graph_size, const PairwiseObjective& obj) {
  if (graph_size == 0) throw InputError("cannot cluster an empty graph");
  if (obj.size() != graph_size) throw InputError("objective and graph sizes differ");
}

enum class MergeOrder { kLargestGain, kSmallestGap };

// Agglomerates n singleton layers on a line or ring. Layers are identified by
// their start node; next_/prev_ link neighbouring layers. A boundary is named
// by the start node of the layer below it.
class Agglomerator {
 public:
  Agglomerator(const PairwiseObjective& obj, std::vector<double> gaps, bool circular, MergeOrder order)
      : obj_(obj), n_(obj.size()), circular_(circular), order_(order), gaps_(std::move(gaps)),
        len_(n_, 1), next_(n_), prev_(n_), version_(n_, 0), alive_(n_, true) {
    for (std::size_t i = 0; i < n_; ++i) {
      next_[i] = (i + 1) % n_;
      prev_[i] = (i + n_ - 1) % n_;
    }
  }

  AgglomerationRun run(bool record) {
    AgglomerationRun out;
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i) q += obj_.pair(i, i);
    std::size_t layers = n_;
    if (n_ > 1) {
      for (std::size_t b = circular_ ? 0 : 1; b < n_; ++b) push(b);
    }

    std::vector<std::size_t> merged;  // boundaries removed, in order
    double best_q = q;
    std::size_t best_step = 0;
    if (record) record_state(out, q);

    while (layers > 1) {
      const Entry e = pop_valid();
      const std::size_t lower = e.boundary;
      const std::size_t upper = prev_[lower];
      q += cross(upper, lower);
      // upper absorbs lower
      len_[upper] += len_[lower];
      alive_[lower] = false;
      next_[upper] = next_[lower];
      prev_[next_[lower]] = upper;
      --layers;
      merged.push_back(lower);
      if (order_ == MergeOrder::kLargestGain && layers > 1) {
        // Only the two pairs touching the merged layer change.
        ++version_[upper];
        ++version_[next_[upper]];
        if (circular_ || upper != 0) push(upper);
        if (circular_ || next_[upper] != 0) push(next_[upper]);
      }
      if (q > best_q) {
        best_q = q;
        best_step = merged.size();
      }
      if (record) record_state(out, q);
    }

    std::vector<bool> cut(n_, true);
    for (std::size_t s = 0; s < best_step; ++s) cut[merged[s]] = false;
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < n_; ++i) {
      if (cut[i]) starts.push_back(i);
    }
    if (!circular_ && (starts.empty() || starts.front() != 0)) starts.insert(starts.begin(), 0);
    if (starts.empty()) starts.push_back(0);
    out.best.partition = Partition(n_, std::move(starts), circular_);
    out.best.quality = best_q;
    return out;
  }

 private:
  struct Entry {
    double key;  // larger is better
    std::size_t position;
    std::size_t boundary;
    std::uint64_t version;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key < b.key;
      return a.position > b.position;  // topmost pair first
    }
  };

  // Sum of pair() between the layer starting at a and the one starting at b.
  double cross(std::size_t a, std::size_t b) const {
    double total = 0.0;
    for (const auto& [alo, ahi] : segments(a)) {
      for (const auto& [blo, bhi] : segments(b)) total += obj_.block_sum(alo, ahi, blo, bhi);
    }
    return total;
  }

  std::vector<std::pair<std::size_t, std::size_t>> segments(std::size_t start) const {
    const std::size_t end = start + len_[start] - 1;
    if (end < n_) return {{start, end}};
    return {{start, n_ - 1}, {0, end - n_}};
  }

  // Position used for "topmost first" tie-breaking: the upper layer's start.
  void push(std::size_t boundary) {
    const std::size_t upper = prev_[boundary];
    const double key = order_ == MergeOrder::kLargestGain ? cross(upper, boundary) : -gaps_[boundary];
    heap_.push({key, upper, boundary, version_[boundary]});
  }

  Entry pop_valid() {
    while (true) {
      Entry e = heap_.top();
      heap_.pop();
      if (!alive_[e.boundary]) continue;
      if (order_ == MergeOrder::kLargestGain && e.version != version_[e.boundary]) continue;
      return e;
    }
  }

  void record_state(AgglomerationRun& out, double q) const {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alive_[i]) starts.push_back(i);
    }
    out.trajectory.emplace_back(n_, std::move(starts), circular_);
    out.trajectory_quality.push_back(q);
  }

  const PairwiseObjective& obj_;
  std::size_t n_;
  bool circular_;
  MergeOrder order_;
  std::vector<double> gaps_;  // gaps_[b]: distance across boundary b
  std::vector<std::size_t> len_, next_, prev_;
  std::vector<std::uint64_t> version_;
  std::vector<bool> alive_;
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap_;
};

std::vector<double> linear_gaps(const ScoredGraph& g) {
  std::vector<double> gaps(g.size(), 0.0);
  for (std::size_t b = 1; b < g.size(); ++b) gaps[b] = g.score(b - 1) - g.score(b);
  return gaps;
}

std::vector<double> circular_gaps(const CircularScoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> gaps(n, 0.0);
  for (std::size_t b = 0; b < n; ++b) {
    double d = g.angle(b) - g.angle((b + n - 1) % n);
    if (b == 0) d += kTwoPi;
    gaps[b] = d;
  }
  return gaps;
}

AgglomerationRun agglomerate(const PairwiseObjective& obj, std::vector<double> gaps, bool circular,
                             MergeOrder order, Algorithm tag, bool record) {
  const auto t0 = std::chrono::steady_clock::now();
  Agglomerator engine(obj, std::move(gaps), circular, order);
  AgglomerationRun run = engine.run(record);
  run.best.algorithm = tag;
  run.best.runtime_ms = elapsed_ms(t0);
  return run;
}

}  // namespace

Solution greedy_local(const ScoredGraph& g, const PairwiseObjective& obj, std::uint64_t seed) {
  check_inputs(g.size(), obj);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.size();
  // starts_here[i]: a layer begins at node i
  std::vector<bool> starts_here(n, true);
  auto layer_lo = [&](std::size_t x) {
    while (!starts_here[x]) --x;
    return x;
  };
  auto layer_hi = [&](std::size_t x) {
    while (x + 1 < n && !starts_here[x + 1]) ++x;
    return x;
  };

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> visit(n);
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  bool moved = true;
  while (moved) {
    moved = false;
    std::shuffle(visit.begin(), visit.end(), rng);
    for (std::size_t x : visit) {
      const std::size_t lo = layer_lo(x), hi = layer_hi(x);
      double up_gain = 0.0, down_gain = 0.0;
      bool can_up = false, can_down = false;
      if (x == lo && lo > 0) {
        const std::size_t above_lo = layer_lo(lo - 1);
        up_gain = obj.block_sum(x, x, above_lo, lo - 1) - (x < hi ? obj.block_sum(x, x, x + 1, hi) : 0.0);
        can_up = true;
      }
      if (x == hi && hi + 1 < n) {
        const std::size_t below_hi = layer_hi(hi + 1);
        down_gain = obj.block_sum(x, x, hi + 1, below_hi) - (x > lo ? obj.block_sum(x, x, lo, x - 1) : 0.0);
        can_down = true;
      }
      const bool up_ok = can_up && up_gain > kMoveTolerance;
      const bool down_ok = can_down && down_gain > kMoveTolerance;
      if (up_ok && (!down_ok || up_gain >= down_gain)) {
        // x joins the layer above; the next node (if still ours) starts a layer
        starts_here[x] = false;
        if (x < hi) starts_here[x + 1] = true;
        moved = true;
      } else if (down_ok) {
        // x joins the layer below
        starts_here[hi + 1] = false;
        starts_here[x] = true;
        moved = true;
      }
    }
  }

  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    if (starts_here[i]) starts.push_back(i);
  }
  Solution sol;
  sol.partition = Partition(n, std::move(starts));
  sol.quality = partition_quality(obj, sol.partition);
  sol.algorithm = Algorithm::kGreedy;
  sol.runtime_ms = elapsed_ms(t0);
  return sol;
}

AgglomerationRun merge_heuristic_run(const ScoredGraph& g, const PairwiseObjective& obj, bool record) {
  check_inputs(g.size(), obj);
  return agglomerate(obj, std::vector<double>(g.size(), 0.0), false, MergeOrder::kLargestGain,
                     Algorithm::kMerge, record);
}

Solution merge_heuristic(const ScoredGraph& g, const PairwiseObjective& obj) {
  return merge_heuristic_run(g, obj, false).best;
}

AgglomerationRun critical_gap_run(const ScoredGraph& g, const PairwiseObjective& obj, bool record) {
  check_inputs(g.size(), obj);
  return agglomerate(obj, linear_gaps(g), false, MergeOrder::kSmallestGap, Algorithm::kCriticalGap, record);
}

Solution critical_gap(const ScoredGraph& g, const PairwiseObjective& obj) {
  return critical_gap_run(g, obj, false).best;
}

Solution merge_heuristic_periodic(const CircularScoredGraph& g, const PairwiseObjective& obj) {
  check_inputs(g.size(), obj);
  return agglomerate(obj, std::vector<double>(g.size(), 0.0), true, MergeOrder::kLargestGain,
                     Algorithm::kMerge, false)
      .best;
}

AgglomerationRun critical_gap_periodic_run(const CircularScoredGraph& g, const PairwiseObjective& obj,
                                           bool record) {
  check_inputs(g.size(), obj);
  return agglomerate(obj, circular_gaps(g), true, MergeOrder::kSmallestGap, Algorithm::kCriticalGap, record);
}

Solution critical_gap_periodic(const CircularScoredGraph& g, const PairwiseObjective& obj) {
  return critical_gap_periodic_run(g, obj, false).best;
}

}  // namespace linclust
