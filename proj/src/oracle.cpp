#include "linclust/oracle.hpp"

#include <bit>
#include <chrono>
#include <string>
#include <vector>

#include "linclust/error.hpp"

namespace linclust {

namespace {

void check_cap(std::size_t n) {
  if (n == 0) throw InputError("enumeration needs at least one node");
  if (n > kOracleMaxNodes) {
    throw InfeasibleError("brute-force enumeration is capped at " + std::to_string(kOracleMaxNodes) +
                          " nodes (got " + std::to_string(n) + ")");
  }
}

// quality[lo][len - 1] of the run of len nodes starting at lo, wrapping past
// n - 1 in circular mode; summed pair by pair.
class RunQualities {
 public:
  RunQualities(const PairwiseObjective& obj, EmbeddingMode mode) : n_(obj.size()), table_(n_ * n_, 0.0) {
    const bool circular = mode == EmbeddingMode::kCircular;
    for (std::size_t lo = 0; lo < n_; ++lo) {
      const std::size_t max_len = circular ? n_ : n_ - lo;
      for (std::size_t len = 1; len <= max_len; ++len) {
        double total = 0.0;
        for (std::size_t s = 0; s < len; ++s) {
          for (std::size_t t = s; t < len; ++t) {
            total += obj.pair((lo + s) % n_, (lo + t) % n_);
          }
        }
        table_[lo * n_ + len - 1] = total;
      }
    }
  }

  double quality(const Partition& p) const {
    double q = 0.0;
    const auto starts = p.starts();
    for (std::size_t r = 0; r < starts.size(); ++r) q += table_[starts[r] * n_ + p.layer_size(r) - 1];
    return q;
  }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

}  // namespace

PartitionIterator::PartitionIterator(std::size_t n, EmbeddingMode mode) : n_(n), mode_(mode) {
  check_cap(n);
  end_ = mode == EmbeddingMode::kLinear ? (std::uint64_t{1} << (n - 1)) : (std::uint64_t{1} << n);
}

std::uint64_t PartitionIterator::size() const {
  return mode_ == EmbeddingMode::kLinear ? end_ : end_ - n_;
}

std::optional<Partition> PartitionIterator::next() {
  if (mode_ == EmbeddingMode::kCircular) {
    while (mask_ < end_ && std::popcount(mask_) == 1) ++mask_;
  }
  if (mask_ >= end_) return std::nullopt;
  std::vector<std::size_t> starts;
  if (mode_ == EmbeddingMode::kLinear) {
    // bit i set: cut between node i and i + 1
    starts.push_back(0);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (mask_ >> i & 1) starts.push_back(i + 1);
    }
  } else if (mask_ == 0) {
    starts.push_back(0);
  } else {
    // bit i set: a layer starts at node i
    for (std::size_t i = 0; i < n_; ++i) {
      if (mask_ >> i & 1) starts.push_back(i);
    }
  }
  ++mask_;
  return Partition(n_, std::move(starts), mode_ == EmbeddingMode::kCircular);
}

PartitionIterator enumerate_contiguous_partitions(std::size_t n, EmbeddingMode mode) {
  return PartitionIterator(n, mode);
}

Solution brute_force_best(const ScoredGraph& g, const PairwiseObjective& obj, EmbeddingMode mode) {
  check_cap(g.size());
  if (obj.size() != g.size()) throw InputError("objective and graph sizes differ");
  const auto t0 = std::chrono::steady_clock::now();
  const RunQualities runs(obj, mode);
  auto it = enumerate_contiguous_partitions(g.size(), mode);
  Solution best;
  best.algorithm = Algorithm::kBruteForce;
  bool have = false;
  while (auto p = it.next()) {
    const double q = runs.quality(*p);
    if (!have || q > best.quality || (q == best.quality && *p < best.partition)) {
      best.partition = std::move(*p);
      best.quality = q;
      have = true;
    }
  }
  best.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

std::vector<Partition> brute_force_optima(const PairwiseObjective& obj, EmbeddingMode mode, double tol) {
  check_cap(obj.size());
  const RunQualities runs(obj, mode);
  std::vector<std::pair<double, Partition>> all;
  double top = 0.0;
  auto it = enumerate_contiguous_partitions(obj.size(), mode);
  while (auto p = it.next()) {
    const double q = runs.quality(*p);
    if (all.empty() || q > top) top = q;
    all.emplace_back(q, std::move(*p));
  }
  std::vector<Partition> out;
  for (auto& [q, p] : all) {
    if (q >= top - tol) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace linclust
