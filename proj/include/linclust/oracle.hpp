#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "linclust/dp_solver.hpp"
#include "linclust/graph.hpp"
#include "linclust/objective.hpp"

namespace linclust {

enum class EmbeddingMode { kLinear, kCircular };

/// Largest node count the enumeration accepts.
inline constexpr std::size_t kOracleMaxNodes = 24;

/// Walks every contiguous partition of n nodes exactly once.
///
/// Linear mode visits the 2^(n-1) subsets of the n-1 gaps. Circular mode
/// visits cut subsets of the n gaps around the circle; a single cut leaves
/// one layer, the same partition as no cut, so those subsets are skipped and
/// 2^n - n partitions remain.
class PartitionIterator {
 public:
  PartitionIterator(std::size_t n, EmbeddingMode mode);

  std::optional<Partition> next();

  /// Number of partitions the iterator yields in total.
  std::uint64_t size() const;

 private:
  std::size_t n_;
  EmbeddingMode mode_;
  std::uint64_t mask_ = 0;
  std::uint64_t end_;
};

PartitionIterator enumerate_contiguous_partitions(std::size_t n, EmbeddingMode mode);

/// Exact optimum by full enumeration. Layer qualities come from direct
/// summation of increments. Among equal-quality maximizers the one with the
/// lexicographically smallest layer starts wins.
Solution brute_force_best(const ScoredGraph& g, const PairwiseObjective& obj, EmbeddingMode mode);

/// Every maximizer whose quality is within tol of the optimum.
std::vector<Partition> brute_force_optima(const PairwiseObjective& obj, EmbeddingMode mode, double tol);

}  // namespace linclust
