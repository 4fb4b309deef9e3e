#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "linclust/graph.hpp"

namespace linclust {

enum class ObjectiveKind { kModularity, kPenalizedDensity, kStrata, kCustom };

std::string_view to_string(ObjectiveKind kind);

/// How raw increments combine into a layer quality:
///   kUpperTriangular  f(L_{k,j}) = sum_{u=k..j} sum_{v=u..j} f_uv
///   kSymmetric        f(L_{k,j}) = sum_{u=k..j} sum_{v=k..j} f_uv
enum class SummationMode { kUpperTriangular, kSymmetric };

/// Constants of the strata objectives. Both penalties are chosen so that the
/// all-in-one-layer partition has quality exactly zero.
struct LayerQualityParams {
  double epsilon = 0.0;        // reciprocation penalty
  double epsilon_prime = 0.0;  // dominance penalty
  double lambda = 1.0;
  double w = 0.0;  // reciprocated pairs, self-pairs included
  double U = 0.0;  // unreciprocated unordered pairs
};

/// A layer-quality function given as a sum of pairwise quality increments.
///
/// Every built-in objective is stored as
///   pair(u, v) = sparse(u, v) + c_off  - s_off  * (a_u b_v + a_v b_u)   u < v
///   pair(u, u) = sparse(u, u) + c_diag - s_diag * a_u b_u
/// where sparse() is non-zero only for adjacent node pairs. This gives O(1)
/// dense terms and lets interval and block sums use prefix sums. Custom
/// objectives carry a full n x n table instead.
///
/// pair() is the total contribution of co-clustering an unordered pair; in
/// symmetric mode it folds f_uv + f_vu.
class PairwiseObjective {
 public:
  PairwiseObjective() = default;

  /// Any increment table, row-major n x n. Only u <= v entries are read in
  /// upper-triangular mode.
  static PairwiseObjective custom(std::size_t n, std::vector<double> table,
                                  SummationMode mode = SummationMode::kUpperTriangular);

  std::size_t size() const { return n_; }
  ObjectiveKind kind() const { return kind_; }
  SummationMode summation_mode() const { return mode_; }
  double lambda() const { return params_.lambda; }
  const LayerQualityParams& strata_params() const { return params_; }

  /// Raw increment f_uv as defined by the objective (u <= v unless the
  /// summation mode is symmetric).
  double increment(std::size_t u, std::size_t v) const;

  /// Contribution of putting u and v in the same layer (order-free).
  double pair(std::size_t u, std::size_t v) const;

  /// out[k] = pair(k, j) for k = 0..j. out.size() must be at least j + 1.
  void fill_column(std::size_t j, std::span<double> out) const;

  /// Sum of pair(u, v) over u in [a_lo, a_hi], v in [b_lo, b_hi]. The two
  /// ranges must not overlap.
  double block_sum(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) const;

  /// f(L_{k,j}) through prefix sums (the fast path; see layer_quality_naive
  /// for the direct summation).
  double interval_quality(std::size_t k, std::size_t j) const;

  /// Node i of the result is node order[i] of this objective.
  PairwiseObjective permuted(std::span<const std::size_t> order) const;

  /// Adds c to every raw increment.
  PairwiseObjective with_offset(double c) const;

 private:
  friend PairwiseObjective modularity_increments(const ScoredGraph& g);
  friend PairwiseObjective penalized_density_increments(const ScoredGraph& g);
  friend PairwiseObjective strata_increments(const ScoredGraph& g, double lambda);

  struct SparseEntry {
    std::size_t node;
    double weight;
  };

  double sparse_at(std::size_t u, std::size_t v) const;
  double sparse_block(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) const;
  void build_prefix();
  bool is_custom() const { return kind_ == ObjectiveKind::kCustom; }

  std::size_t n_ = 0;
  ObjectiveKind kind_ = ObjectiveKind::kCustom;
  SummationMode mode_ = SummationMode::kUpperTriangular;
  LayerQualityParams params_;

  // Structured form.
  std::vector<std::vector<SparseEntry>> sparse_;  // symmetric, sorted by node
  std::vector<double> a_, b_;
  double c_off_ = 0.0, c_diag_ = 0.0, s_off_ = 0.0, s_diag_ = 0.0;
  std::vector<double> prefix_a_, prefix_b_, prefix_ab_;

  // Custom form.
  std::vector<double> table_;
};

/// Modularity with the configuration-model null. Undirected graphs use
/// k_u k_v / 2m; directed graphs use k_u^out k_v^in / m.
PairwiseObjective modularity_increments(const ScoredGraph& g);

/// f(L) = (internal edges) - (layer size)^2.
PairwiseObjective penalized_density_increments(const ScoredGraph& g);

/// lambda * egalitarian + (1 - lambda) * dominance objective for directed
/// graphs. lambda = 1 rewards reciprocated ties, lambda = 0 penalizes
/// unreciprocated ones.
PairwiseObjective strata_increments(const ScoredGraph& g, double lambda);

/// f(L_{k,j}) by direct summation of raw increments.
double layer_quality_naive(const PairwiseObjective& obj, std::size_t k, std::size_t j);

/// Q = sum over layers of f(L_r). Circular partitions may contain wrapped
/// layers.
double partition_quality(const PairwiseObjective& obj, const Partition& p);

}  // namespace linclust
