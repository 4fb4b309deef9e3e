#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linclust/graph.hpp"

namespace linclust {

/// Group label per node, densified to 0..R-1 in order of first appearance.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::span<const std::size_t> raw_labels);
  static Labeling from_partition(const Partition& p);

  std::size_t size() const { return labels_.size(); }
  std::size_t group_count() const { return sizes_.size(); }
  std::span<const std::size_t> labels() const { return labels_; }
  std::span<const std::uint64_t> group_sizes() const { return sizes_; }

 private:
  std::vector<std::size_t> labels_;
  std::vector<std::uint64_t> sizes_;
};

/// Entropy in bits of the group-size distribution.
double entropy_of_sizes(const Labeling& p);

/// Plug-in mutual information in bits of the joint label table.
double mutual_information(const Labeling& p1, const Labeling& p2);

/// Exact number of non-negative integer matrices with row sums a and column
/// sums b. Returns nullopt when the memoized enumeration would place more
/// than max_steps column entries.
std::optional<double> count_contingency_tables(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               std::size_t max_steps = 20'000'000);

/// Analytic approximation of ln Omega(a, b) for large margins
/// (Newman, Cantwell & Young 2020, after Diaconis & Efron).
double log_contingency_tables_approx(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

enum class OmegaMethod { kAuto, kExact, kApproximate };

struct RmiOptions {
  OmegaMethod method = OmegaMethod::kAuto;
  /// Mean of both transmission directions instead of p2 given p1's sizes.
  bool symmetric = false;
};

/// log2 Omega(a, b) by the configured method.
double log2_contingency_tables(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                               OmegaMethod method = OmegaMethod::kAuto);

/// Reduced mutual information in bits: MI - log2(Omega) / n.
double reduced_mutual_information(const Labeling& p1, const Labeling& p2, RmiOptions opts = {});

}  // namespace linclust
