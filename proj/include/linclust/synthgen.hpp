#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linclust/graph.hpp"

namespace linclust {

/// Planted partition model with a score channel. Layer l (1-based) has
/// central score l / (q + 1); a node's score is drawn from
/// Normal(center, sigma) with probability alpha and from Uniform[0, 1]
/// otherwise.
struct PlantedConfig {
  std::size_t n = 500;
  std::size_t q = 3;
  double p_in = 0.05;
  double p_out = 0.0005;
  double sigma = 0.05;
  double alpha = 0.9;
  std::uint64_t seed = 0;

  /// Throws InputError when the parameters are out of range.
  void validate() const;

  /// Sparse parameterization by mean degree and the ratio
  /// eps = <k_out> / <k_in>, with <k_in> = p_in n / q and
  /// <k_out> = p_out (q - 1) n / q.
  static PlantedConfig sparse(std::size_t n, std::size_t q, double mean_degree, double eps, double alpha,
                              double sigma, std::uint64_t seed);
};

struct PlantedInstance {
  ScoredGraph graph;              // uncollapsed, sorted by score
  std::vector<std::size_t> truth;  // planted layer (0-based) of each graph node
};

/// Sizes of the planted layers; the n mod q extra nodes go to the first layers.
std::vector<std::size_t> planted_layer_sizes(std::size_t n, std::size_t q);

PlantedInstance generate_planted(const PlantedConfig& cfg);

/// Writes the instance in the edge/score text formats (node ids are the
/// generator's integer labels).
std::string format_edges(const ScoredGraph& g);
std::string format_scores(const ScoredGraph& g);

}  // namespace linclust
