#include "linclust/synthgen.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "linclust/error.hpp"

namespace linclust {

void PlantedConfig::validate() const {
  if (n == 0) throw InputError("planted model needs n >= 1");
  if (q == 0 || q > n) throw InputError("planted model needs 1 <= q <= n");
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw InputError("planted model needs 0 <= p_out <= p_in <= 1");
  }
  if (!(sigma >= 0.0)) throw InputError("sigma must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
}

PlantedConfig PlantedConfig::sparse(std::size_t n, std::size_t q, double mean_degree, double eps, double alpha,
                                    double sigma, std::uint64_t seed) {
  PlantedConfig cfg;
  cfg.n = n;
  cfg.q = q;
  cfg.alpha = alpha;
  cfg.sigma = sigma;
  cfg.seed = seed;
  const double k_in = mean_degree / (1.0 + eps);
  const double k_out = mean_degree - k_in;
  const double block = static_cast<double>(n) / static_cast<double>(q);
  cfg.p_in = k_in / block;
  cfg.p_out = q > 1 ? k_out / (static_cast<double>(q - 1) * block) : 0.0;
  return cfg;
}

std::vector<std::size_t> planted_layer_sizes(std::size_t n, std::size_t q) {
  std::vector<std::size_t> sizes(q, n / q);
  for (std::size_t l = 0; l < n % q; ++l) ++sizes[l];
  return sizes;
}

PlantedInstance generate_planted(const PlantedConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::size_t> layer;
  layer.reserve(cfg.n);
  const auto sizes = planted_layer_sizes(cfg.n, cfg.q);
  for (std::size_t l = 0; l < cfg.q; ++l) layer.insert(layer.end(), sizes[l], l);

  std::vector<RawEdge> edges;
  for (std::size_t u = 0; u < cfg.n; ++u) {
    for (std::size_t v = u + 1; v < cfg.n; ++v) {
      const double p = layer[u] == layer[v] ? cfg.p_in : cfg.p_out;
      if (unit(rng) < p) edges.push_back({u, v, 1});
    }
  }

  std::vector<double> scores(cfg.n);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t u = 0; u < cfg.n; ++u) {
    const bool informative = unit(rng) < cfg.alpha;
    if (informative) {
      const double center = static_cast<double>(layer[u] + 1) / static_cast<double>(cfg.q + 1);
      scores[u] = center + cfg.sigma * noise(rng);
    } else {
      scores[u] = unit(rng);
    }
  }

  std::vector<std::string> ids(cfg.n);
  for (std::size_t u = 0; u < cfg.n; ++u) ids[u] = std::to_string(u);

  PlantedInstance inst;
  inst.graph = ScoredGraph::build(false, std::move(ids), std::move(scores), edges);
  inst.truth.resize(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const std::string& id = inst.graph.ids(i).front();
    std::size_t original = 0;
    std::from_chars(id.data(), id.data() + id.size(), original);
    inst.truth[i] = layer[original];
  }
  return inst;
}

std::string format_edges(const ScoredGraph& g) {
  std::ostringstream os;
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.out_neighbors(u)) {
      if (!g.directed() && nb.node < u) continue;
      os << g.ids(u).front() << ' ' << g.ids(nb.node).front();
      if (nb.count != 1) os << ' ' << nb.count;
      os << '\n';
    }
  }
  return os.str();
}

std::string format_scores(const ScoredGraph& g) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const auto& id : g.ids(u)) os << id << ' ' << g.score(u) << '\n';
  }
  return os.str();
}

}  // namespace linclust
