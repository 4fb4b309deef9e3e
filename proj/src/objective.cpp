#include "linclust/objective.hpp"

#include <algorithm>
#include <string>

#include "linclust/error.hpp"

namespace linclust {

namespace {

struct PairWeight {
  std::size_t u, v;
  double w;
};

// Symmetric per-node lists from (u, v, w) contributions; entries for the same
// unordered pair are summed. Each contribution is mirrored for u != v.
template <typename Entry>
std::vector<std::vector<Entry>> accumulate(std::size_t n, std::vector<PairWeight> pairs) {
  std::vector<PairWeight> all;
  all.reserve(2 * pairs.size());
  for (const auto& p : pairs) {
    all.push_back(p);
    if (p.u != p.v) all.push_back({p.v, p.u, p.w});
  }
  std::sort(all.begin(), all.end(), [](const PairWeight& a, const PairWeight& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<std::vector<Entry>> lists(n);
  for (const auto& p : all) {
    auto& list = lists[p.u];
    if (!list.empty() && list.back().node == p.v) {
      list.back().weight += p.w;
    } else {
      list.push_back({p.v, p.w});
    }
  }
  return lists;
}

// Contributions for each unordered node pair {u, v} with at least one edge,
// summing both orientations for directed graphs.
std::vector<PairWeight> edge_pairs(const ScoredGraph& g, double scale) {
  std::vector<PairWeight> pairs;
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.out_neighbors(u)) {
      if (!g.directed() && nb.node < u) continue;
      pairs.push_back({std::min(u, nb.node), std::max(u, nb.node), scale * static_cast<double>(nb.count)});
    }
  }
  return pairs;
}

void check_range(const PairwiseObjective& obj, std::size_t k, std::size_t j) {
  if (k > j || j >= obj.size()) {
    throw InputError("layer [" + std::to_string(k) + ", " + std::to_string(j) +
                     "] out of range for " + std::to_string(obj.size()) + " nodes");
  }
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kModularity: return "modularity";
    case ObjectiveKind::kPenalizedDensity: return "density";
    case ObjectiveKind::kStrata: return "strata";
    case ObjectiveKind::kCustom: return "custom";
  }
  return "unknown";
}

PairwiseObjective PairwiseObjective::custom(std::size_t n, std::vector<double> table, SummationMode mode) {
  if (table.size() != n * n) throw InputError("custom increment table must be n x n");
  PairwiseObjective obj;
  obj.n_ = n;
  obj.kind_ = ObjectiveKind::kCustom;
  obj.mode_ = mode;
  obj.table_ = std::move(table);
  return obj;
}

void PairwiseObjective::build_prefix() {
  a_.resize(n_, 0.0);
  b_.resize(n_, 0.0);
  prefix_a_.assign(n_ + 1, 0.0);
  prefix_b_.assign(n_ + 1, 0.0);
  prefix_ab_.assign(n_ + 1, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    prefix_a_[i + 1] = prefix_a_[i] + a_[i];
    prefix_b_[i + 1] = prefix_b_[i] + b_[i];
    prefix_ab_[i + 1] = prefix_ab_[i] + a_[i] * b_[i];
  }
}

double PairwiseObjective::sparse_at(std::size_t u, std::size_t v) const {
  const auto& list = sparse_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const SparseEntry& e, std::size_t x) { return e.node < x; });
  return (it != list.end() && it->node == v) ? it->weight : 0.0;
}

double PairwiseObjective::increment(std::size_t u, std::size_t v) const {
  if (is_custom()) return table_[u * n_ + v];
  return pair(u, v);
}

double PairwiseObjective::pair(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  if (is_custom()) {
    if (u == v || mode_ == SummationMode::kUpperTriangular) return table_[u * n_ + v];
    return table_[u * n_ + v] + table_[v * n_ + u];
  }
  if (u == v) return sparse_at(u, u) + c_diag_ - s_diag_ * a_[u] * b_[u];
  return sparse_at(u, v) + c_off_ - s_off_ * (a_[u] * b_[v] + a_[v] * b_[u]);
}

void PairwiseObjective::fill_column(std::size_t j, std::span<double> out) const {
  if (is_custom()) {
    for (std::size_t k = 0; k <= j; ++k) out[k] = pair(k, j);
    return;
  }
  const double aj = a_[j], bj = b_[j];
  for (std::size_t k = 0; k < j; ++k) out[k] = c_off_ - s_off_ * (a_[k] * bj + aj * b_[k]);
  out[j] = c_diag_ - s_diag_ * aj * bj;
  for (const auto& e : sparse_[j]) {
    if (e.node > j) break;
    out[e.node] += e.weight;
  }
}

double PairwiseObjective::sparse_block(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo,
                                       std::size_t b_hi) const {
  if (a_hi - a_lo > b_hi - b_lo) {
    std::swap(a_lo, b_lo);
    std::swap(a_hi, b_hi);
  }
  double total = 0.0;
  for (std::size_t u = a_lo; u <= a_hi; ++u) {
    const auto& list = sparse_[u];
    auto it = std::lower_bound(list.begin(), list.end(), b_lo,
                               [](const SparseEntry& e, std::size_t x) { return e.node < x; });
    for (; it != list.end() && it->node <= b_hi; ++it) total += it->weight;
  }
  return total;
}

double PairwiseObjective::block_sum(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo,
                                    std::size_t b_hi) const {
  if (is_custom()) {
    double total = 0.0;
    for (std::size_t u = a_lo; u <= a_hi; ++u) {
      for (std::size_t v = b_lo; v <= b_hi; ++v) total += pair(u, v);
    }
    return total;
  }
  const double na = static_cast<double>(a_hi - a_lo + 1);
  const double nb = static_cast<double>(b_hi - b_lo + 1);
  const double sa_a = prefix_a_[a_hi + 1] - prefix_a_[a_lo];
  const double sa_b = prefix_b_[a_hi + 1] - prefix_b_[a_lo];
  const double sb_a = prefix_a_[b_hi + 1] - prefix_a_[b_lo];
  const double sb_b = prefix_b_[b_hi + 1] - prefix_b_[b_lo];
  return c_off_ * na * nb - s_off_ * (sa_a * sb_b + sa_b * sb_a) +
         sparse_block(a_lo, a_hi, b_lo, b_hi);
}

double PairwiseObjective::interval_quality(std::size_t k, std::size_t j) const {
  check_range(*this, k, j);
  if (is_custom()) {
    double total = 0.0;
    for (std::size_t u = k; u <= j; ++u) {
      for (std::size_t v = u; v <= j; ++v) total += pair(u, v);
    }
    return total;
  }
  const double len = static_cast<double>(j - k + 1);
  const double sa = prefix_a_[j + 1] - prefix_a_[k];
  const double sb = prefix_b_[j + 1] - prefix_b_[k];
  const double sab = prefix_ab_[j + 1] - prefix_ab_[k];
  double total = c_off_ * len * (len - 1.0) / 2.0 - s_off_ * (sa * sb - sab) + c_diag_ * len -
                 s_diag_ * sab;
  for (std::size_t u = k; u <= j; ++u) {
    const auto& list = sparse_[u];
    auto it = std::lower_bound(list.begin(), list.end(), u,
                               [](const SparseEntry& e, std::size_t x) { return e.node < x; });
    for (; it != list.end() && it->node <= j; ++it) total += it->weight;
  }
  return total;
}

PairwiseObjective PairwiseObjective::permuted(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw InputError("permutation size mismatch");
  std::vector<std::size_t> pos(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (order[i] >= n_ || pos[order[i]] != n_) throw InputError("not a permutation");
    pos[order[i]] = i;
  }
  PairwiseObjective out = *this;
  if (is_custom()) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t oi = order[i], oj = order[j];
        if (mode_ == SummationMode::kSymmetric) {
          out.table_[i * n_ + j] = table_[oi * n_ + oj];
        } else {
          out.table_[i * n_ + j] = table_[std::min(oi, oj) * n_ + std::max(oi, oj)];
        }
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    out.a_[i] = a_[order[i]];
    out.b_[i] = b_[order[i]];
    auto& list = out.sparse_[i];
    list.clear();
    for (const auto& e : sparse_[order[i]]) list.push_back({pos[e.node], e.weight});
    std::sort(list.begin(), list.end(),
              [](const SparseEntry& x, const SparseEntry& y) { return x.node < y.node; });
  }
  out.build_prefix();
  return out;
}

PairwiseObjective PairwiseObjective::with_offset(double c) const {
  PairwiseObjective out = *this;
  if (is_custom()) {
    for (auto& x : out.table_) x += c;
    return out;
  }
  out.c_off_ += c;
  out.c_diag_ += c;
  return out;
}

PairwiseObjective modularity_increments(const ScoredGraph& g) {
  const auto m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw InputError("modularity is undefined for a graph without edges");
  PairwiseObjective obj;
  obj.n_ = g.size();
  obj.kind_ = ObjectiveKind::kModularity;
  obj.a_.resize(obj.n_);
  obj.b_.resize(obj.n_);
  if (g.directed()) {
    for (std::size_t i = 0; i < obj.n_; ++i) {
      obj.a_[i] = static_cast<double>(g.out_degree(i));
      obj.b_[i] = static_cast<double>(g.in_degree(i));
    }
    obj.s_off_ = obj.s_diag_ = 1.0 / (m * m);
  } else {
    for (std::size_t i = 0; i < obj.n_; ++i) obj.a_[i] = obj.b_[i] = static_cast<double>(g.degree(i));
    obj.s_off_ = obj.s_diag_ = 1.0 / (4.0 * m * m);
  }
  obj.sparse_ = accumulate<PairwiseObjective::SparseEntry>(obj.n_, edge_pairs(g, 1.0 / m));
  obj.build_prefix();
  return obj;
}

PairwiseObjective penalized_density_increments(const ScoredGraph& g) {
  PairwiseObjective obj;
  obj.n_ = g.size();
  obj.kind_ = ObjectiveKind::kPenalizedDensity;
  // n_r^2 = n_r + 2 * C(n_r, 2)
  obj.c_off_ = -2.0;
  obj.c_diag_ = -1.0;
  obj.sparse_ = accumulate<PairwiseObjective::SparseEntry>(obj.n_, edge_pairs(g, 1.0));
  obj.build_prefix();
  return obj;
}

PairwiseObjective strata_increments(const ScoredGraph& g, double lambda) {
  if (!g.directed()) throw InfeasibleError("strata objectives need a directed graph");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("lambda must lie in [0, 1]");
  const std::size_t n = g.size();

  std::vector<PairWeight> recip, unrecip;  // weight 1 indicators
  double w = 0.0, U = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    // Neighbours in either direction, each visited once from the smaller index.
    std::vector<std::size_t> others;
    for (const auto& nb : g.out_neighbors(u)) {
      if (nb.node >= u) others.push_back(nb.node);
    }
    for (const auto& nb : g.in_neighbors(u)) {
      if (nb.node >= u) others.push_back(nb.node);
    }
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (std::size_t v : others) {
      const bool uv = g.multiplicity(u, v) > 0;
      const bool vu = g.multiplicity(v, u) > 0;
      if (uv && vu) {
        recip.push_back({u, v, 1.0});
        w += 1.0;
      } else if (u != v) {
        unrecip.push_back({u, v, 1.0});
        U += 1.0;
      }
    }
  }

  PairwiseObjective obj;
  obj.n_ = n;
  obj.kind_ = ObjectiveKind::kStrata;
  const double pairs_with_replacement = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  obj.params_.lambda = lambda;
  obj.params_.w = w;
  obj.params_.U = U;
  obj.params_.epsilon = w / pairs_with_replacement;
  obj.params_.epsilon_prime = U / pairs_with_replacement;

  std::vector<PairWeight> contributions;
  contributions.reserve(recip.size() + unrecip.size());
  for (const auto& p : recip) contributions.push_back({p.u, p.v, lambda});
  for (const auto& p : unrecip) contributions.push_back({p.u, p.v, -(1.0 - lambda)});
  obj.sparse_ = accumulate<PairwiseObjective::SparseEntry>(n, std::move(contributions));
  obj.c_off_ = obj.c_diag_ = -lambda * obj.params_.epsilon + (1.0 - lambda) * obj.params_.epsilon_prime;
  obj.build_prefix();
  return obj;
}

double layer_quality_naive(const PairwiseObjective& obj, std::size_t k, std::size_t j) {
  check_range(obj, k, j);
  double total = 0.0;
  if (obj.summation_mode() == SummationMode::kSymmetric) {
    for (std::size_t u = k; u <= j; ++u) {
      for (std::size_t v = k; v <= j; ++v) total += obj.increment(u, v);
    }
  } else {
    for (std::size_t u = k; u <= j; ++u) {
      for (std::size_t v = u; v <= j; ++v) total += obj.increment(u, v);
    }
  }
  return total;
}

double partition_quality(const PairwiseObjective& obj, const Partition& p) {
  const std::size_t n = obj.size();
  if (p.node_count() != n) throw InputError("partition does not cover the objective's nodes");
  double q = 0.0;
  for (const auto& layer : p.layers()) {
    if (layer.lo <= layer.hi) {
      q += obj.interval_quality(layer.lo, layer.hi);
    } else {
      // wrapped layer: [lo, n-1] followed by [0, hi]
      q += obj.interval_quality(layer.lo, n - 1) + obj.interval_quality(0, layer.hi) +
           obj.block_sum(layer.lo, n - 1, 0, layer.hi);
    }
  }
  return q;
}

}  // namespace linclust
