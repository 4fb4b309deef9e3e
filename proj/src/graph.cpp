#include "linclust/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

#include "linclust/error.hpp"

namespace linclust {

namespace {

using EdgeTriple = std::tuple<std::size_t, std::size_t, std::uint64_t>;

// Sorts and merges (u, v, count) triples so each ordered pair appears once.
void merge_triples(std::vector<EdgeTriple>& triples) {
  std::sort(triples.begin(), triples.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (out > 0 && std::get<0>(triples[out - 1]) == std::get<0>(triples[i]) &&
        std::get<1>(triples[out - 1]) == std::get<1>(triples[i])) {
      std::get<2>(triples[out - 1]) += std::get<2>(triples[i]);
    } else {
      triples[out++] = triples[i];
    }
  }
  triples.resize(out);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto fields = split_fields(line);
    if (!fields.empty()) fn(line_no, fields);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

ScoredGraph ScoredGraph::build(bool directed, std::vector<std::string> ids,
                               std::vector<double> scores, std::span<const RawEdge> edges) {
  if (ids.size() != scores.size()) throw InputError("ids and scores differ in length");
  const std::size_t n = ids.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  ScoredGraph g;
  g.directed_ = directed;
  g.scores_.resize(n);
  g.ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.scores_[i] = scores[order[i]];
    g.ids_[i] = {std::move(ids[order[i]])};
  }

  std::vector<EdgeTriple> triples;
  triples.reserve(directed ? edges.size() : 2 * edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
    if (e.count == 0) continue;
    const std::size_t u = rank[e.u], v = rank[e.v];
    triples.emplace_back(u, v, e.count);
    if (!directed && u != v) triples.emplace_back(v, u, e.count);
  }
  merge_triples(triples);
  g.out_.assign(n, {});
  if (directed) g.in_.assign(n, {});
  for (const auto& [u, v, c] : triples) {
    g.out_[u].push_back({v, c});
    if (directed) g.in_[v].push_back({u, c});
  }
  g.finalize();
  return g;
}

void ScoredGraph::finalize() {
  auto by_node = [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; };
  for (auto& list : out_) std::sort(list.begin(), list.end(), by_node);
  for (auto& list : in_) std::sort(list.begin(), list.end(), by_node);
  edge_count_ = 0;
  for (std::size_t u = 0; u < out_.size(); ++u) {
    for (const auto& nb : out_[u]) {
      if (directed_ || nb.node >= u) edge_count_ += nb.count;
    }
  }
}

std::uint64_t ScoredGraph::multiplicity(std::size_t u, std::size_t v) const {
  const auto& list = out_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& nb, std::size_t x) { return nb.node < x; });
  return (it != list.end() && it->node == v) ? it->count : 0;
}

std::uint64_t ScoredGraph::out_degree(std::size_t i) const {
  std::uint64_t k = 0;
  for (const auto& nb : out_[i]) k += nb.count;
  return k;
}

std::uint64_t ScoredGraph::in_degree(std::size_t i) const {
  if (!directed_) return out_degree(i);
  std::uint64_t k = 0;
  for (const auto& nb : in_[i]) k += nb.count;
  return k;
}

std::uint64_t ScoredGraph::degree(std::size_t i) const {
  if (directed_) return out_degree(i) + in_degree(i);
  std::uint64_t k = 0;
  for (const auto& nb : out_[i]) k += (nb.node == i) ? 2 * nb.count : nb.count;
  return k;
}

bool ScoredGraph::has_distinct_scores() const {
  for (std::size_t i = 1; i < scores_.size(); ++i) {
    if (!(scores_[i - 1] > scores_[i])) return false;
  }
  return true;
}

ScoredGraph ScoredGraph::relabeled(std::span<const std::size_t> order,
                                   std::span<const double> new_scores) const {
  const std::size_t n = size();
  if (order.size() != n || new_scores.size() != n) throw InputError("relabeling size mismatch");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) throw InputError("relabeling is not a permutation");
    pos[order[i]] = i;
  }
  ScoredGraph g;
  g.directed_ = directed_;
  g.collapsed_ = collapsed_;
  g.scores_.assign(new_scores.begin(), new_scores.end());
  g.ids_.resize(n);
  g.out_.assign(n, {});
  if (directed_) g.in_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    g.ids_[i] = ids_[order[i]];
    for (const auto& nb : out_[order[i]]) g.out_[i].push_back({pos[nb.node], nb.count});
    if (directed_) {
      for (const auto& nb : in_[order[i]]) g.in_[i].push_back({pos[nb.node], nb.count});
    }
  }
  g.finalize();
  return g;
}

Partition::Partition(std::size_t n, std::vector<std::size_t> starts, bool circular)
    : n_(n), starts_(std::move(starts)), circular_(circular) {
  if (n_ == 0) throw InputError("partition of zero nodes");
  std::sort(starts_.begin(), starts_.end());
  if (std::adjacent_find(starts_.begin(), starts_.end()) != starts_.end()) {
    throw InputError("duplicate layer start");
  }
  if (starts_.empty() || starts_.back() >= n_) throw InputError("layer start out of range");
  if (circular_) {
    if (starts_.size() == 1) starts_ = {0};
  } else if (starts_.front() != 0) {
    throw InputError("linear partition must start a layer at node 0");
  }
}

Partition Partition::single_layer(std::size_t n, bool circular) { return Partition(n, {0}, circular); }

Partition Partition::singletons(std::size_t n, bool circular) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return Partition(n, std::move(s), circular);
}

std::vector<Layer> Partition::layers() const {
  std::vector<Layer> out;
  out.reserve(starts_.size());
  for (std::size_t r = 0; r < starts_.size(); ++r) {
    const std::size_t lo = starts_[r];
    std::size_t hi;
    if (r + 1 < starts_.size()) {
      hi = starts_[r + 1] - 1;
    } else if (circular_) {
      hi = (starts_.front() + n_ - 1) % n_;
    } else {
      hi = n_ - 1;
    }
    out.push_back({lo, hi});
  }
  return out;
}

std::size_t Partition::layer_size(std::size_t r) const {
  if (r + 1 < starts_.size()) return starts_[r + 1] - starts_[r];
  return n_ - starts_[r] + (circular_ ? starts_.front() : 0);
}

std::vector<std::size_t> Partition::labels() const {
  std::vector<std::size_t> lab(n_);
  const auto ls = layers();
  for (std::size_t r = 0; r < ls.size(); ++r) {
    const std::size_t len = layer_size(r);
    for (std::size_t t = 0; t < len; ++t) lab[(ls[r].lo + t) % n_] = r;
  }
  return lab;
}

ScoredGraph parse_graph(std::string_view edge_text, std::string_view score_text, bool directed) {
  std::vector<std::string> ids;
  std::vector<double> scores;
  std::unordered_map<std::string, std::size_t> index;

  for_each_line(score_text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) {
      throw InputError("score line " + std::to_string(line_no) + ": expected 'id score'");
    }
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), x);
    if (ec != std::errc() || ptr != f[1].data() + f[1].size() || !std::isfinite(x)) {
      throw InputError("score line " + std::to_string(line_no) + ": non-numeric score '" +
                       std::string(f[1]) + "'");
    }
    std::string id(f[0]);
    if (!index.emplace(id, ids.size()).second) {
      throw InputError("score line " + std::to_string(line_no) + ": duplicate node '" + id + "'");
    }
    ids.push_back(std::move(id));
    scores.push_back(x);
  });
  if (ids.empty()) throw InputError("empty node set");

  std::vector<RawEdge> edges;
  for_each_line(edge_text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2 && f.size() != 3) {
      throw InputError("edge line " + std::to_string(line_no) + ": expected 'u v [count]'");
    }
    RawEdge e;
    for (int side = 0; side < 2; ++side) {
      auto it = index.find(std::string(f[side]));
      if (it == index.end()) {
        throw InputError("edge line " + std::to_string(line_no) + ": unknown node '" +
                         std::string(f[side]) + "'");
      }
      (side == 0 ? e.u : e.v) = it->second;
    }
    if (f.size() == 3) {
      auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), e.count);
      if (ec != std::errc() || ptr != f[2].data() + f[2].size() || e.count == 0) {
        throw InputError("edge line " + std::to_string(line_no) + ": bad multiplicity '" +
                         std::string(f[2]) + "'");
      }
    }
    edges.push_back(e);
  });

  return ScoredGraph::build(directed, std::move(ids), std::move(scores), edges);
}

ScoredGraph collapse_equal_scores(const ScoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> group(n);
  ScoredGraph out;
  out.directed_ = g.directed_;
  out.collapsed_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || g.scores_[i] != g.scores_[i - 1]) {
      out.scores_.push_back(g.scores_[i]);
      out.ids_.emplace_back();
    }
    group[i] = out.scores_.size() - 1;
    auto& dst = out.ids_.back();
    dst.insert(dst.end(), g.ids_[i].begin(), g.ids_[i].end());
  }

  const std::size_t m = out.scores_.size();
  std::vector<EdgeTriple> triples;
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& nb : g.out_[u]) {
      if (!g.directed_ && nb.node < u) continue;
      const std::size_t a = group[u], b = group[nb.node];
      triples.emplace_back(a, b, nb.count);
      if (!g.directed_ && a != b) triples.emplace_back(b, a, nb.count);
    }
  }
  merge_triples(triples);
  out.out_.assign(m, {});
  if (g.directed_) out.in_.assign(m, {});
  for (const auto& [a, b, c] : triples) {
    out.out_[a].push_back({b, c});
    if (g.directed_) out.in_[b].push_back({a, c});
  }
  out.finalize();
  return out;
}

}  // namespace linclust
