#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linclust {

/// Edge as given to the graph builder, with endpoints indexing the node list
/// passed alongside it.
struct RawEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::uint64_t count = 1;
};

struct Neighbor {
  std::size_t node = 0;
  std::uint64_t count = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// A network whose nodes sit on a line.
///
/// Node 0 has the highest score and scores are non-increasing with the index.
/// Multiplicities are stored per ordered pair. Undirected graphs are
/// symmetric (mult(u, v) == mult(v, u)) and a self-loop u-u is stored once
/// with its loop count; directed graphs store each orientation separately.
///
/// The degree convention keeps sum_i k_i == 2 m: a self-loop adds one to m
/// and two to the degree of its node.
class ScoredGraph {
 public:
  ScoredGraph() = default;

  /// Sorts nodes by (score desc, first id asc) and accumulates parallel
  /// edges. Undirected edges are symmetrized; "a b" and "b a" add up.
  static ScoredGraph build(bool directed, std::vector<std::string> ids,
                           std::vector<double> scores,
                           std::span<const RawEdge> edges);

  std::size_t size() const { return scores_.size(); }
  bool directed() const { return directed_; }
  bool is_collapsed() const { return collapsed_; }

  double score(std::size_t i) const { return scores_[i]; }
  std::span<const double> scores() const { return scores_; }

  /// External labels absorbed by node i (one label unless collapsed).
  const std::vector<std::string>& ids(std::size_t i) const { return ids_[i]; }

  std::uint64_t multiplicity(std::size_t u, std::size_t v) const;

  /// Targets of edges leaving u, sorted by node. For undirected graphs this
  /// is the full neighbourhood including a self-loop entry.
  std::span<const Neighbor> out_neighbors(std::size_t u) const { return out_[u]; }
  std::span<const Neighbor> in_neighbors(std::size_t u) const {
    return directed_ ? std::span<const Neighbor>(in_[u]) : std::span<const Neighbor>(out_[u]);
  }

  /// Total edge count m, self-loops included.
  std::uint64_t edge_count() const { return edge_count_; }

  /// k_i (total degree; in + out for directed graphs).
  std::uint64_t degree(std::size_t i) const;
  std::uint64_t out_degree(std::size_t i) const;
  std::uint64_t in_degree(std::size_t i) const;

  /// True when scores are strictly decreasing.
  bool has_distinct_scores() const;

  /// Node i of the result is node order[i] of this graph, with score
  /// new_scores[i]. The caller is responsible for the resulting order being
  /// non-increasing in score.
  ScoredGraph relabeled(std::span<const std::size_t> order,
                        std::span<const double> new_scores) const;

  friend bool operator==(const ScoredGraph&, const ScoredGraph&) = default;

 private:
  friend ScoredGraph collapse_equal_scores(const ScoredGraph& g);

  void finalize();

  bool directed_ = false;
  bool collapsed_ = false;
  std::vector<double> scores_;
  std::vector<std::vector<std::string>> ids_;
  std::vector<std::vector<Neighbor>> out_;
  std::vector<std::vector<Neighbor>> in_;  // empty for undirected graphs
  std::uint64_t edge_count_ = 0;
};

/// A contiguous run of nodes [lo, hi]. On a circle hi < lo denotes a layer
/// that wraps past the last node.
struct Layer {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// A division of n nodes into contiguous layers, stored as the sorted start
/// indices of the layers.
///
/// Linear partitions always start a layer at 0. Circular partitions are
/// canonical: a single layer is stored as {0}, otherwise each start marks a
/// cut between start-1 and start (mod n).
class Partition {
 public:
  Partition() = default;
  Partition(std::size_t n, std::vector<std::size_t> starts, bool circular = false);

  static Partition single_layer(std::size_t n, bool circular = false);
  static Partition singletons(std::size_t n, bool circular = false);

  std::size_t node_count() const { return n_; }
  std::size_t layer_count() const { return starts_.size(); }
  bool circular() const { return circular_; }
  std::span<const std::size_t> starts() const { return starts_; }

  std::vector<Layer> layers() const;
  std::size_t layer_size(std::size_t r) const;

  /// Layer index of every node.
  std::vector<std::size_t> labels() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.starts_ <=> b.starts_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> starts_;
  bool circular_ = false;
};

/// Parses the line formats used throughout the tools:
///   edges:  "u v" or "u v c" (c a positive multiplicity)
///   scores: "u x"
/// '#' starts a comment; blank lines are skipped.
ScoredGraph parse_graph(std::string_view edge_text, std::string_view score_text, bool directed);

/// Merges nodes with exactly equal scores into super-nodes. Edges inside a
/// merged group become self-loops, parallel edges become multiplicities.
ScoredGraph collapse_equal_scores(const ScoredGraph& g);

}  // namespace linclust
