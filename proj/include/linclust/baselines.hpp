#pragma once

#include <cstdint>
#include <vector>

#include "linclust/dp_solver.hpp"
#include "linclust/graph.hpp"
#include "linclust/objective.hpp"
#include "linclust/periodic.hpp"

namespace linclust {

/// Result of an agglomerative run: the best partition seen plus, on request,
/// every intermediate partition (n of them, singletons first) and the
/// incrementally maintained quality of each.
struct AgglomerationRun {
  Solution best;
  std::vector<Partition> trajectory;
  std::vector<double> trajectory_quality;
};

/// Local moves from all-singleton layers. Nodes are visited in a seeded
/// random order each sweep; a node on the edge of its layer may join the
/// layer directly above or below, whichever improves Q more. Sweeps repeat
/// until none moves.
Solution greedy_local(const ScoredGraph& g, const PairwiseObjective& obj, std::uint64_t seed);

/// Repeatedly merges the adjacent pair of layers with the largest change in
/// Q (possibly negative) until one layer is left; returns the best partition
/// along the way.
Solution merge_heuristic(const ScoredGraph& g, const PairwiseObjective& obj);
AgglomerationRun merge_heuristic_run(const ScoredGraph& g, const PairwiseObjective& obj,
                                     bool record_trajectory);

/// Merges adjacent layers in order of increasing score gap between their
/// facing end nodes; returns the best partition along the way.
Solution critical_gap(const ScoredGraph& g, const PairwiseObjective& obj);
AgglomerationRun critical_gap_run(const ScoredGraph& g, const PairwiseObjective& obj,
                                  bool record_trajectory);

/// Circular variants; the seam between the last and first node is a gap
/// like any other.
Solution merge_heuristic_periodic(const CircularScoredGraph& g, const PairwiseObjective& obj);
Solution critical_gap_periodic(const CircularScoredGraph& g, const PairwiseObjective& obj);
AgglomerationRun critical_gap_periodic_run(const CircularScoredGraph& g, const PairwiseObjective& obj,
                                           bool record_trajectory);

}  // namespace linclust
