#pragma once

// Globally minimum trees by exhaustive topology enumeration with a single
// lower-bound prune, under each bounding strategy.

#include <cstdint>
#include <optional>

#include "fqst/analysis.hpp"
#include "fqst/strategy.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace fqst {

struct SearchOptions {
  // Largest n accepted. Defaults: 8 when only full topologies are searched,
  // 6 otherwise.
  std::optional<int> guard_n;
  // Refuse when the Steiner budget (k, or the node-weighted bound B)
  // exceeds this.
  int max_steiner_budget = 24;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  // DegreeBound(3) only: search full topologies alone. Degenerate full
  // trees reproduce every degree-admissible non-full one, so the optimum is
  // unchanged.
  bool full_only = false;
};

int effective_guard(const SearchOptions& options);

struct SearchBounds {
  // lower_bound_path at the largest admissible Steiner count.
  double lower = 0.0;
  // Node-weighted only.
  std::optional<double> bst_objective;
  std::optional<int> steiner_count_bound;
};

struct SearchReport {
  // Beads expanded into explicit degree-2 Steiner points.
  SolvedTree best;
  // L(T), or L(T) + c|S| for NodeWeighted.
  double objective = 0.0;
  std::uint64_t topologies_examined = 0;
  // Skeletons, or (skeleton, bead total) groups, discarded by the bound.
  std::uint64_t topologies_pruned = 0;
  BoundStrategy strategy;
  SearchBounds bounds;
};

// Locally minimal tree of a branching skeleton with p_e beads on each edge,
// solved with edge weights f/(p+1). `tree.cost` is the beaded cost.
struct BeadedSolve {
  SolvedTree skeleton;
  BeadVector beads;
  double cost = 0.0;
  int bead_total = 0;
};

BeadedSolve solve_with_beads(const Instance& instance, const Topology& skeleton,
                             const BeadVector& beads);

// Objective of a tree under a strategy: L, or L + c|S|.
double objective(const SolvedTree& tree, const BoundStrategy& strategy);

// Throws GuardRefusalError when n or the Steiner budget is over the guard.
SearchReport solve_exact(const Instance& instance, const BoundStrategy& strategy,
                         const SearchOptions& options = {});

// Applies the best strictly beneficial split admissible under the strategy
// until none is left. Never increases the objective.
SolvedTree local_improve_by_splits(const SolvedTree& tree, const BoundStrategy& strategy);

}  // namespace fqst
