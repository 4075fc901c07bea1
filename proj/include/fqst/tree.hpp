#pragma once

#include <span>
#include <vector>

#include "fqst/geometry.hpp"
#include "fqst/topology.hpp"

namespace fqst {

// A topology embedded in the plane: Steiner positions, the flow on every
// edge (indexed by child node, sink entry 0) and the cost sum f(e)|e|^2.
struct SolvedTree {
  Instance instance;
  Topology topology;
  std::vector<Point> steiner_positions;
  std::vector<double> flows;
  double cost = 0.0;
  // Some edge has zero length.
  bool degenerate = false;

  Point position(NodeId v) const;
  std::vector<Point> all_positions() const;
};

// Positions of every node id: sources, sink, then the given Steiner points.
std::vector<Point> node_positions(const Instance& instance, const Topology& topology,
                                  std::span<const Point> steiner_positions);

// sum over edges of weight(child) * |child parent|^2.
double weighted_tree_cost(const Topology& topology, std::span<const Point> positions,
                          std::span<const double> edge_weights);

bool has_zero_length_edge(const Topology& topology, std::span<const Point> positions);

// Assembles a SolvedTree from solver output, computing flows, cost and the
// degeneracy flag.
SolvedTree make_solved_tree(const Instance& instance, const Topology& topology,
                            std::vector<Point> steiner_positions, std::vector<double> flows);

}  // namespace fqst
