#pragma once

// Costs, local- and global-optimality certificates, splits and bounds.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqst/geometry.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace fqst {

// sum f(e)|e|^2 recomputed from the tree's fields.
double cost(const SolvedTree& tree);

// L(T) + c|S|.
double cost_node_weighted(const SolvedTree& tree, double c);

// dL/ds for every Steiner slot, for arbitrary edge weights:
// 2 sum_{e incident to s} w_e (s - other end).
std::vector<Point> cost_gradient(const Topology& topology, std::span<const Point> positions,
                                 std::span<const double> edge_weights);

// ---------------------------------------------------------------------------
// Local minimality: a tree is locally minimal iff every Steiner point is the
// centre of mass of its neighbours (in-neighbours weighted by their edge
// flows, the out-neighbour by the out-flow).

struct CentroidCheck {
  NodeId steiner;
  Point expected;
  double deviation;
  bool pass;
};

std::vector<CentroidCheck> check_centroid_certificate(const SolvedTree& tree, double tol);
bool certificate_holds(std::span<const CentroidCheck> checks);

// ---------------------------------------------------------------------------
// Global-optimality screens.

struct AngleViolation {
  NodeId node;
  NodeId in_neighbour;
  NodeId out_neighbour;
  double angle;
};

// Every angle between an in-edge and the out-edge of a node must be at least
// pi/2 - tol (node-weighted and explicitly bounded optima). Zero-length
// edges have no direction and are skipped.
std::vector<AngleViolation> check_angles(const SolvedTree& tree, double tol_radians);

struct DegreeViolation {
  enum class Kind { steiner_below_window, steiner_above_window, source_above_limit, source_off_midpoint };
  Kind kind;
  NodeId node;
  int degree;
  std::string message;
};

// Degree-bounded optima: phi <= deg s <= 2 phi - 3, deg z <= phi - 1, and a
// source of degree exactly phi - 1 (with in-neighbours) lies at the midpoint
// of its out-neighbour and the centre of mass of itself and its in-neighbours.
std::vector<DegreeViolation> check_degree_window(const SolvedTree& tree, int phi,
                                                 double midpoint_tol = 1e-9);

struct Overlap {
  NodeId node;
  NodeId first;
  NodeId second;
  double angle;
  // A zero-length edge is involved.
  bool degenerate;
  // The common node is a degree-phi Steiner point under a degree bound,
  // where an overlap does not rule out optimality.
  bool caveat;
};

// Incident edge pairs with angle <= angle_tol where the shorter edge lies on
// the longer one within 1e-9. Pass phi for degree-bounded trees.
std::vector<Overlap> check_overlapping_edges(const SolvedTree& tree, double angle_tol,
                                             std::optional<int> phi = std::nullopt);

// ---------------------------------------------------------------------------
// Splits.

// Moves the in-neighbours listed in `subset` (indices into the target's
// in-neighbours sorted by id) onto a new Steiner point s' whose out-neighbour
// is the target.
struct SplitSpec {
  NodeId target = kNoParent;
  std::vector<int> subset;
};

std::vector<NodeId> in_neighbours(const Topology& topology, NodeId v);
Topology split_topology(const Topology& topology, const SplitSpec& spec);

// The split tree with every Steiner point re-optimised.
SolvedTree apply_split(const SolvedTree& tree, const SplitSpec& spec);

// ---------------------------------------------------------------------------
// Beads and bounds.

// Minimiser over p >= 0 of f len^2/(p+1) + c p, smallest on ties. Satisfies
// p(p+1) <= f len^2 / c <= (p+1)(p+2).
std::int64_t optimal_bead_count(double f, double length, double c);

// sum w_i |z_i z_BS|^2 / (n + k + 1): no tree with at most k Steiner points
// costs less.
double lower_bound_path(const Instance& instance, int k);

// Beads per edge, indexed by child node like flows (sink entry unused).
using BeadVector = std::vector<int>;

// Replaces every edge carrying p > 0 beads by a chain of p equally spaced
// degree-2 Steiner points. New slots follow the existing ones.
SolvedTree expand_beads(const SolvedTree& skeleton, const BeadVector& beads);

struct BeadedTree {
  SolvedTree tree;
  double objective = 0.0;  // L_c
};

// Minimum spanning tree on sources + sink directed at the sink, each edge
// beaded with optimal_bead_count. Upper-bounds the node-weighted optimum.
BeadedTree beaded_spanning_tree(const Instance& instance, double c);

// Largest k with c k <= L_c(BST) - sum w_i |z_i z_BS|^2 / (n+k+1), clamped at 0.
int steiner_count_bound(const Instance& instance, double c);

}  // namespace fqst
