#pragma once

// Locally minimal trees for arbitrary topologies via the stationarity
// conditions. For Steiner slot i with incident edge weights w_e,
//
//   (sum_e w_e) s_i - sum_{Steiner nbrs j} w_ij s_j = sum_{terminal nbrs t} w_it t
//
// which with plain flows is 2 F_i s_i - sum f_i^j x_i^j - F_i x'_i = 0.
// A is the terminal-grounded weighted Laplacian of the tree: symmetric,
// weakly diagonally dominant in every row and strictly dominant in every row
// adjacent to a terminal, hence irreducibly dominant and non-singular.

#include <span>
#include <vector>

#include "fqst/geometry.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace fqst {

struct SteinerSystem {
  int size = 0;
  std::vector<double> matrix;  // row-major size x size
  std::vector<double> rhs_x;
  std::vector<double> rhs_y;
  std::vector<NodeId> row_node;  // row -> Steiner node id

  double at(int i, int j) const { return matrix[static_cast<std::size_t>(i) * size + j]; }
};

// edge_weights is indexed by child node (flows from compute_flows, or
// bead-reduced weights f/(p+1)). Zero Steiner slots give an empty system.
SteinerSystem assemble_system(const Instance& instance, const Topology& topology,
                              std::span<const double> edge_weights);

// Weak dominance in every row and a strictly dominant row in every
// connected block of the Steiner graph.
bool is_irreducibly_dominant(const SteinerSystem& system);

// Gaussian elimination with partial pivoting, both coordinates at once.
// Throws ConsistencyError if the system is not irreducibly dominant or the
// residual check fails.
std::vector<Point> solve_positions(const SteinerSystem& system);

// Max-norm residual of A s - b over both coordinates.
double residual_inf(const SteinerSystem& system, std::span<const Point> positions);

// Flows, assembly, solve. Any positive supplies and Steiner degrees >= 2.
SolvedTree solve_topology(const Instance& instance, const Topology& topology);

// Positions minimising sum w_e |e|^2 for the given edge weights.
std::vector<Point> solve_weighted(const Instance& instance, const Topology& topology,
                                  std::span<const double> edge_weights);

}  // namespace fqst
