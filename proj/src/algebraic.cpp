#include "fqst/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fqst/errors.hpp"
#include "fqst/kernels.hpp"

namespace fqst {

SteinerSystem assemble_system(const Instance& instance, const Topology& topology,
                              std::span<const double> edge_weights) {
  const int p = topology.num_steiner();
  SteinerSystem sys;
  sys.size = p;
  sys.matrix.assign(static_cast<std::size_t>(p) * p, 0.0);
  sys.rhs_x.assign(p, 0.0);
  sys.rhs_y.assign(p, 0.0);
  sys.row_node.resize(p);
  for (int j = 0; j < p; ++j) sys.row_node[j] = topology.steiner(j);

  auto terminal_position = [&](NodeId v) {
    return topology.is_sink(v) ? instance.sink : instance.sources[v];
  };
  auto couple = [&](NodeId steiner_node, NodeId other, double w) {
    const int i = topology.steiner_index(steiner_node);
    sys.matrix[static_cast<std::size_t>(i) * p + i] += w;
    if (topology.is_steiner(other)) {
      sys.matrix[static_cast<std::size_t>(i) * p + topology.steiner_index(other)] -= w;
    } else {
      const Point t = terminal_position(other);
      sys.rhs_x[i] += w * t.x;
      sys.rhs_y[i] += w * t.y;
    }
  };
  // Each edge contributes to the rows of its Steiner endpoints.
  for (NodeId v = 0; v < topology.num_nodes(); ++v) {
    if (topology.is_sink(v)) continue;
    const NodeId u = topology.parent(v);
    const double w = edge_weights[v];
    if (topology.is_steiner(v)) couple(v, u, w);
    if (topology.is_steiner(u)) couple(u, v, w);
  }
  return sys;
}

bool is_irreducibly_dominant(const SteinerSystem& system) {
  const int p = system.size;
  std::vector<int> root(p);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  std::vector<bool> strict(p, false);
  for (int i = 0; i < p; ++i) {
    const double diag = std::abs(system.at(i, i));
    double off = 0.0;
    for (int j = 0; j < p; ++j) {
      if (j == i || system.at(i, j) == 0.0) continue;
      off += std::abs(system.at(i, j));
      root[find(i)] = find(j);
    }
    const double slack = 1e-12 * diag;
    if (off > diag + slack) return false;
    strict[i] = off < diag - slack;
  }
  std::vector<bool> block_ok(p, false);
  for (int i = 0; i < p; ++i) {
    if (strict[i]) block_ok[find(i)] = true;
  }
  for (int i = 0; i < p; ++i) {
    if (!block_ok[find(i)]) return false;
  }
  return true;
}

double residual_inf(const SteinerSystem& system, std::span<const Point> positions) {
  const int p = system.size;
  std::vector<double> xs(p), ys(p);
  for (int j = 0; j < p; ++j) {
    xs[j] = positions[j].x;
    ys[j] = positions[j].y;
  }
  double worst = 0.0;
  for (int i = 0; i < p; ++i) {
    const std::span<const double> row(system.matrix.data() + static_cast<std::size_t>(i) * p, p);
    worst = std::max(worst, std::abs(kernels::dot(row, xs) - system.rhs_x[i]));
    worst = std::max(worst, std::abs(kernels::dot(row, ys) - system.rhs_y[i]));
  }
  return worst;
}

std::vector<Point> solve_positions(const SteinerSystem& system) {
  const int p = system.size;
  if (p == 0) return {};
  if (!is_irreducibly_dominant(system)) {
    throw ConsistencyError("assembled Steiner system is not diagonally dominant");
  }
  // Augmented rows [A | b_x | b_y].
  const int width = p + 2;
  std::vector<double> aug(static_cast<std::size_t>(p) * width);
  for (int i = 0; i < p; ++i) {
    std::copy_n(system.matrix.begin() + static_cast<std::ptrdiff_t>(i) * p, p,
                aug.begin() + static_cast<std::ptrdiff_t>(i) * width);
    aug[static_cast<std::size_t>(i) * width + p] = system.rhs_x[i];
    aug[static_cast<std::size_t>(i) * width + p + 1] = system.rhs_y[i];
  }
  auto row = [&](int i, int from) {
    return std::span<double>(aug.data() + static_cast<std::size_t>(i) * width + from,
                             static_cast<std::size_t>(width - from));
  };

  for (int k = 0; k < p; ++k) {
    int pivot = k;
    for (int i = k + 1; i < p; ++i) {
      if (std::abs(aug[static_cast<std::size_t>(i) * width + k]) >
          std::abs(aug[static_cast<std::size_t>(pivot) * width + k])) {
        pivot = i;
      }
    }
    if (pivot != k) {
      std::swap_ranges(row(k, 0).begin(), row(k, 0).end(), row(pivot, 0).begin());
    }
    const double diag = aug[static_cast<std::size_t>(k) * width + k];
    if (diag == 0.0) {
      throw ConsistencyError("zero pivot in a non-singular Steiner system");
    }
    for (int i = k + 1; i < p; ++i) {
      const double factor = aug[static_cast<std::size_t>(i) * width + k] / diag;
      if (factor != 0.0) kernels::axpy(-factor, row(k, k), row(i, k));
    }
  }

  std::vector<double> xs(p), ys(p);
  for (int i = p - 1; i >= 0; --i) {
    const double* r = aug.data() + static_cast<std::size_t>(i) * width;
    const std::size_t tail = static_cast<std::size_t>(p - i - 1);
    const std::span<const double> coeffs(r + i + 1, tail);
    xs[i] = (r[p] - kernels::dot(coeffs, {xs.data() + i + 1, tail})) / r[i];
    ys[i] = (r[p + 1] - kernels::dot(coeffs, {ys.data() + i + 1, tail})) / r[i];
  }

  std::vector<Point> out(p);
  double b_norm = 0.0;
  for (int i = 0; i < p; ++i) {
    out[i] = {xs[i], ys[i]};
    b_norm = std::max({b_norm, std::abs(system.rhs_x[i]), std::abs(system.rhs_y[i])});
  }
  if (residual_inf(system, out) > 1e-9 * (1.0 + b_norm)) {
    throw ConsistencyError("Steiner system residual above tolerance");
  }
  return out;
}

std::vector<Point> solve_weighted(const Instance& instance, const Topology& topology,
                                  std::span<const double> edge_weights) {
  return solve_positions(assemble_system(instance, topology, edge_weights));
}

SolvedTree solve_topology(const Instance& instance, const Topology& topology) {
  if (instance.num_sources() != topology.num_sources()) {
    throw ValidationError("instance and topology have different source counts");
  }
  const std::vector<double> supplies = instance.supply_vector();
  std::vector<double> flows = compute_flows(topology, supplies);
  std::vector<Point> steiner = solve_weighted(instance, topology, flows);
  return make_solved_tree(instance, topology, std::move(steiner), std::move(flows));
}

}  // namespace fqst
