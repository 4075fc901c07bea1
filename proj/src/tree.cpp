#include "fqst/tree.hpp"

#include "fqst/errors.hpp"
#include "fqst/kernels.hpp"

namespace fqst {

Point SolvedTree::position(NodeId v) const {
  if (topology.is_source(v)) return instance.sources[v];
  if (topology.is_sink(v)) return instance.sink;
  return steiner_positions[topology.steiner_index(v)];
}

std::vector<Point> SolvedTree::all_positions() const {
  return node_positions(instance, topology, steiner_positions);
}

std::vector<Point> node_positions(const Instance& instance, const Topology& topology,
                                  std::span<const Point> steiner_positions) {
  if (instance.num_sources() != topology.num_sources() ||
      static_cast<int>(steiner_positions.size()) != topology.num_steiner()) {
    throw ValidationError("instance, topology and Steiner positions disagree in size");
  }
  std::vector<Point> pos;
  pos.reserve(topology.num_nodes());
  pos.insert(pos.end(), instance.sources.begin(), instance.sources.end());
  pos.push_back(instance.sink);
  pos.insert(pos.end(), steiner_positions.begin(), steiner_positions.end());
  return pos;
}

double weighted_tree_cost(const Topology& topology, std::span<const Point> positions,
                          std::span<const double> edge_weights) {
  // Structure-of-arrays copy so the kernel can stream it.
  const std::size_t m = static_cast<std::size_t>(topology.num_edges());
  std::vector<double> buf(5 * m);
  double* ax = buf.data();
  double* ay = ax + m;
  double* bx = ay + m;
  double* by = bx + m;
  double* w = by + m;
  std::size_t e = 0;
  for (NodeId v = 0; v < topology.num_nodes(); ++v) {
    if (topology.is_sink(v)) continue;
    const Point a = positions[v];
    const Point b = positions[topology.parent(v)];
    ax[e] = a.x;
    ay[e] = a.y;
    bx[e] = b.x;
    by[e] = b.y;
    w[e] = edge_weights[v];
    ++e;
  }
  return kernels::weighted_sq_dist_sum({ax, m}, {ay, m}, {bx, m}, {by, m}, {w, m});
}

bool has_zero_length_edge(const Topology& topology, std::span<const Point> positions) {
  for (NodeId v = 0; v < topology.num_nodes(); ++v) {
    if (!topology.is_sink(v) && positions[v] == positions[topology.parent(v)]) {
      return true;
    }
  }
  return false;
}

SolvedTree make_solved_tree(const Instance& instance, const Topology& topology,
                            std::vector<Point> steiner_positions, std::vector<double> flows) {
  SolvedTree tree{instance, topology, std::move(steiner_positions), std::move(flows), 0.0, false};
  const std::vector<Point> pos = tree.all_positions();
  tree.cost = weighted_tree_cost(topology, pos, tree.flows);
  tree.degenerate = has_zero_length_edge(topology, pos);
  return tree;
}

}  // namespace fqst
