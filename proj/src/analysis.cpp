#include "fqst/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fqst/algebraic.hpp"
#include "fqst/errors.hpp"

namespace fqst {

double cost(const SolvedTree& tree) {
  return weighted_tree_cost(tree.topology, tree.all_positions(), tree.flows);
}

double cost_node_weighted(const SolvedTree& tree, double c) {
  return cost(tree) + c * tree.topology.num_steiner();
}

std::vector<Point> cost_gradient(const Topology& topology, std::span<const Point> positions,
                                 std::span<const double> edge_weights) {
  std::vector<Point> grad(topology.num_steiner());
  for (NodeId v = 0; v < topology.num_nodes(); ++v) {
    if (topology.is_sink(v)) continue;
    const NodeId u = topology.parent(v);
    const Point d = 2.0 * edge_weights[v] * (positions[v] - positions[u]);
    if (topology.is_steiner(v)) {
      Point& g = grad[topology.steiner_index(v)];
      g = g + d;
    }
    if (topology.is_steiner(u)) {
      Point& g = grad[topology.steiner_index(u)];
      g = g - d;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------

std::vector<CentroidCheck> check_centroid_certificate(const SolvedTree& tree, double tol) {
  const Topology& t = tree.topology;
  const std::vector<Point> pos = tree.all_positions();
  const ChildLists children(t);
  std::vector<CentroidCheck> out;
  out.reserve(t.num_steiner());
  std::vector<MassPoint> masses;
  for (int j = 0; j < t.num_steiner(); ++j) {
    const NodeId s = t.steiner(j);
    masses.clear();
    for (NodeId c : children.of(s)) masses.push_back({pos[c], tree.flows[c]});
    masses.push_back({pos[t.parent(s)], tree.flows[s]});
    const Point expected = centroid(masses);
    const double deviation = dist(pos[s], expected);
    out.push_back({s, expected, deviation, deviation <= tol});
  }
  return out;
}

bool certificate_holds(std::span<const CentroidCheck> checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CentroidCheck& c) { return c.pass; });
}

std::vector<AngleViolation> check_angles(const SolvedTree& tree, double tol_radians) {
  const Topology& t = tree.topology;
  const std::vector<Point> pos = tree.all_positions();
  const ChildLists children(t);
  const double limit = std::numbers::pi / 2.0 - tol_radians;
  std::vector<AngleViolation> out;
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v)) continue;
    const NodeId o = t.parent(v);
    if (pos[o] == pos[v]) continue;
    for (NodeId c : children.of(v)) {
      if (pos[c] == pos[v]) continue;
      const double a = angle_at(pos[v], pos[c], pos[o]);
      if (a < limit) out.push_back({v, c, o, a});
    }
  }
  return out;
}

std::vector<DegreeViolation> check_degree_window(const SolvedTree& tree, int phi,
                                                 double midpoint_tol) {
  const Topology& t = tree.topology;
  const std::vector<int> deg = t.degrees();
  const std::vector<Point> pos = tree.all_positions();
  const ChildLists children(t);
  std::vector<DegreeViolation> out;
  const int upper = 2 * phi - 3;
  for (int j = 0; j < t.num_steiner(); ++j) {
    const NodeId s = t.steiner(j);
    if (deg[s] < phi) {
      out.push_back({DegreeViolation::Kind::steiner_below_window, s, deg[s],
                     "Steiner degree " + std::to_string(deg[s]) + " < phi"});
    } else if (deg[s] > upper) {
      out.push_back({DegreeViolation::Kind::steiner_above_window, s, deg[s],
                     "Steiner degree " + std::to_string(deg[s]) + " > 2 phi - 3"});
    }
  }
  for (NodeId z = 0; z < t.num_sources(); ++z) {
    if (deg[z] > phi - 1) {
      out.push_back({DegreeViolation::Kind::source_above_limit, z, deg[z],
                     "source degree " + std::to_string(deg[z]) + " > phi - 1"});
    } else if (deg[z] == phi - 1 && !children.of(z).empty()) {
      std::vector<MassPoint> masses{{pos[z], tree.instance.supply(z)}};
      for (NodeId c : children.of(z)) masses.push_back({pos[c], tree.flows[c]});
      const Point mid = (centroid(masses) + pos[t.parent(z)]) / 2.0;
      if (dist(mid, pos[z]) > midpoint_tol) {
        out.push_back({DegreeViolation::Kind::source_off_midpoint, z, deg[z],
                       "source of degree phi - 1 is not at the midpoint of its centre of mass "
                       "and out-neighbour"});
      }
    }
  }
  return out;
}

std::vector<Overlap> check_overlapping_edges(const SolvedTree& tree, double angle_tol,
                                             std::optional<int> phi) {
  const Topology& t = tree.topology;
  const std::vector<Point> pos = tree.all_positions();
  const std::vector<int> deg = t.degrees();
  const ChildLists children(t);
  std::vector<Overlap> out;
  std::vector<NodeId> nbrs;
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    nbrs.assign(children.of(v).begin(), children.of(v).end());
    if (!t.is_sink(v)) nbrs.push_back(t.parent(v));
    const bool caveat = phi.has_value() && t.is_steiner(v) && deg[v] == *phi;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t k = i + 1; k < nbrs.size(); ++k) {
        const NodeId a = nbrs[i];
        const NodeId b = nbrs[k];
        if (pos[a] == pos[v] || pos[b] == pos[v]) {
          // A zero-length edge lies inside any edge at the same node.
          out.push_back({v, a, b, 0.0, true, caveat});
          continue;
        }
        const double angle = angle_at(pos[v], pos[a], pos[b]);
        if (angle > angle_tol) continue;
        const double la = dist(pos[v], pos[a]);
        const double lb = dist(pos[v], pos[b]);
        const double off = std::min(la, lb) * std::sin(angle);
        if (off <= 1e-9 * std::max(1.0, std::max(la, lb))) {
          out.push_back({v, a, b, angle, false, caveat});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<NodeId> in_neighbours(const Topology& topology, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < topology.num_nodes(); ++u) {
    if (topology.parent(u) == v) out.push_back(u);
  }
  return out;
}

Topology split_topology(const Topology& topology, const SplitSpec& spec) {
  if (spec.target < 0 || spec.target >= topology.num_nodes() || topology.is_sink(spec.target)) {
    throw DomainError("split target must be a source or Steiner point");
  }
  const std::vector<NodeId> in = in_neighbours(topology, spec.target);
  std::vector<int> subset = spec.subset;
  std::sort(subset.begin(), subset.end());
  if (subset.empty() || subset.size() > in.size() ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end() || subset.front() < 0 ||
      subset.back() >= static_cast<int>(in.size())) {
    throw DomainError("split subset must name 1..in-degree distinct in-neighbours");
  }
  std::vector<NodeId> parent(topology.parents().begin(), topology.parents().end());
  const NodeId fresh = topology.num_nodes();
  parent.push_back(spec.target);
  for (int idx : subset) parent[in[idx]] = fresh;
  return Topology(topology.num_sources(), topology.num_steiner() + 1, std::move(parent));
}

SolvedTree apply_split(const SolvedTree& tree, const SplitSpec& spec) {
  return solve_topology(tree.instance, split_topology(tree.topology, spec));
}

// ---------------------------------------------------------------------------

std::int64_t optimal_bead_count(double f, double length, double c) {
  if (!(f > 0.0) || !(length >= 0.0) || !(c > 0.0) || !std::isfinite(f) ||
      !std::isfinite(length) || !std::isfinite(c)) {
    throw DomainError("bead count needs positive finite flow, length and node cost");
  }
  const double r = f * length * length / c;
  if (r > 4e18) throw DomainError("bead count overflows");
  // Smallest p with r <= (p+1)(p+2): cost(p+1) >= cost(p) from there on.
  auto upper = [](std::int64_t p) { return static_cast<double>(p + 1) * static_cast<double>(p + 2); };
  std::int64_t p = static_cast<std::int64_t>(std::ceil((std::sqrt(1.0 + 4.0 * r) - 3.0) / 2.0));
  p = std::max<std::int64_t>(p, 0);
  while (p > 0 && r <= upper(p - 1)) --p;
  while (r > upper(p)) ++p;
  return p;
}

double lower_bound_path(const Instance& instance, int k) {
  double sum = 0.0;
  for (int i = 0; i < instance.num_sources(); ++i) {
    sum += instance.supply(i) * sq_dist(instance.sources[i], instance.sink);
  }
  return sum / static_cast<double>(instance.num_sources() + k + 1);
}

SolvedTree expand_beads(const SolvedTree& skeleton, const BeadVector& beads) {
  const Topology& t = skeleton.topology;
  if (beads.size() != static_cast<std::size_t>(t.num_nodes())) {
    throw DomainError("bead vector must have one entry per node");
  }
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  std::vector<Point> steiner = skeleton.steiner_positions;
  const std::vector<Point> pos = skeleton.all_positions();
  NodeId next = t.num_nodes();
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v) || beads[v] <= 0) continue;
    const NodeId u = t.parent(v);
    const int p = beads[v];
    NodeId below = v;
    for (int i = 1; i <= p; ++i) {
      const NodeId b = next++;
      parent[below] = b;
      parent.push_back(kNoParent);
      steiner.push_back(pos[v] + (static_cast<double>(i) / (p + 1)) * (pos[u] - pos[v]));
      below = b;
    }
    parent[below] = u;
  }
  const int added = next - t.num_nodes();
  Topology expanded(t.num_sources(), t.num_steiner() + added, std::move(parent));
  std::vector<double> flows = compute_flows(expanded, skeleton.instance.supply_vector());
  return make_solved_tree(skeleton.instance, expanded, std::move(steiner), std::move(flows));
}

BeadedTree beaded_spanning_tree(const Instance& instance, double c) {
  if (!(c > 0.0)) throw DomainError("node cost c must be positive");
  const int n = instance.num_sources();
  const int count = n + 1;
  auto point = [&](int v) { return v == n ? instance.sink : instance.sources[v]; };

  // Prim from the sink; the Prim parent is the out-neighbour.
  std::vector<NodeId> parent(count, kNoParent);
  std::vector<double> best(count, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(count, false);
  best[n] = 0.0;
  for (int step = 0; step < count; ++step) {
    int u = -1;
    for (int v = 0; v < count; ++v) {
      if (!in_tree[v] && (u < 0 || best[v] < best[u])) u = v;
    }
    in_tree[u] = true;
    for (int v = 0; v < count; ++v) {
      if (in_tree[v]) continue;
      const double d = sq_dist(point(u), point(v));
      if (d < best[v]) {
        best[v] = d;
        parent[v] = u;
      }
    }
  }
  Topology skeleton_topology(n, 0, parent);
  std::vector<double> flows = compute_flows(skeleton_topology, instance.supply_vector());
  BeadVector beads(count, 0);
  for (NodeId v = 0; v < count; ++v) {
    if (v == n) continue;
    beads[v] = static_cast<int>(
        optimal_bead_count(flows[v], dist(point(v), point(parent[v])), c));
  }
  const SolvedTree skeleton =
      make_solved_tree(instance, skeleton_topology, {}, std::move(flows));
  BeadedTree out{expand_beads(skeleton, beads), 0.0};
  out.objective = out.tree.cost + c * out.tree.topology.num_steiner();
  return out;
}

int steiner_count_bound(const Instance& instance, double c) {
  if (!(c > 0.0)) throw DomainError("node cost c must be positive");
  const double upper = beaded_spanning_tree(instance, c).objective;
  const double n1 = instance.num_sources() + 1.0;
  double spread = 0.0;
  for (int i = 0; i < instance.num_sources(); ++i) {
    spread += instance.supply(i) * sq_dist(instance.sources[i], instance.sink);
  }
  // c k <= U - S/(n+1+k)  <=>  c k^2 + (c(n+1) - U) k + (S - U(n+1)) <= 0.
  auto feasible = [&](double k) {
    const double lhs = c * k * (n1 + k);
    const double rhs = upper * (n1 + k) - spread;
    return lhs <= rhs + 1e-12 * std::abs(upper * (n1 + k));
  };
  const double b = c * n1 - upper;
  const double disc = b * b - 4.0 * c * (spread - upper * n1);
  if (disc < 0.0) return 0;
  const double root = (-b + std::sqrt(disc)) / (2.0 * c);
  if (root < 0.0) return 0;
  if (root > 1e9) throw DomainError("Steiner count bound overflows; node cost too small");
  auto k = static_cast<long long>(std::floor(root));
  while (k > 0 && !feasible(static_cast<double>(k))) --k;
  while (feasible(static_cast<double>(k + 1))) ++k;
  return static_cast<int>(std::max(0LL, k));
}

}  // namespace fqst
