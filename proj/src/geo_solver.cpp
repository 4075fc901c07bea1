#include "fqst/geo_solver.hpp"

#include <cmath>

#include "fqst/errors.hpp"

namespace fqst {

namespace {

void require_unit(const MassPoint& z) {
  if (z.mass != 1.0) {
    throw UnsupportedWeightsError(
        "geometric merging needs unit supplies; use the algebraic solver instead");
  }
}

void require_finite(const QuasiSource& q) {
  if (!is_finite(q.position) || !std::isfinite(q.mass) || !(q.mass > 0.0) ||
      !(q.replaced_steiner_mass > 0.0)) {
    throw DomainError("quasi-source with non-finite or nonpositive data");
  }
}

}  // namespace

QuasiSource merge_sources(const MassPoint& z1, const MassPoint& z2) {
  require_unit(z1);
  require_unit(z2);
  QuasiSource q;
  q.position = (z1.position + z2.position) / 2.0;
  q.mass = 2.0;
  q.replaced_steiner_mass = 2.0;
  return q;
}

QuasiSource merge_quasi_source(const QuasiSource& q, const MassPoint& z) {
  require_unit(z);
  require_finite(q);
  const double w0 = q.mass;
  const double w1 = q.replaced_steiner_mass;
  const double sum = w0 + w1;
  const double grown = sum + w0 * w1;
  QuasiSource out;
  out.position = q.position + (sum / grown) * (z.position - q.position);
  out.mass = grown / sum;
  out.replaced_steiner_mass = w1 + 1.0;
  return out;
}

QuasiSource merge_quasi_quasi(const QuasiSource& q1, const QuasiSource& q2) {
  require_finite(q1);
  require_finite(q2);
  const double w01 = q1.mass;
  const double w1 = q1.replaced_steiner_mass;
  const double w02 = q2.mass;
  const double w2 = q2.replaced_steiner_mass;
  const double denom = w1 * w2 * (w01 + w02) + w01 * w02 * (w1 + w2);
  const double coeff = w02 * w2 * (w1 + w01) / denom;
  QuasiSource out;
  out.position = q1.position + coeff * (q2.position - q1.position);
  out.mass = denom / ((w1 + w01) * (w2 + w02));
  out.replaced_steiner_mass = w1 + w2;
  return out;
}

bool geo_solver_applies(const Instance& instance, const Topology& topology) {
  if (!instance.has_unit_supplies() || instance.num_sources() != topology.num_sources()) {
    return false;
  }
  if (!structural_problems(topology).empty() || !topology.is_full()) return false;
  const std::vector<int> deg = topology.degrees();
  for (int j = 0; j < topology.num_steiner(); ++j) {
    if (deg[topology.steiner(j)] != 3) return false;
  }
  return true;
}

GeoSolveResult solve_full_topology(const Instance& instance, const Topology& topology) {
  if (instance.num_sources() != topology.num_sources()) {
    throw ValidationError("instance and topology have different source counts");
  }
  if (!instance.has_unit_supplies()) {
    throw UnsupportedWeightsError("geometric solver requires unit supplies");
  }
  const ChildLists children(topology);
  // Step 1: additive masses. Also rejects cycles and detached parts.
  std::vector<double> flows = compute_flows(topology, instance.supply_vector());

  for (NodeId v = 0; v <= topology.sink(); ++v) {
    if (children.of(v).size() != (topology.is_sink(v) ? 1u : 0u)) {
      throw UnsupportedTopologyError("topology is not full: terminal " + std::to_string(v) +
                                     " has degree != 1");
    }
  }
  for (int j = 0; j < topology.num_steiner(); ++j) {
    if (children.of(topology.steiner(j)).size() != 2) {
      throw UnsupportedTopologyError("Steiner slot " + std::to_string(topology.steiner(j)) +
                                     " does not have degree 3");
    }
  }

  GeoSolveResult result;
  result.steps.reserve(topology.num_steiner());
  std::vector<QuasiSource> quasi(topology.num_steiner());

  // Step 2: merge in DFS post-order from the sink, so both in-neighbours of a
  // Steiner point are resolved before it is merged.
  std::vector<std::pair<NodeId, bool>> stack;
  stack.emplace_back(children.of(topology.sink()).front(), false);
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!topology.is_steiner(v)) continue;
    if (!expanded) {
      stack.emplace_back(v, true);
      for (NodeId c : children.of(v)) stack.emplace_back(c, false);
      continue;
    }
    const NodeId a = children.of(v)[0];
    const NodeId b = children.of(v)[1];
    MergeStep step{};
    if (topology.is_source(a) && topology.is_source(b)) {
      step.kind = MergeKind::source_source;
      step.result = merge_sources({instance.sources[a], 1.0}, {instance.sources[b], 1.0});
    } else if (topology.is_source(a) || topology.is_source(b)) {
      const NodeId z = topology.is_source(a) ? a : b;
      const NodeId s = z == a ? b : a;
      step.kind = MergeKind::quasi_source;
      step.result = merge_quasi_source(quasi[topology.steiner_index(s)], {instance.sources[z], 1.0});
    } else {
      step.kind = MergeKind::quasi_quasi;
      step.result = merge_quasi_quasi(quasi[topology.steiner_index(a)],
                                      quasi[topology.steiner_index(b)]);
    }
    step.first = a;
    step.second = b;
    step.steiner = v;
    step.result.first = a;
    step.result.second = b;
    step.result.steiner = v;
    quasi[topology.steiner_index(v)] = step.result;
    result.steps.push_back(step);
    ++result.operation_count;
  }

  // Step 3: back-track. The out-neighbour of each Steiner point is placed
  // before it and pulls with the flow on the connecting edge (n at the sink).
  std::vector<Point> steiner(topology.num_steiner());
  for (auto it = result.steps.rbegin(); it != result.steps.rend(); ++it) {
    const NodeId s = it->steiner;
    const NodeId out = topology.parent(s);
    const Point anchor =
        topology.is_sink(out) ? instance.sink : steiner[topology.steiner_index(out)];
    steiner[topology.steiner_index(s)] =
        centroid(it->result.mass, it->result.position, flows[s], anchor);
    ++result.operation_count;
  }

  // Step 4: cost.
  result.tree = make_solved_tree(instance, topology, std::move(steiner), std::move(flows));
  return result;
}

}  // namespace fqst
