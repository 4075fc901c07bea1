#pragma once

// Linear-time construction of the locally minimal tree for a full topology
// with degree-3 Steiner points and unit supplies, by mass-point merging.
//
// Every Steiner point s, once its in-neighbour subtrees are collapsed, sits
// at C(m_q q, F_s v): q is the quasi-source replacing s and its two
// in-neighbours, m_q its formal mass, F_s the flow on the out-edge of s and
// v its out-neighbour. The merge formulas give (q, m_q) from the two
// in-neighbours alone; back-tracking from the sink then places every
// Steiner point in reverse merge order.

#include <cstddef>
#include <vector>

#include "fqst/geometry.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace fqst {

struct QuasiSource {
  Point position;
  // Formal mass w(q); not a flow.
  double mass = 0.0;
  // Additive mass w(s) of the Steiner point this quasi-source absorbed.
  double replaced_steiner_mass = 0.0;
  // Which terminals and Steiner slot were replaced (filled in by the solver).
  NodeId first = kNoParent;
  NodeId second = kNoParent;
  NodeId steiner = kNoParent;
};

enum class MergeKind { source_source, quasi_source, quasi_quasi };

struct MergeStep {
  MergeKind kind;
  NodeId first;
  NodeId second;
  NodeId steiner;
  QuasiSource result;
};

// Two unit sources: midpoint with mass 2.
QuasiSource merge_sources(const MassPoint& z1, const MassPoint& z2);

// Quasi-source q (w0 = q.mass, w1 = q.replaced_steiner_mass) and a unit
// source z: q + (w0+w1)/(w0+w1+w0 w1) (z-q), mass (w0+w1+w0 w1)/(w0+w1).
QuasiSource merge_quasi_source(const QuasiSource& q, const MassPoint& z);

// Two quasi-sources. With e_i = w_i w0i / (w_i + w0i) the effective pull of
// each branch on the merged Steiner point, the result is the e-weighted
// mean of q1 and q2 with mass e_1 + e_2.
QuasiSource merge_quasi_quasi(const QuasiSource& q1, const QuasiSource& q2);

struct GeoSolveResult {
  SolvedTree tree;
  std::vector<MergeStep> steps;
  // Merges plus placements; exactly 2(n-1).
  std::size_t operation_count = 0;
};

// True when the topology is full with degree-3 Steiner points and the
// instance has unit supplies.
bool geo_solver_applies(const Instance& instance, const Topology& topology);

// Throws UnsupportedTopologyError / UnsupportedWeightsError when the
// preconditions above fail, ValidationError on malformed topologies.
GeoSolveResult solve_full_topology(const Instance& instance, const Topology& topology);

}  // namespace fqst
