#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqst/generator.hpp"
#include "fqst/geometry.hpp"
#include "fqst/strategy.hpp"

namespace fqst {

using NodeId = std::int32_t;
inline constexpr NodeId kNoParent = -1;

// n sources with supplies and one sink. An empty supplies vector means
// every source supplies one unit of flow.
struct Instance {
  std::vector<Point> sources;
  std::vector<double> supplies;
  Point sink;

  int num_sources() const { return static_cast<int>(sources.size()); }
  double supply(int i) const { return supplies.empty() ? 1.0 : supplies[i]; }
  std::vector<double> supply_vector() const;
  double total_supply() const;
  bool has_unit_supplies() const;
};

// Throws ValidationError unless n >= 1, all coordinates are finite, supplies
// are positive and aligned, and the sink is distinct from every source.
void validate_instance(const Instance& instance);

// Directed tree on n sources, one sink and k Steiner slots. Node ids:
//   [0, n)          sources
//   n               sink
//   [n+1, n+1+k)    Steiner slots
// parent[v] is the out-neighbour of v; parent[sink] == kNoParent. Edges are
// identified by their child node, since every non-sink node has exactly one
// out-edge. The constructor only checks sizes; use validate_topology or
// structural_problems for tree-ness.
class Topology {
 public:
  Topology() = default;
  Topology(int num_sources, int num_steiner, std::vector<NodeId> parent);

  int num_sources() const { return num_sources_; }
  int num_steiner() const { return num_steiner_; }
  int num_nodes() const { return num_sources_ + 1 + num_steiner_; }
  int num_edges() const { return num_nodes() - 1; }

  NodeId sink() const { return num_sources_; }
  NodeId steiner(int j) const { return num_sources_ + 1 + j; }
  int steiner_index(NodeId v) const { return v - num_sources_ - 1; }

  bool is_source(NodeId v) const { return v >= 0 && v < num_sources_; }
  bool is_sink(NodeId v) const { return v == num_sources_; }
  bool is_steiner(NodeId v) const { return v > num_sources_ && v < num_nodes(); }
  bool is_terminal(NodeId v) const { return v >= 0 && v <= num_sources_; }

  NodeId parent(NodeId v) const { return parent_[v]; }
  std::span<const NodeId> parents() const { return parent_; }

  std::vector<int> degrees() const;
  // (child, parent) for every edge, ordered by child id.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Every terminal has degree 1 and every Steiner point degree > 1.
  bool is_full() const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  int num_sources_ = 0;
  int num_steiner_ = 0;
  std::vector<NodeId> parent_;
};

// In-neighbour lists in compressed form, each list sorted by node id.
class ChildLists {
 public:
  explicit ChildLists(const Topology& topology);
  std::span<const NodeId> of(NodeId v) const {
    return {children_.data() + offsets_[v], children_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<int> offsets_;
  std::vector<NodeId> children_;
};

// Nodes ordered so that every node appears after its out-neighbour (sink
// first). Throws ValidationError when the parent array is not a tree
// directed toward the sink.
std::vector<NodeId> order_from_sink(const Topology& topology, const ChildLists& children);

// Tree-ness problems of the parent array (empty when it is a valid tree).
std::vector<std::string> structural_problems(const Topology& topology);

// Flow on the out-edge of every node (entry for the sink is 0): sources emit
// their supply, Steiner points conserve flow, so the sink receives the total
// supply. Throws ValidationError on malformed topologies and on Steiner
// leaves, whose out-edge would carry no flow.
std::vector<double> compute_flows(const Topology& topology, std::span<const double> supplies);

struct Violation {
  enum class Kind {
    structure,
    steiner_degree_below_bound,
    steiner_count_exceeds_bound,
    steiner_degree_below_two,
  };
  Kind kind;
  NodeId node = kNoParent;
  std::string message;
};

// Structural checks plus the strategy's constraint: deg s >= phi
// (DegreeBound), |S| <= k (ExplicitBound) and deg s >= 2 (all strategies).
std::vector<Violation> validate_topology(const Topology& topology, const BoundStrategy& strategy);

// Every full topology on n sources plus the sink: n-1 degree-3 Steiner
// points, (2n-3)!! topologies in total. Built by inserting source i into
// each edge of every topology on the first i sources. Throws DomainError
// for n < 2.
Generator<Topology> enumerate_full_topologies(int n);

// Every topology on n sources, the sink and j <= max_steiner Steiner slots
// with each Steiner degree >= min_steiner_degree; terminals may have any
// degree. Each topology appears once up to Steiner relabelling.
// Throws DomainError for n < 1, max_steiner < 0 or min_steiner_degree < 2.
Generator<Topology> enumerate_bounded_topologies(int n, int max_steiner, int min_steiner_degree);

// Lexicographically smallest parent array over all relabellings of the
// Steiner slots (sources and sink keep their ids).
std::vector<NodeId> canonical_form(const Topology& topology);

}  // namespace fqst
