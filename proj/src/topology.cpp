#include "fqst/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fqst/errors.hpp"

namespace fqst {

// ---------------------------------------------------------------------------
// Instance

std::vector<double> Instance::supply_vector() const {
  if (!supplies.empty()) {
    return supplies;
  }
  return std::vector<double>(sources.size(), 1.0);
}

double Instance::total_supply() const {
  if (supplies.empty()) {
    return static_cast<double>(sources.size());
  }
  return std::accumulate(supplies.begin(), supplies.end(), 0.0);
}

bool Instance::has_unit_supplies() const {
  return std::all_of(supplies.begin(), supplies.end(), [](double w) { return w == 1.0; });
}

void validate_instance(const Instance& instance) {
  if (instance.sources.empty()) {
    throw ValidationError("instance needs at least one source");
  }
  if (!is_finite(instance.sink)) {
    throw ValidationError("sink coordinates must be finite");
  }
  if (!instance.supplies.empty() && instance.supplies.size() != instance.sources.size()) {
    throw ValidationError("supplies must be aligned with sources");
  }
  for (int i = 0; i < instance.num_sources(); ++i) {
    const Point z = instance.sources[i];
    if (!is_finite(z)) {
      throw ValidationError("source " + std::to_string(i) + " has non-finite coordinates");
    }
    if (z == instance.sink) {
      throw ValidationError("source " + std::to_string(i) + " coincides with the sink");
    }
    const double w = instance.supply(i);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("source " + std::to_string(i) + " has a nonpositive supply");
    }
  }
}

// ---------------------------------------------------------------------------
// Topology

Topology::Topology(int num_sources, int num_steiner, std::vector<NodeId> parent)
    : num_sources_(num_sources), num_steiner_(num_steiner), parent_(std::move(parent)) {
  if (num_sources < 0 || num_steiner < 0 ||
      parent_.size() != static_cast<std::size_t>(num_nodes())) {
    throw ValidationError("parent array size does not match the node roster");
  }
}

std::vector<int> Topology::degrees() const {
  std::vector<int> deg(num_nodes(), 0);
  for (NodeId v = 0; v < num_nodes(); ++v) {
    const NodeId p = parent_[v];
    if (p >= 0 && p < num_nodes()) {
      ++deg[v];
      ++deg[p];
    }
  }
  return deg;
}

std::vector<std::pair<NodeId, NodeId>> Topology::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (v != sink()) {
      out.emplace_back(v, parent_[v]);
    }
  }
  return out;
}

bool Topology::is_full() const {
  const std::vector<int> deg = degrees();
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (is_terminal(v) ? deg[v] != 1 : deg[v] <= 1) {
      return false;
    }
  }
  return true;
}

ChildLists::ChildLists(const Topology& topology) : offsets_(topology.num_nodes() + 1, 0) {
  const int count = topology.num_nodes();
  for (NodeId v = 0; v < count; ++v) {
    const NodeId p = topology.parent(v);
    if (p >= 0 && p < count) {
      ++offsets_[p + 1];
    }
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  children_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  // Increasing v keeps every list sorted.
  for (NodeId v = 0; v < count; ++v) {
    const NodeId p = topology.parent(v);
    if (p >= 0 && p < count) {
      children_[fill[p]++] = v;
    }
  }
}

namespace {

void check_parent_ranges(const Topology& t, std::vector<std::string>& problems) {
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    const NodeId p = t.parent(v);
    if (t.is_sink(v)) {
      if (p != kNoParent) problems.push_back("sink has an out-edge");
    } else if (p == kNoParent) {
      problems.push_back("node " + std::to_string(v) + " has no out-edge");
    } else if (p < 0 || p >= t.num_nodes()) {
      problems.push_back("node " + std::to_string(v) + " points outside the roster");
    } else if (p == v) {
      problems.push_back("node " + std::to_string(v) + " is its own out-neighbour");
    }
  }
}

}  // namespace

std::vector<NodeId> order_from_sink(const Topology& topology, const ChildLists& children) {
  std::vector<NodeId> order;
  order.reserve(topology.num_nodes());
  order.push_back(topology.sink());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId c : children.of(order[head])) {
      order.push_back(c);
    }
  }
  if (order.size() != static_cast<std::size_t>(topology.num_nodes())) {
    throw ValidationError("topology is not a tree directed toward the sink (cycle or detached part)");
  }
  return order;
}

std::vector<std::string> structural_problems(const Topology& topology) {
  std::vector<std::string> problems;
  if (topology.num_sources() < 1) {
    problems.push_back("topology needs at least one source");
  }
  check_parent_ranges(topology, problems);
  if (!problems.empty()) {
    return problems;
  }
  const ChildLists children(topology);
  try {
    (void)order_from_sink(topology, children);
  } catch (const ValidationError& e) {
    problems.emplace_back(e.what());
  }
  return problems;
}

std::vector<double> compute_flows(const Topology& topology, std::span<const double> supplies) {
  if (supplies.size() != static_cast<std::size_t>(topology.num_sources())) {
    throw ValidationError("supplies are not aligned with the source slots");
  }
  std::vector<std::string> problems;
  check_parent_ranges(topology, problems);
  if (!problems.empty()) {
    throw ValidationError(problems.front());
  }
  const ChildLists children(topology);
  const std::vector<NodeId> order = order_from_sink(topology, children);

  std::vector<double> flow(topology.num_nodes(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (topology.is_sink(v)) {
      continue;
    }
    double out = topology.is_source(v) ? supplies[v] : 0.0;
    for (NodeId c : children.of(v)) {
      out += flow[c];
    }
    if (topology.is_steiner(v) && children.of(v).empty()) {
      throw ValidationError("Steiner slot " + std::to_string(v) + " is a leaf and carries no flow");
    }
    flow[v] = out;
  }
  return flow;
}

std::vector<Violation> validate_topology(const Topology& topology, const BoundStrategy& strategy) {
  std::vector<Violation> out;
  for (std::string& p : structural_problems(topology)) {
    out.push_back({Violation::Kind::structure, kNoParent, std::move(p)});
  }
  if (!out.empty()) {
    return out;
  }
  const std::vector<int> deg = topology.degrees();
  int min_degree = 2;
  if (const auto* db = std::get_if<DegreeBound>(&strategy)) {
    min_degree = std::max(2, db->phi);
  }
  for (int j = 0; j < topology.num_steiner(); ++j) {
    const NodeId s = topology.steiner(j);
    if (deg[s] < 2) {
      out.push_back({Violation::Kind::steiner_degree_below_two, s,
                     "Steiner degree < 2 at node " + std::to_string(s)});
    } else if (deg[s] < min_degree) {
      out.push_back({Violation::Kind::steiner_degree_below_bound, s,
                     "Steiner degree < phi at node " + std::to_string(s)});
    }
  }
  if (const auto* eb = std::get_if<ExplicitBound>(&strategy)) {
    if (topology.num_steiner() > eb->k) {
      out.push_back({Violation::Kind::steiner_count_exceeds_bound, kNoParent,
                     "Steiner count exceeds k (" + std::to_string(topology.num_steiner()) + " > " +
                         std::to_string(eb->k) + ")"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Full topologies: odometer over edge-insertion choices.

namespace {

Topology build_full(int n, const std::vector<int>& digits) {
  std::vector<NodeId> parent(2 * n, kNoParent);
  const NodeId sink = n;
  const NodeId first_steiner = n + 1;
  parent[0] = first_steiner;
  parent[1] = first_steiner;
  parent[first_steiner] = sink;
  std::vector<NodeId> edge_children{0, 1, first_steiner};
  edge_children.reserve(2 * n - 1);
  for (int i = 2; i < n; ++i) {
    const NodeId c = edge_children[digits[i]];
    const NodeId s = first_steiner + (i - 1);
    parent[s] = parent[c];
    parent[c] = s;
    parent[i] = s;
    edge_children.push_back(i);
    edge_children.push_back(s);
  }
  return Topology(n, n - 1, std::move(parent));
}

Generator<Topology> full_topologies(int n) {
  // digits[i] picks the edge that source i subdivides; there are 2i-1 edges
  // once sources 0..i-1 are attached.
  std::vector<int> digits(n, 0);
  while (true) {
    co_yield build_full(n, digits);
    int i = n - 1;
    while (i >= 2) {
      if (++digits[i] < 2 * i - 1) break;
      digits[i] = 0;
      --i;
    }
    if (i < 2) co_return;
  }
}

}  // namespace

Generator<Topology> enumerate_full_topologies(int n) {
  if (n < 2) {
    throw DomainError("full topologies need at least two sources");
  }
  return full_topologies(n);
}

// ---------------------------------------------------------------------------
// Bounded topologies.
//
// A tree directed at the sink decomposes uniquely: the sink's in-neighbour
// subtrees partition the sources (every leaf is a source), and each subtree
// is rooted either at a source, whose own in-neighbour subtrees partition
// the rest of its block, or at a Steiner point, whose in-neighbour subtrees
// partition the whole block into at least min_degree-1 parts. Generating
// that decomposition with a work stack yields each tree exactly once with
// a deterministic Steiner labelling.

namespace {

struct Task {
  NodeId parent;
  std::uint32_t mask;
  bool forest;    // partition mask into subtrees under parent
  int min_trees;  // only for forests
};

struct BuildState {
  int n = 0;
  int max_steiner = 0;
  int min_children = 1;
  std::vector<NodeId> parent;
  int steiner = 0;
};

void collect_partitions(std::uint32_t mask, std::vector<std::uint32_t>& current,
                        std::vector<std::vector<std::uint32_t>>& out) {
  if (mask == 0) {
    out.push_back(current);
    return;
  }
  const std::uint32_t low = mask & (~mask + 1);
  const std::uint32_t rest = mask ^ low;
  // Every subset of rest joins the block of the lowest element.
  std::uint32_t sub = rest;
  while (true) {
    current.push_back(low | sub);
    collect_partitions(rest ^ sub, current, out);
    current.pop_back();
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
}

Generator<Topology> expand(BuildState& st, std::vector<Task> stack) {
  if (stack.empty()) {
    co_yield Topology(st.n, st.steiner, st.parent);
    co_return;
  }
  const Task task = stack.back();
  stack.pop_back();

  if (task.forest) {
    std::vector<std::vector<std::uint32_t>> partitions;
    std::vector<std::uint32_t> scratch;
    collect_partitions(task.mask, scratch, partitions);
    for (const auto& blocks : partitions) {
      if (static_cast<int>(blocks.size()) < task.min_trees) continue;
      std::vector<Task> next = stack;
      for (auto b = blocks.rbegin(); b != blocks.rend(); ++b) {
        next.push_back({task.parent, *b, false, 0});
      }
      for (const Topology& t : expand(st, std::move(next))) co_yield t;
    }
    co_return;
  }

  // Subtree rooted at a source of the block.
  for (std::uint32_t bits = task.mask; bits != 0; bits &= bits - 1) {
    const NodeId z = std::countr_zero(bits);
    const std::uint32_t rest = task.mask & ~(std::uint32_t{1} << z);
    st.parent[z] = task.parent;
    std::vector<Task> next = stack;
    if (rest != 0) next.push_back({z, rest, true, 1});
    for (const Topology& t : expand(st, std::move(next))) co_yield t;
  }
  // Subtree rooted at a fresh Steiner point.
  if (st.steiner < st.max_steiner && std::popcount(task.mask) >= st.min_children) {
    const NodeId s = st.n + 1 + st.steiner;
    st.parent.push_back(task.parent);
    ++st.steiner;
    std::vector<Task> next = stack;
    next.push_back({s, task.mask, true, st.min_children});
    for (const Topology& t : expand(st, std::move(next))) co_yield t;
    --st.steiner;
    st.parent.pop_back();
  }
}

Generator<Topology> bounded_topologies(int n, int max_steiner, int min_steiner_degree) {
  BuildState st;
  st.n = n;
  st.max_steiner = max_steiner;
  st.min_children = min_steiner_degree - 1;
  st.parent.assign(n + 1, kNoParent);
  const std::uint32_t all = (n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
  for (const Topology& t : expand(st, {{n, all, true, 1}})) co_yield t;
}

}  // namespace

Generator<Topology> enumerate_bounded_topologies(int n, int max_steiner, int min_steiner_degree) {
  if (n < 1 || n > 31) {
    throw DomainError("bounded enumeration supports 1 <= n <= 31");
  }
  if (max_steiner < 0) {
    throw DomainError("Steiner budget must be nonnegative");
  }
  if (min_steiner_degree < 2) {
    throw DomainError("Steiner points need degree >= 2");
  }
  return bounded_topologies(n, max_steiner, min_steiner_degree);
}

// ---------------------------------------------------------------------------
// Canonical form: branch-and-bound over Steiner labellings. Labels are handed
// out in order of first use, which is forced for lexicographic minimality;
// the only real choice is which unlabelled Steiner node fills a slot nobody
// has referenced yet.

namespace {

struct CanonSearch {
  const Topology& t;
  std::vector<NodeId> label;    // Steiner node -> slot (or kNoParent)
  std::vector<NodeId> at_slot;  // slot -> node
  std::vector<NodeId> current;
  std::vector<NodeId> best;
  NodeId next_label = 0;

  explicit CanonSearch(const Topology& topo)
      : t(topo),
        label(topo.num_nodes(), kNoParent),
        at_slot(topo.num_nodes(), kNoParent),
        next_label(topo.num_sources() + 1) {
    for (NodeId v = 0; v <= t.num_sources(); ++v) {
      label[v] = v;
      at_slot[v] = v;
    }
  }

  // Value written at the current position for node v, assigning a label to
  // an unlabelled Steiner parent if needed. Returns the parent that got a
  // fresh label (or kNoParent) so the caller can undo it.
  NodeId emit(NodeId v, NodeId& value) {
    const NodeId p = t.parent(v);
    if (p == kNoParent) {
      value = kNoParent;
      return kNoParent;
    }
    if (label[p] != kNoParent) {
      value = label[p];
      return kNoParent;
    }
    label[p] = next_label;
    at_slot[next_label] = p;
    value = next_label++;
    return p;
  }

  void undo(NodeId fresh) {
    if (fresh != kNoParent) {
      --next_label;
      at_slot[label[fresh]] = kNoParent;
      label[fresh] = kNoParent;
    }
  }

  // Compares current (length pos) with the same-length prefix of best.
  int compare_prefix() const {
    if (best.empty()) return -1;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i] != best[i]) return current[i] < best[i] ? -1 : 1;
    }
    return 0;
  }

  void run(std::size_t pos) {
    const std::size_t total = static_cast<std::size_t>(t.num_nodes());
    if (pos == total) {
      if (compare_prefix() < 0) best = current;
      return;
    }
    std::vector<NodeId> candidates;
    const bool fresh_slot = at_slot[pos] == kNoParent;
    if (!fresh_slot) {
      candidates.push_back(at_slot[pos]);
    } else {
      for (NodeId v = t.num_sources() + 1; v < t.num_nodes(); ++v) {
        if (label[v] == kNoParent) candidates.push_back(v);
      }
    }
    for (NodeId v : candidates) {
      if (fresh_slot) {
        label[v] = next_label;
        at_slot[next_label] = v;
        ++next_label;
      }
      NodeId value = kNoParent;
      const NodeId fresh_parent = emit(v, value);
      current.push_back(value);
      if (compare_prefix() <= 0) run(pos + 1);
      current.pop_back();
      undo(fresh_parent);
      if (fresh_slot) {
        --next_label;
        at_slot[label[v]] = kNoParent;
        label[v] = kNoParent;
      }
    }
  }
};

}  // namespace

std::vector<NodeId> canonical_form(const Topology& topology) {
  CanonSearch search(topology);
  search.current.reserve(topology.num_nodes());
  search.run(0);
  return search.best;
}

}  // namespace fqst
