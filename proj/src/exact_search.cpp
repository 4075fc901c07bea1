#include "fqst/exact_search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "fqst/algebraic.hpp"
#include "fqst/errors.hpp"
#include "fqst/geo_solver.hpp"

namespace fqst {

int effective_guard(const SearchOptions& options) {
  return options.guard_n.value_or(options.full_only ? 8 : 6);
}

BeadedSolve solve_with_beads(const Instance& instance, const Topology& skeleton,
                             const BeadVector& beads) {
  if (beads.size() != static_cast<std::size_t>(skeleton.num_nodes())) {
    throw DomainError("bead vector must have one entry per node");
  }
  std::vector<double> flows = compute_flows(skeleton, instance.supply_vector());
  std::vector<double> weights(flows.size(), 0.0);
  int total = 0;
  for (NodeId v = 0; v < skeleton.num_nodes(); ++v) {
    if (skeleton.is_sink(v)) continue;
    if (beads[v] < 0) throw DomainError("negative bead count");
    weights[v] = flows[v] / (beads[v] + 1);
    total += beads[v];
  }
  std::vector<Point> steiner = solve_weighted(instance, skeleton, weights);
  const std::vector<Point> pos = node_positions(instance, skeleton, steiner);
  BeadedSolve out;
  out.cost = weighted_tree_cost(skeleton, pos, weights);
  out.skeleton = make_solved_tree(instance, skeleton, std::move(steiner), std::move(flows));
  out.beads = beads;
  out.bead_total = total;
  return out;
}

double objective(const SolvedTree& tree, const BoundStrategy& strategy) {
  if (const auto* nw = std::get_if<NodeWeighted>(&strategy)) {
    return cost_node_weighted(tree, nw->c);
  }
  return tree.cost;
}

namespace {

bool within_tie(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Every vector with entries 0..caps[i] summing to exactly `total`, visited in
// lexicographic order.
void for_each_bead_vector(const std::vector<NodeId>& edges, const std::vector<int>& caps,
                          int total, BeadVector& beads,
                          const std::function<void(const BeadVector&)>& visit,
                          std::size_t at = 0) {
  if (at == edges.size()) {
    if (total == 0) visit(beads);
    return;
  }
  int room = 0;
  for (std::size_t i = at + 1; i < caps.size(); ++i) room += caps[i];
  const int lo = std::max(0, total - room);
  const int hi = std::min(caps[at], total);
  for (int p = lo; p <= hi; ++p) {
    beads[edges[at]] = p;
    for_each_bead_vector(edges, caps, total - p, beads, visit, at + 1);
  }
  beads[edges[at]] = 0;
}

struct Candidate {
  double objective = std::numeric_limits<double>::infinity();
  Topology skeleton;
  BeadVector beads;
  SolvedTree tree;  // skeleton embedding
  std::vector<NodeId> canon;
  bool valid = false;
};

class Search {
 public:
  Search(const Instance& instance, const BoundStrategy& strategy, const SearchOptions& options)
      : instance_(instance), strategy_(strategy), options_(options) {}

  SearchReport run();

 private:
  // Objective contribution of Steiner points.
  double node_cost(int steiner) const {
    if (const auto* nw = std::get_if<NodeWeighted>(&strategy_)) return nw->c * steiner;
    return 0.0;
  }
  double prune_bound(int steiner) const {
    return lower_bound_path(instance_, steiner) + node_cost(steiner);
  }
  bool prunable(double bound) const {
    const double inc = incumbent_.load(std::memory_order_relaxed);
    return bound > inc && !within_tie(bound, inc);
  }
  void offer(double obj, const Topology& skeleton, const BeadVector& beads,
             const SolvedTree& tree);
  void evaluate(const Topology& skeleton);
  void evaluate_beaded(const Topology& skeleton);

  const Instance& instance_;
  BoundStrategy strategy_;
  SearchOptions options_;
  int bead_budget_ = 0;  // total Steiner budget including beads
  double cap_length_ = 0.0;
  bool use_beads_ = false;

  std::atomic<double> incumbent_{std::numeric_limits<double>::infinity()};
  std::atomic<std::uint64_t> examined_{0};
  std::atomic<std::uint64_t> pruned_{0};
  std::mutex best_mutex_;
  Candidate best_;
};

void Search::offer(double obj, const Topology& skeleton, const BeadVector& beads,
                   const SolvedTree& tree) {
  std::lock_guard lock(best_mutex_);
  const bool tie = best_.valid && within_tie(obj, best_.objective);
  if (best_.valid && !tie && obj > best_.objective) return;
  std::vector<NodeId> canon;
  if (tie) {
    canon = canonical_form(expand_beads(tree, beads).topology);
    if (best_.canon.empty()) {
      best_.canon = canonical_form(expand_beads(best_.tree, best_.beads).topology);
    }
    if (!(canon < best_.canon)) return;
  }
  best_.objective = obj;
  best_.skeleton = skeleton;
  best_.beads = beads;
  best_.tree = tree;
  best_.canon = std::move(canon);
  best_.valid = true;
  if (obj < incumbent_.load()) incumbent_.store(obj);
}

void Search::evaluate(const Topology& skeleton) {
  if (use_beads_) {
    evaluate_beaded(skeleton);
    return;
  }
  if (prunable(prune_bound(skeleton.num_steiner()))) {
    ++pruned_;
    return;
  }
  ++examined_;
  SolvedTree tree = geo_solver_applies(instance_, skeleton)
                        ? solve_full_topology(instance_, skeleton).tree
                        : solve_topology(instance_, skeleton);
  const double obj = objective(tree, strategy_);
  offer(obj, skeleton, BeadVector(skeleton.num_nodes(), 0), tree);
}

void Search::evaluate_beaded(const Topology& skeleton) {
  const int j = skeleton.num_steiner();
  const std::vector<double> flows = compute_flows(skeleton, instance_.supply_vector());
  std::vector<NodeId> edges;
  std::vector<int> caps;
  const auto* nw = std::get_if<NodeWeighted>(&strategy_);
  for (NodeId v = 0; v < skeleton.num_nodes(); ++v) {
    if (skeleton.is_sink(v)) continue;
    edges.push_back(v);
    int cap = bead_budget_ - j;
    if (nw != nullptr) {
      cap = static_cast<int>(std::min<std::int64_t>(
          cap, optimal_bead_count(flows[v], cap_length_, nw->c)));
    }
    caps.push_back(cap);
  }
  BeadVector beads(skeleton.num_nodes(), 0);
  for (int total = 0; total + j <= bead_budget_; ++total) {
    if (prunable(prune_bound(j + total))) {
      ++pruned_;
      continue;
    }
    for_each_bead_vector(edges, caps, total, beads, [&](const BeadVector& b) {
      ++examined_;
      BeadedSolve solved = solve_with_beads(instance_, skeleton, b);
      const double obj = solved.cost + node_cost(j + total);
      offer(obj, skeleton, b, solved.skeleton);
    });
  }
}

SearchReport Search::run() {
  validate_instance(instance_);
  validate_strategy(strategy_);
  const int n = instance_.num_sources();
  const int guard = effective_guard(options_);
  if (n > guard) {
    throw GuardRefusalError("exact search refused: n = " + std::to_string(n) +
                            " exceeds the guard limit " + std::to_string(guard));
  }

  SearchReport report;
  report.strategy = strategy_;
  int max_branching = std::max(0, n - 1);

  if (const auto* db = std::get_if<DegreeBound>(&strategy_)) {
    if (options_.full_only && db->phi != 3) {
      throw DomainError("full-only search is exact only for phi = 3");
    }
    report.bounds.lower = lower_bound_path(instance_, max_branching);
  } else if (const auto* eb = std::get_if<ExplicitBound>(&strategy_)) {
    bead_budget_ = eb->k;
    use_beads_ = true;
    max_branching = std::min(max_branching, eb->k);
    report.bounds.lower = lower_bound_path(instance_, eb->k);
  } else {
    const double c = std::get<NodeWeighted>(strategy_).c;
    const BeadedTree bst = beaded_spanning_tree(instance_, c);
    bead_budget_ = steiner_count_bound(instance_, c);
    use_beads_ = true;
    max_branching = std::min(max_branching, bead_budget_);
    report.bounds.bst_objective = bst.objective;
    report.bounds.steiner_count_bound = bead_budget_;
    // Weakest lower bound over all admissible counts, including node costs.
    double lower = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= bead_budget_; ++k) lower = std::min(lower, prune_bound(k));
    report.bounds.lower = lower;
    incumbent_.store(bst.objective);
    // Per-edge bead caps use the bounding-box diagonal as the longest edge.
    Point lo = instance_.sink;
    Point hi = instance_.sink;
    for (const Point& z : instance_.sources) {
      lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
      hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
    }
    cap_length_ = dist(lo, hi);
  }
  if (options_.full_only && !std::holds_alternative<DegreeBound>(strategy_)) {
    throw DomainError("full-only search applies to DegreeBound(3)");
  }
  if (bead_budget_ > options_.max_steiner_budget) {
    throw GuardRefusalError("exact search refused: Steiner budget " +
                            std::to_string(bead_budget_) + " exceeds the guard limit " +
                            std::to_string(options_.max_steiner_budget));
  }

  const int min_degree = std::holds_alternative<DegreeBound>(strategy_)
                             ? std::get<DegreeBound>(strategy_).phi
                             : 3;
  Generator<Topology> stream =
      (options_.full_only && n >= 2)
          ? enumerate_full_topologies(n)
          : enumerate_bounded_topologies(n, max_branching, min_degree);

  std::mutex stream_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        std::optional<Topology> next;
        {
          std::lock_guard lock(stream_mutex);
          if (failure) return;
          next = stream.next();
        }
        if (!next) return;
        evaluate(*next);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  unsigned threads = options_.threads != 0 ? options_.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (!best_.valid) throw ConsistencyError("exact search found no admissible topology");

  report.best = expand_beads(best_.tree, best_.beads);
  report.objective = best_.objective;
  report.topologies_examined = examined_.load();
  report.topologies_pruned = pruned_.load();
  return report;
}

}  // namespace

SearchReport solve_exact(const Instance& instance, const BoundStrategy& strategy,
                         const SearchOptions& options) {
  return Search(instance, strategy, options).run();
}

namespace {

bool split_admissible(const Topology& t, const std::vector<int>& deg, NodeId target,
                      int subset_size, const BoundStrategy& strategy) {
  if (const auto* db = std::get_if<DegreeBound>(&strategy)) {
    if (subset_size + 1 < db->phi) return false;
    if (t.is_steiner(target) && deg[target] - subset_size + 1 < db->phi) return false;
    return true;
  }
  if (const auto* eb = std::get_if<ExplicitBound>(&strategy)) {
    return t.num_steiner() + 1 <= eb->k;
  }
  return true;
}

}  // namespace

SolvedTree local_improve_by_splits(const SolvedTree& tree, const BoundStrategy& strategy) {
  validate_strategy(strategy);
  SolvedTree current = tree;
  double current_obj = objective(current, strategy);
  for (;;) {
    const Topology& t = current.topology;
    const std::vector<int> deg = t.degrees();
    std::optional<SolvedTree> best;
    double best_obj = current_obj;
    for (NodeId v = 0; v < t.num_nodes(); ++v) {
      if (t.is_sink(v)) continue;
      const std::vector<NodeId> in = in_neighbours(t, v);
      const int d = static_cast<int>(in.size());
      if (d == 0 || d > 16) continue;
      for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
        const int size = std::popcount(mask);
        if (!split_admissible(t, deg, v, size, strategy)) continue;
        SplitSpec spec{v, {}};
        for (int i = 0; i < d; ++i) {
          if (mask & (1u << i)) spec.subset.push_back(i);
        }
        SolvedTree candidate = apply_split(current, spec);
        const double obj = objective(candidate, strategy);
        if (obj < best_obj && !within_tie(obj, best_obj)) {
          best_obj = obj;
          best = std::move(candidate);
        }
      }
    }
    if (!best) return current;
    current = std::move(*best);
    current_obj = best_obj;
  }
}

}  // namespace fqst
