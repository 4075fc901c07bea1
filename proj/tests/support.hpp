#pragma once

// Test-side oracles written independently of the library: random instances,
// Pruefer-sequence topology enumeration with its own canonical form, a
// Jacobi solver, plain cost sums and gradient descent on Steiner positions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "fqst/algebraic.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace oracle {

using fqst::Instance;
using fqst::NodeId;
using fqst::Point;
using fqst::Topology;

inline Instance random_instance(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 10.0,
                                bool random_supplies = false) {
  std::uniform_real_distribution<double> coord(lo, hi);
  std::uniform_real_distribution<double> supply(0.5, 3.0);
  Instance inst;
  for (int i = 0; i < n; ++i) inst.sources.push_back({coord(rng), coord(rng)});
  inst.sink = {coord(rng), coord(rng)};
  if (random_supplies) {
    for (int i = 0; i < n; ++i) inst.supplies.push_back(supply(rng));
  }
  return inst;
}

// Random full topology by inserting each new source into a uniformly chosen
// edge of an undirected tree, then orienting toward the sink.
inline Topology random_full_topology(std::mt19937_64& rng, int n) {
  // nodes: sources 0..n-1, sink n, Steiner n+1..2n-1
  std::vector<std::pair<int, int>> edges{{0, n}};
  int next_steiner = n + 1;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t e = pick(rng);
    const auto [a, b] = edges[e];
    const int s = next_steiner++;
    edges[e] = {a, s};
    edges.push_back({s, b});
    edges.push_back({i, s});
  }
  const int nodes = 2 * n;
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<NodeId> parent(nodes, -2);
  parent[n] = fqst::kNoParent;
  std::vector<int> queue{n};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int u : adj[queue[h]]) {
      if (parent[u] == -2) {
        parent[u] = queue[h];
        queue.push_back(u);
      }
    }
  }
  return Topology(n, n - 1, parent);
}

// Caterpillar: a spine of n-1 Steiner points, z0 and z1 on the far end,
// every other source hanging off the spine.
inline Topology caterpillar(int n) {
  std::vector<NodeId> parent(2 * n);
  parent[n] = fqst::kNoParent;
  for (int j = 0; j < n - 1; ++j) parent[n + 1 + j] = j == 0 ? n : n + j;
  parent[0] = parent[1] = n + 1 + (n - 2);
  for (int i = 2; i < n; ++i) parent[i] = n + 1 + (n - 1 - i);
  return Topology(n, n - 1, parent);
}

// Merges Steiner slot `child` into its out-neighbour (also a Steiner slot)
// and renumbers the remaining slots.
inline Topology contract(const Topology& t, NodeId child) {
  const NodeId into = t.parent(child);
  std::vector<NodeId> parent;
  auto renumber = [&](NodeId v) { return v > child ? v - 1 : v; };
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (v == child) continue;
    NodeId p = t.parent(v);
    if (p == child) p = into;
    parent.push_back(p < 0 ? p : renumber(p));
  }
  return Topology(t.num_sources(), t.num_steiner() - 1, parent);
}

// Decodes a Pruefer sequence into an undirected tree on `nodes` vertices and
// orients it toward `root`.
inline std::vector<NodeId> pruefer_parent(const std::vector<int>& seq, int nodes, int root) {
  std::vector<int> degree(nodes, 1);
  for (int v : seq) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  for (int v : seq) {
    for (int leaf = 0; leaf < nodes; ++leaf) {
      if (degree[leaf] == 1) {
        edges.push_back({leaf, v});
        --degree[leaf];
        --degree[v];
        break;
      }
    }
  }
  std::vector<int> last;
  for (int v = 0; v < nodes; ++v) {
    if (degree[v] == 1) last.push_back(v);
  }
  edges.push_back({last[0], last[1]});
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<NodeId> parent(nodes, -2);
  parent[root] = fqst::kNoParent;
  std::vector<int> queue{root};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int u : adj[queue[h]]) {
      if (parent[u] == -2) {
        parent[u] = queue[h];
        queue.push_back(u);
      }
    }
  }
  return parent;
}

// Minimum over all permutations of Steiner labels of the relabelled parent
// array (plain brute force).
inline std::vector<NodeId> brute_canonical(int n, int k, const std::vector<NodeId>& parent) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<NodeId> best;
  do {
    auto relabel = [&](NodeId v) { return v > n ? n + 1 + perm[v - n - 1] : v; };
    std::vector<NodeId> out(parent.size());
    for (std::size_t v = 0; v < parent.size(); ++v) {
      const NodeId p = parent[v] < 0 ? parent[v] : relabel(parent[v]);
      out[relabel(static_cast<NodeId>(v))] = p;
    }
    if (best.empty() || out < best) best = out;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All distinct (up to Steiner relabelling) topologies on n sources, the sink
// and exactly k Steiner points with Steiner degree >= min_degree. With
// `full`, terminals must be leaves and Steiner points have degree exactly 3.
inline std::set<std::vector<NodeId>> brute_topologies(int n, int k, int min_degree,
                                                      bool full = false) {
  const int nodes = n + 1 + k;
  std::set<std::vector<NodeId>> out;
  if (nodes == 1) return out;
  if (nodes == 2) {
    out.insert({1, fqst::kNoParent});
    return out;
  }
  std::vector<int> seq(nodes - 2, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (at == seq.size()) {
      std::vector<int> degree(nodes, 1);
      for (int v : seq) ++degree[v];
      for (int v = 0; v < nodes; ++v) {
        const bool steiner = v > n;
        if (steiner && degree[v] < min_degree) return;
        if (full && !steiner && degree[v] != 1) return;
        if (full && steiner && degree[v] != 3) return;
      }
      out.insert(brute_canonical(n, k, pruefer_parent(seq, nodes, n)));
      return;
    }
    for (int v = 0; v < nodes; ++v) {
      if (full && v <= n) continue;
      seq[at] = v;
      rec(at + 1);
    }
  };
  rec(0);
  return out;
}

// Straight sum of f |e|^2 without the library's kernels.
inline double plain_cost(const Topology& t, const std::vector<Point>& pos,
                         const std::vector<double>& weights) {
  double sum = 0.0;
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v)) continue;
    const double dx = pos[v].x - pos[t.parent(v)].x;
    const double dy = pos[v].y - pos[t.parent(v)].y;
    sum += weights[v] * (dx * dx + dy * dy);
  }
  return sum;
}

// Flows by walking every source's path to the sink.
inline std::vector<double> path_flows(const Topology& t, const Instance& inst) {
  std::vector<double> flows(t.num_nodes(), 0.0);
  for (int i = 0; i < t.num_sources(); ++i) {
    for (NodeId v = i; !t.is_sink(v); v = t.parent(v)) flows[v] += inst.supply(i);
  }
  return flows;
}

inline std::vector<Point> jacobi(const fqst::SteinerSystem& sys, double tol = 1e-12,
                                 int max_iter = 2000000) {
  const int p = sys.size;
  std::vector<Point> x(p), next(p);
  for (int it = 0; it < max_iter; ++it) {
    double change = 0.0;
    for (int i = 0; i < p; ++i) {
      double sx = sys.rhs_x[i];
      double sy = sys.rhs_y[i];
      for (int j = 0; j < p; ++j) {
        if (j == i) continue;
        sx -= sys.at(i, j) * x[j].x;
        sy -= sys.at(i, j) * x[j].y;
      }
      next[i] = {sx / sys.at(i, i), sy / sys.at(i, i)};
      change = std::max({change, std::abs(next[i].x - x[i].x), std::abs(next[i].y - x[i].y)});
    }
    x.swap(next);
    if (change < tol) break;
  }
  return x;
}

// Gradient descent on L over Steiner positions from a random start; L is a
// convex quadratic, so the step 1/(2 max_i sum of incident weights) converges.
inline double descend(const Instance& inst, const Topology& t, std::mt19937_64& rng,
                      int iterations = 20000) {
  const std::vector<double> flows = path_flows(t, inst);
  std::vector<Point> pos(t.num_nodes());
  for (int i = 0; i < t.num_sources(); ++i) pos[i] = inst.sources[i];
  pos[t.sink()] = inst.sink;
  std::uniform_real_distribution<double> coord(-5.0, 15.0);
  for (int j = 0; j < t.num_steiner(); ++j) pos[t.steiner(j)] = {coord(rng), coord(rng)};
  std::vector<double> load(t.num_nodes(), 0.0);
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v)) continue;
    load[v] += flows[v];
    load[t.parent(v)] += flows[v];
  }
  double lmax = 1.0;
  for (int j = 0; j < t.num_steiner(); ++j) lmax = std::max(lmax, load[t.steiner(j)]);
  const double step = 1.0 / (4.0 * lmax);
  std::vector<Point> grad(t.num_nodes());
  for (int it = 0; it < iterations; ++it) {
    std::fill(grad.begin(), grad.end(), Point{});
    for (NodeId v = 0; v < t.num_nodes(); ++v) {
      if (t.is_sink(v)) continue;
      const Point d = 2.0 * flows[v] * (pos[v] - pos[t.parent(v)]);
      grad[v] = grad[v] + d;
      grad[t.parent(v)] = grad[t.parent(v)] - d;
    }
    double gnorm = 0.0;
    for (int j = 0; j < t.num_steiner(); ++j) {
      const NodeId s = t.steiner(j);
      pos[s] = pos[s] - step * grad[s];
      gnorm = std::max({gnorm, std::abs(grad[s].x), std::abs(grad[s].y)});
    }
    if (gnorm < 1e-11) break;
  }
  return plain_cost(t, pos, flows);
}

inline double multistart_descent(const Instance& inst, const Topology& t, std::mt19937_64& rng,
                                 int starts = 3) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) best = std::min(best, descend(inst, t, rng));
  return best;
}

// Bead count by enumeration: smallest minimiser of f l^2/(p+1) + c p.
inline long long enumerate_beads(double f, double len, double c, long long cap) {
  long long best_p = 0;
  double best = f * len * len;
  for (long long p = 1; p <= cap; ++p) {
    const double v = f * len * len / static_cast<double>(p + 1) + c * static_cast<double>(p);
    if (v < best) {
      best = v;
      best_p = p;
    }
  }
  return best_p;
}

}  // namespace oracle
