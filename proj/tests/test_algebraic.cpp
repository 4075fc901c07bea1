#include <doctest.h>

#include <numeric>
#include <random>

#include "fqst/algebraic.hpp"
#include "fqst/analysis.hpp"
#include "fqst/errors.hpp"
#include "support.hpp"

using namespace fqst;

namespace {

Instance worked_instance() { return Instance{{{0, 0}, {2, 4}, {11, 5}}, {}, {11, 1}}; }
Topology worked_topology() { return Topology(3, 2, {5, 5, 4, kNoParent, 3, 4}); }

void check_close(Point a, Point b, double tol) {
  CHECK(std::abs(a.x - b.x) <= tol);
  CHECK(std::abs(a.y - b.y) <= tol);
}

}  // namespace

TEST_CASE("worked example system assembles by hand") {
  const Topology t = worked_topology();
  const auto flows = compute_flows(t, std::vector<double>(3, 1.0));
  const SteinerSystem sys = assemble_system(worked_instance(), t, flows);
  // Row 0 is node 4 (next to the sink), row 1 is node 5.
  REQUIRE(sys.size == 2);
  CHECK(sys.row_node == std::vector<NodeId>{4, 5});
  CHECK(sys.at(0, 0) == 6);
  CHECK(sys.at(0, 1) == -2);
  CHECK(sys.at(1, 0) == -2);
  CHECK(sys.at(1, 1) == 4);
  CHECK(sys.rhs_x == std::vector<double>{44, 2});
  CHECK(sys.rhs_y == std::vector<double>{8, 4});
  CHECK(is_irreducibly_dominant(sys));
  const auto s = solve_positions(sys);
  check_close(s[0], {9, 2}, 1e-12);
  check_close(s[1], {5, 2}, 1e-12);
}

TEST_CASE("solve_positions on the stated 2x2 system") {
  SteinerSystem sys{2, {4, -2, -2, 6}, {2, 44}, {4, 8}, {0, 1}};
  const auto s = solve_positions(sys);
  check_close(s[0], {5, 2}, 1e-12);
  check_close(s[1], {9, 2}, 1e-12);
  CHECK(residual_inf(sys, s) < 1e-12);
}

TEST_CASE("one Steiner point sits at the centroid of its terminal neighbours") {
  const Instance inst{{{0, 0}, {4, 0}, {0, 6}}, {1.0, 2.0, 3.0}, {10, 10}};
  const Topology t(3, 1, {4, 4, 4, kNoParent, 3});
  const SolvedTree tree = solve_topology(inst, t);
  const MassPoint nbrs[] = {{{0, 0}, 1}, {{4, 0}, 2}, {{0, 6}, 3}, {{10, 10}, 6}};
  check_close(tree.steiner_positions[0], centroid(nbrs), 1e-12);
}

TEST_CASE("1x1 system gives the midpoint") {
  const double f = 2.5;
  const Point u{1, 7}, v{-3, 2};
  SteinerSystem sys{1, {2 * f}, {f * (u.x + v.x)}, {f * (u.y + v.y)}, {0}};
  check_close(solve_positions(sys)[0], (u + v) / 2.0, 1e-12);
}

TEST_CASE("zero Steiner points give an empty system") {
  const Instance inst{{{0, 0}, {1, 1}}, {}, {3, 0}};
  const Topology star(2, 0, {2, 2, kNoParent});
  const SteinerSystem sys = assemble_system(inst, star, compute_flows(star, std::vector<double>(2, 1.0)));
  CHECK(sys.size == 0);
  CHECK(solve_positions(sys).empty());
  CHECK(solve_topology(inst, star).cost == doctest::Approx(9 + 5));
}

TEST_CASE("non-dominant systems are rejected") {
  SteinerSystem sys{2, {1, -2, -2, 1}, {0, 0}, {0, 0}, {0, 1}};
  CHECK_FALSE(is_irreducibly_dominant(sys));
  CHECK_THROWS_AS(solve_positions(sys), ConsistencyError);
  // weakly dominant everywhere with no strict row: singular Laplacian
  SteinerSystem lap{2, {1, -1, -1, 1}, {0, 0}, {0, 0}, {0, 1}};
  CHECK_FALSE(is_irreducibly_dominant(lap));
}

TEST_CASE("random dominant systems agree with Jacobi iteration") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 6;
    SteinerSystem sys;
    sys.size = p;
    sys.matrix.assign(p * p, 0.0);
    for (int i = 0; i < p; ++i) {
      double off = 0;
      for (int j = 0; j < p; ++j) {
        if (i == j) continue;
        sys.matrix[i * p + j] = u(rng);
        off += std::abs(sys.matrix[i * p + j]);
      }
      sys.matrix[i * p + i] = off + 0.5 + std::abs(u(rng));
      sys.rhs_x.push_back(10 * u(rng));
      sys.rhs_y.push_back(10 * u(rng));
      sys.row_node.push_back(i);
    }
    const auto direct = solve_positions(sys);
    const auto iter = oracle::jacobi(sys);
    for (int i = 0; i < p; ++i) check_close(direct[i], iter[i], 1e-9);
  }
}

TEST_CASE("Steiner systems of random trees match Jacobi iteration") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Instance inst = oracle::random_instance(rng, n, 0, 10, true);
    const Topology t = oracle::random_full_topology(rng, n);
    const SteinerSystem sys = assemble_system(inst, t, compute_flows(t, inst.supply_vector()));
    CHECK(is_irreducibly_dominant(sys));
    const auto direct = solve_positions(sys);
    const auto iter = oracle::jacobi(sys);
    for (int i = 0; i < sys.size; ++i) check_close(direct[i], iter[i], 1e-9);
  }
}

TEST_CASE("worked example costs 102") {
  const SolvedTree tree = solve_topology(worked_instance(), worked_topology());
  CHECK(tree.cost == doctest::Approx(102).epsilon(1e-14));
  CHECK_FALSE(tree.degenerate);
}

TEST_CASE("two beads on a path are equally spaced") {
  const Instance inst{{{0, 0}}, {}, {3, 0}};
  // z0 -> node 2 -> node 3 -> sink
  const Topology path(1, 2, {2, kNoParent, 3, 1});
  const SolvedTree tree = solve_topology(inst, path);
  check_close(tree.steiner_positions[0], {1, 0}, 1e-12);
  check_close(tree.steiner_positions[1], {2, 0}, 1e-12);
  CHECK(tree.cost == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("four-source tree has the predicted mass-point ratios") {
  // z1, z2 -> s3 ; s3, z3 -> s2 ; s2, z0 -> s1 ; s1 -> sink
  const Instance inst{{{0, 6}, {1, 0}, {3, 1}, {4, -2}}, {}, {12, 2}};
  const NodeId sink = 4, s1 = 5, s2 = 6, s3 = 7;
  const Topology t(4, 3, {s1, s3, s3, s2, kNoParent, sink, s1, s2});
  const SolvedTree tree = solve_topology(inst, t);
  const auto pos = tree.all_positions();
  const Point tpoint = centroid(1.0, pos[0], 3.0, pos[s2]);
  check_close(pos[s1], (tpoint + pos[sink]) / 2.0, 1e-9);
}

TEST_CASE("solved trees satisfy the centroid, midpoint and collinearity relations") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    const Instance inst = oracle::random_instance(rng, n, -5, 5, trial % 2 == 1);
    const Topology t = oracle::random_full_topology(rng, n);
    const SolvedTree tree = solve_topology(inst, t);
    const auto pos = tree.all_positions();
    const ChildLists kids(t);
    CHECK(certificate_holds(check_centroid_certificate(tree, 1e-9)));
    for (int j = 0; j < t.num_steiner(); ++j) {
      const NodeId s = t.steiner(j);
      std::vector<MassPoint> in;
      for (NodeId c : kids.of(s)) in.push_back({pos[c], tree.flows[c]});
      check_close(pos[s], (centroid(in) + pos[t.parent(s)]) / 2.0, 1e-9);
      // adjacent pair s -> parent when the parent is a Steiner point
      const NodeId s1 = t.parent(s);
      if (!t.is_steiner(s1)) continue;
      const Point cj = centroid(in);
      const double fj = tree.flows[s];
      std::vector<MassPoint> other;
      for (NodeId c : kids.of(s1)) {
        if (c != s) other.push_back({pos[c], tree.flows[c]});
      }
      other.push_back({pos[t.parent(s1)], tree.flows[s1]});
      double fjbar = 0;
      for (auto& m : other) fjbar += m.mass;
      const Point cjbar = centroid(other);
      const Point seg = cjbar - cj;
      const double total = 2 * fjbar + fj;
      check_close(pos[s], cj + (fjbar / total) * seg, 1e-9);
      check_close(pos[s1], cj + (2 * fjbar / total) * seg, 1e-9);
    }
  }
}

TEST_CASE("relabelling Steiner slots gives the same embedded tree") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 5;
    const Instance inst = oracle::random_instance(rng, n);
    const Topology t = oracle::random_full_topology(rng, n);
    std::vector<int> perm(t.num_steiner());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabel = [&](NodeId v) { return t.is_steiner(v) ? t.steiner(perm[t.steiner_index(v)]) : v; };
    std::vector<NodeId> parent(t.num_nodes());
    for (NodeId v = 0; v < t.num_nodes(); ++v) {
      parent[relabel(v)] = t.is_sink(v) ? kNoParent : relabel(t.parent(v));
    }
    const SolvedTree a = solve_topology(inst, t);
    const SolvedTree b = solve_topology(inst, Topology(n, t.num_steiner(), parent));
    for (int j = 0; j < t.num_steiner(); ++j) {
      check_close(a.steiner_positions[j], b.steiner_positions[perm[j]], 1e-9);
    }
    CHECK(a.cost == doctest::Approx(b.cost).epsilon(1e-12));
  }
}

TEST_CASE("certificate pass agrees with a small residual") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Instance inst = oracle::random_instance(rng, n);
    const Topology t = oracle::random_full_topology(rng, n);
    SolvedTree tree = solve_topology(inst, t);
    const SteinerSystem sys = assemble_system(inst, t, tree.flows);
    CHECK(residual_inf(sys, tree.steiner_positions) <= 1e-9);
    CHECK(certificate_holds(check_centroid_certificate(tree, 1e-9)));
    tree.steiner_positions[0].x += 1e-3;
    CHECK(residual_inf(sys, tree.steiner_positions) > 1e-9);
    CHECK_FALSE(certificate_holds(check_centroid_certificate(tree, 1e-9)));
  }
}
