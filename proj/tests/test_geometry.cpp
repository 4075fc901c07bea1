#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fqst/errors.hpp"
#include "fqst/geometry.hpp"

using namespace fqst;

TEST_CASE("centroid of two unit masses is their midpoint") {
  const MassPoint pts[] = {{{0, 0}, 1}, {{2, 4}, 1}};
  CHECK(centroid(pts) == Point{1, 2});
}

TEST_CASE("centroid of a single point is the point") {
  const MassPoint pts[] = {{{3, 7}, 5}};
  CHECK(centroid(pts) == Point{3, 7});
}

TEST_CASE("centroid weighting places the worked-example Steiner point") {
  const MassPoint pts[] = {{{0, 0}, 1}, {{2, 4}, 1}, {{9, 2}, 2}};
  const Point c = centroid(pts);
  CHECK(c.x == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.y == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("centroid rejects empty input and nonpositive masses") {
  CHECK_THROWS_AS(centroid(std::span<const MassPoint>{}), DomainError);
  const MassPoint bad[] = {{{0, 0}, 1}, {{1, 1}, 0}};
  CHECK_THROWS_AS(centroid(bad), DomainError);
}

TEST_CASE("sq_dist examples") {
  CHECK(sq_dist({5, 2}, {9, 2}) == 16.0);
  CHECK(sq_dist({3, 3}, {3, 3}) == 0.0);
  CHECK(sq_dist({0, 0}, {3, 4}) == 25.0);
}

TEST_CASE("angle_at examples") {
  CHECK(angle_at({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle_at({0, 0}, {1, 0}, {2, 0}) == 0.0);
  const double near_pi = angle_at({0, 0}, {1, 0}, {-1, 1e-12});
  // Extended-precision arccos of the normalised dot product.
  const long double ux = -1.0L, uy = 1e-12L;
  const long double oracle = std::acos(ux / std::sqrt(ux * ux + uy * uy));
  CHECK(std::abs(near_pi - static_cast<double>(oracle)) < 1e-6);
  CHECK(std::abs(near_pi - std::numbers::pi) < 1e-6);
}

TEST_CASE("angle_at rejects rays of zero length") {
  CHECK_THROWS_AS(angle_at({1, 1}, {1, 1}, {2, 0}), DegenerateAngleError);
  CHECK_THROWS_AS(angle_at({1, 1}, {2, 0}, {1, 1}), DegenerateAngleError);
}

TEST_CASE("centroid commutes with rigid motions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_real_distribution<double> m(0.1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MassPoint> pts(1 + trial % 7);
    for (auto& p : pts) p = {{u(rng), u(rng)}, m(rng)};
    const double theta = u(rng);
    const Point shift{u(rng), u(rng)};
    auto move = [&](Point p) {
      return Point{std::cos(theta) * p.x - std::sin(theta) * p.y + shift.x,
                   std::sin(theta) * p.x + std::cos(theta) * p.y + shift.y};
    };
    std::vector<MassPoint> moved = pts;
    for (auto& p : moved) p.position = move(p.position);
    const Point a = move(centroid(pts));
    const Point b = centroid(moved);
    CHECK(std::abs(a.x - b.x) < 1e-9);
    CHECK(std::abs(a.y - b.y) < 1e-9);
  }
}

TEST_CASE("centroid with equal masses is the arithmetic mean") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MassPoint> pts(2 + trial % 5);
    Point sum{};
    for (auto& p : pts) {
      p = {{u(rng), u(rng)}, 2.5};
      sum = sum + p.position;
    }
    const Point mean = sum / static_cast<double>(pts.size());
    const Point c = centroid(pts);
    CHECK(std::abs(c.x - mean.x) < 1e-12);
    CHECK(std::abs(c.y - mean.y) < 1e-12);
  }
}

TEST_CASE("centroid merges partitions associatively") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_real_distribution<double> m(0.1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MassPoint> pts(2 + trial % 9);
    for (auto& p : pts) p = {{u(rng), u(rng)}, m(rng)};
    const std::size_t cut = 1 + trial % (pts.size() - 1);
    std::span<const MassPoint> all(pts), left = all.first(cut), right = all.subspan(cut);
    double ml = 0, mr = 0;
    for (auto& p : left) ml += p.mass;
    for (auto& p : right) mr += p.mass;
    const Point merged = centroid(ml, centroid(left), mr, centroid(right));
    const Point direct = centroid(all);
    const double scale = std::max(1.0, norm(direct));
    CHECK(std::abs(merged.x - direct.x) <= 1e-12 * scale);
    CHECK(std::abs(merged.y - direct.y) <= 1e-12 * scale);
  }
}

TEST_CASE("sq_dist is symmetric and scales quadratically") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double lambda = u(rng);
    CHECK(sq_dist(a, b) == sq_dist(b, a));
    CHECK(sq_dist(lambda * a, lambda * b) ==
          doctest::Approx(lambda * lambda * sq_dist(a, b)).epsilon(1e-12));
  }
}
