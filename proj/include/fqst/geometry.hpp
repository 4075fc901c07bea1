#pragma once

#include <cmath>
#include <span>

namespace fqst {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// A point carrying a positive mass (flow weight).
struct MassPoint {
  Point position;
  double mass = 1.0;
};

// Mass-weighted mean of the inputs. Throws DomainError on an empty list or a
// nonpositive mass.
Point centroid(std::span<const MassPoint> points);

// Two-point convenience: C(m1 a, m2 b).
Point centroid(double m1, Point a, double m2, Point b);

constexpr double sq_dist(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(Point a, Point b) { return std::sqrt(sq_dist(a, b)); }

// Interior angle in [0, pi] between the rays vertex->a and vertex->b.
// Uses atan2(|cross|, dot), which stays accurate near 0 and pi.
// Throws DegenerateAngleError when a or b coincides with the vertex.
double angle_at(Point vertex, Point a, Point b);

}  // namespace fqst
