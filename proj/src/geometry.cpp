#include "fqst/geometry.hpp"

#include "fqst/errors.hpp"

namespace fqst {

Point centroid(std::span<const MassPoint> points) {
  if (points.empty()) {
    throw DomainError("centroid of an empty point set");
  }
  // Accumulate the weighted sum and the total mass separately and divide once.
  double sx = 0.0;
  double sy = 0.0;
  double total = 0.0;
  for (const MassPoint& p : points) {
    if (!(p.mass > 0.0)) throw DomainError("centroid requires positive masses");
    sx += p.mass * p.position.x;
    sy += p.mass * p.position.y;
    total += p.mass;
  }
  return {sx / total, sy / total};
}

Point centroid(double m1, Point a, double m2, Point b) {
  const MassPoint pts[2] = {{a, m1}, {b, m2}};
  return centroid(pts);
}

double angle_at(Point vertex, Point a, Point b) {
  const Point u = a - vertex;
  const Point v = b - vertex;
  if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0)) {
    throw DegenerateAngleError("angle_at: ray endpoint coincides with the vertex");
  }
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace fqst
