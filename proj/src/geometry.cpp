#include "pact/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pact {

Eigen::Vector3d closest_point_on_segment(const Eigen::Vector3d& a,
                                         const Eigen::Vector3d& b,
                                         const Eigen::Vector3d& p) {
  const Eigen::Vector3d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return a;
  const double t = std::clamp(ab.dot(p - a) / len2, 0.0, 1.0);
  return a + t * ab;
}

double point_box_distance(const Eigen::Vector3d& p, const BoxObstacle& box) {
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i) {
    if (p[i] < box.lo[i])
      d[i] = box.lo[i] - p[i];
    else if (p[i] > box.hi[i])
      d[i] = p[i] - box.hi[i];
  }
  return d.norm();
}

std::optional<double> ray_sphere(const Eigen::Vector3d& origin,
                                 const Eigen::Vector3d& dir,
                                 const SphereObstacle& s) {
  const Eigen::Vector3d oc = origin - s.center;
  const double b = oc.dot(dir);
  const double c = oc.squaredNorm() - s.radius * s.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  double t = -b - sq;
  if (t < 0.0) t = -b + sq;  // origin inside the sphere
  if (t < 0.0) return std::nullopt;
  return t;
}

std::optional<double> ray_box(const Eigen::Vector3d& origin,
                              const Eigen::Vector3d& dir,
                              const BoxObstacle& box) {
  // Slab test; handles axis-parallel rays via the infinite-slab convention.
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-15) {
      if (origin[i] < box.lo[i] || origin[i] > box.hi[i]) return std::nullopt;
      continue;
    }
    double t1 = (box.lo[i] - origin[i]) / dir[i];
    double t2 = (box.hi[i] - origin[i]) / dir[i];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return std::nullopt;
  }
  return tmin;
}

}  // namespace pact
