#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace pact {

// Capsule: segment [p0, p1] swept by a sphere of the given radius.
struct Capsule {
  Eigen::Vector3d p0;
  Eigen::Vector3d p1;
  double radius;
};

struct SphereObstacle {
  Eigen::Vector3d center;
  double radius;
};

// Axis-aligned box given by its min/max corners.
struct BoxObstacle {
  Eigen::Vector3d lo;
  Eigen::Vector3d hi;
};

struct SceneGeometry {
  std::vector<SphereObstacle> spheres;
  std::vector<BoxObstacle> boxes;
};

// Closest point on segment [a, b] to p.
Eigen::Vector3d closest_point_on_segment(const Eigen::Vector3d& a,
                                         const Eigen::Vector3d& b,
                                         const Eigen::Vector3d& p);

// Distance from p to the axis-aligned box (0 inside).
double point_box_distance(const Eigen::Vector3d& p, const BoxObstacle& box);

// Smallest t >= 0 with origin + t*dir on the primitive surface; nullopt if
// the ray misses. dir must be unit length.
std::optional<double> ray_sphere(const Eigen::Vector3d& origin,
                                 const Eigen::Vector3d& dir,
                                 const SphereObstacle& s);
std::optional<double> ray_box(const Eigen::Vector3d& origin,
                              const Eigen::Vector3d& dir,
                              const BoxObstacle& box);

}  // namespace pact
