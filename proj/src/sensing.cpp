#include "pact/sensing.hpp"

#include <stdexcept>

namespace pact {

Eigen::Vector3d obstacle_position(const SensorUnitPose& pose, double d_obs) {
  if (d_obs < 0.0 || d_obs > kSensorMaxRange)
    throw std::invalid_argument("obstacle_position: d_obs out of range");
  return pose.position + pose.rotation * Eigen::Vector3d(0.0, 0.0, d_obs);
}

double simulate_proximity(const SensorUnitPose& pose,
                          const SceneGeometry& scene) {
  const Eigen::Vector3d dir = pose.rotation.col(2);
  double best = kSensorMaxRange;
  for (const auto& s : scene.spheres)
    if (auto t = ray_sphere(pose.position, dir, s)) best = std::min(best, *t);
  for (const auto& b : scene.boxes)
    if (auto t = ray_box(pose.position, dir, b)) best = std::min(best, *t);
  return best;
}

GateResult gate_obstacles(const std::vector<ObstacleEstimate>& estimates,
                          const Eigen::Vector3d& ee_position, double d_max) {
  GateResult out;
  for (const auto& e : estimates) {
    if (e.d_obs >= kSensorMaxRange) continue;  // saturated: nothing detected
    const double d = (e.h - ee_position).norm();
    if (d > d_max) continue;
    out.kept.push_back(e);
    if (!out.d_lowest || d < *out.d_lowest) out.d_lowest = d;
  }
  return out;
}

}  // namespace pact
