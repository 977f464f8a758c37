#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pact/geometry.hpp"

namespace pact {

inline constexpr double kSensorMaxRange = 4.0;  // m

// Pose of a proximity sensor unit in the robot base frame. The unit
// measures distance along its local z axis.
struct SensorUnitPose {
  int id = 0;
  int link_index = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
};

struct ObstacleEstimate {
  Eigen::Vector3d h;   // detected point, base frame
  int source_id = -1;
  double d_obs = 0.0;  // raw reading, m
  double stamp = 0.0;  // s
};

// World point at distance d_obs along the unit's measurement axis.
// Throws std::invalid_argument when d_obs is outside [0, kSensorMaxRange].
Eigen::Vector3d obstacle_position(const SensorUnitPose& pose, double d_obs);

// Time-of-flight reading against the scene: distance to the first primitive
// hit by the ray (pose.position, pose.rotation * z), saturated at
// kSensorMaxRange when nothing is hit within range.
double simulate_proximity(const SensorUnitPose& pose,
                          const SceneGeometry& scene);

struct GateResult {
  std::vector<ObstacleEstimate> kept;
  std::optional<double> d_lowest;  // min ||h - ee|| over kept estimates
};

// Drops saturated readings, then keeps estimates within d_max of the EE.
GateResult gate_obstacles(const std::vector<ObstacleEstimate>& estimates,
                          const Eigen::Vector3d& ee_position, double d_max);

}  // namespace pact
