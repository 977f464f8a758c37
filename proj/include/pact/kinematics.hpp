#pragma once

#include "pact/robot_model.hpp"

namespace pact {

// World poses of every joint frame (after the joint rotation) plus the EE.
struct FrameSet {
  std::vector<Eigen::Isometry3d> joint;
  Eigen::Isometry3d ee;
};

FrameSet forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

// Positional Jacobian (3 x n) of a world point rigidly attached to `link`.
// Columns of joints distal to the link are zero.
Eigen::MatrixXd point_jacobian(const RobotModel& model, const FrameSet& frames,
                               int link, const Eigen::Vector3d& world_point);

// Positional Jacobian of the end effector (3 x n).
Eigen::MatrixXd ee_jacobian(const RobotModel& model, const FrameSet& frames);

// Full end-effector Jacobian (6 x n): linear on top, angular below.
Eigen::MatrixXd ee_jacobian_full(const RobotModel& model,
                                 const FrameSet& frames);

// Closest point over all body capsules to `obstacle`. Ties between links
// resolve to the lowest link index so repeated queries are reproducible.
BodyPoint closest_point_on_robot(const RobotModel& model,
                                 const FrameSet& frames,
                                 const Eigen::Vector3d& obstacle);

// Convenience overloads that run FK internally.
Eigen::MatrixXd ee_jacobian(const RobotModel& model, const Eigen::VectorXd& q);
BodyPoint closest_point_on_robot(const RobotModel& model,
                                 const Eigen::VectorXd& q,
                                 const Eigen::Vector3d& obstacle);

// Minimum distance from the body surface to the scene primitives
// (segment-exact for spheres, sampled along capsule axes for boxes).
double min_body_scene_distance(const RobotModel& model, const FrameSet& frames,
                               const SceneGeometry& scene);

}  // namespace pact
