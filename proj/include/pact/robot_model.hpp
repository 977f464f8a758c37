#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pact/geometry.hpp"

namespace pact {

// One revolute joint: a fixed transform from the previous joint frame to
// this joint's frame, followed by a rotation of q about `axis`.
struct JointDesc {
  Eigen::Vector3d axis;
  Eigen::Isometry3d fixed;
};

// Collision capsule expressed in the frame of the joint it is attached to.
struct LinkCapsule {
  int joint;
  Capsule shape;
};

struct RobotModel {
  std::string name;
  std::vector<JointDesc> joints;
  std::vector<LinkCapsule> links;
  Eigen::VectorXd limit_lo;   // rad
  Eigen::VectorXd limit_hi;   // rad
  Eigen::VectorXd vel_limit;  // rad/s
  Eigen::Isometry3d ee_fixed; // last joint frame -> end effector

  int n() const { return static_cast<int>(joints.size()); }
  Eigen::VectorXd mid_position() const { return 0.5 * (limit_lo + limit_hi); }
};

struct JointState {
  Eigen::VectorXd q;
  Eigen::VectorXd q_dot;
};

/**
 * Closest point on the robot body to a query point.
 *
 * `direction` points from the body surface toward the query and has unit
 * norm, except when the query is inside a capsule: then distance is 0,
 * direction is zero and `degenerate` is set.
 */
struct BodyPoint {
  int link_index = -1;
  Eigen::Vector3d local_point = Eigen::Vector3d::Zero();
  Eigen::Vector3d world_point = Eigen::Vector3d::Zero();
  double distance = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::Zero();
  bool degenerate = false;
};

// Parses a schema-1 model file. Throws std::runtime_error with a message
// naming the offending field on malformed input.
RobotModel load_robot_model(const std::string& path);

}  // namespace pact
