#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pact/geometry.hpp"

namespace pact {

struct CircleTask {
  Eigen::Vector3d center;
  double radius;
  double angular_rate;  // rad/s, positive = counterclockwise in the y-z plane
  double start_angle;   // rad
};

struct LineTask {
  Eigen::Vector3d start;
  Eigen::Vector3d end;
  double speed;  // m/s
};

// Sensor unit pose local to its mount link.
struct SensorMount {
  int id;
  int link;
  Eigen::Vector3d translation;
  Eigen::Matrix3d rotation;
};

// Sphere following piecewise-linear waypoints; clamped outside [t0, tN].
struct MovingSphere {
  double radius;
  std::vector<std::pair<double, Eigen::Vector3d>> waypoints;

  Eigen::Vector3d position_at(double t) const;
};

// Scripted external force pulse applied to the EE force signal.
struct PushPulse {
  Eigen::Vector3d direction;  // unit
  double magnitude;           // N
  double start;               // s
  double duration;            // s
};

struct Toggles {
  bool proximity_informed = true;
  bool restrictions = true;
};

struct Scenario {
  std::string name;
  std::string model_path;  // resolved relative to the scenario file
  double duration = 10.0;  // s
  uint64_t seed = 1;
  Eigen::VectorXd q0;
  std::optional<CircleTask> circle;
  std::optional<LineTask> line;
  std::vector<SensorMount> sensors;
  std::vector<BoxObstacle> boxes;
  std::vector<MovingSphere> spheres;
  std::vector<PushPulse> pushes;
  Toggles toggles;
  bool sensor_noise = false;
  std::map<std::string, double> params;  // overrides applied over defaults
};

// Parses a schema-1 scenario file. Sensor rings in the file are expanded
// into individual SensorMount entries. Throws std::runtime_error with the
// offending field on malformed input.
Scenario load_scenario(const std::string& path);

}  // namespace pact
