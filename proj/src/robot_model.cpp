#include "pact/robot_model.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace pact {
namespace {

using nlohmann::json;

Eigen::Vector3d vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw std::runtime_error(std::string("expected 3-vector for ") + what);
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Eigen::Matrix3d rpy_matrix(const Eigen::Vector3d& rpy) {
  return (Eigen::AngleAxisd(rpy[2], Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(rpy[1], Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(rpy[0], Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::Isometry3d transform(const json& j, const char* what) {
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  if (j.contains("translation")) T.translation() = vec3(j["translation"], what);
  if (j.contains("rpy")) T.linear() = rpy_matrix(vec3(j["rpy"], what));
  return T;
}

}  // namespace

RobotModel load_robot_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("model parse error in " + path + ": " + e.what());
  }
  if (j.value("schema", 0) != 1)
    throw std::runtime_error("unsupported model schema in " + path);

  RobotModel m;
  m.name = j.value("name", "unnamed");
  const auto& joints = j.at("joints");
  const int n = static_cast<int>(joints.size());
  if (n < 1) throw std::runtime_error("model needs at least one joint");

  for (const auto& jj : joints) {
    JointDesc d;
    d.axis = vec3(jj.at("axis"), "joint axis").normalized();
    d.fixed = transform(jj, "joint transform");
    m.joints.push_back(d);
  }

  m.limit_lo.resize(n);
  m.limit_hi.resize(n);
  const auto& lims = j.at("joint_limits");
  if (static_cast<int>(lims.size()) != n)
    throw std::runtime_error("joint_limits length mismatch");
  for (int i = 0; i < n; ++i) {
    m.limit_lo[i] = lims[i][0].get<double>();
    m.limit_hi[i] = lims[i][1].get<double>();
    if (!(m.limit_lo[i] < m.limit_hi[i]))
      throw std::runtime_error("joint limit min must be < max");
  }

  m.vel_limit.resize(n);
  const auto& vl = j.at("velocity_limits");
  if (static_cast<int>(vl.size()) != n)
    throw std::runtime_error("velocity_limits length mismatch");
  for (int i = 0; i < n; ++i) m.vel_limit[i] = vl[i].get<double>();

  m.ee_fixed = transform(j.at("ee"), "ee transform");

  for (const auto& c : j.at("capsules")) {
    LinkCapsule lc;
    lc.joint = c.at("joint").get<int>();
    if (lc.joint < 0 || lc.joint >= n)
      throw std::runtime_error("capsule joint index out of range");
    lc.shape.p0 = vec3(c.at("p0"), "capsule p0");
    lc.shape.p1 = vec3(c.at("p1"), "capsule p1");
    lc.shape.radius = c.at("radius").get<double>();
    if (lc.shape.radius <= 0.0)
      throw std::runtime_error("capsule radius must be positive");
    m.links.push_back(lc);
  }
  return m;
}

}  // namespace pact
