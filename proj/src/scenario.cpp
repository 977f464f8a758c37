#include "pact/scenario.hpp"

#include <cmath>
#include <filesystem>
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

// Basis vector perpendicular to `axis`, picked deterministically.
Eigen::Vector3d perp(const Eigen::Vector3d& axis) {
  Eigen::Vector3d ref = Eigen::Vector3d::UnitX();
  if (std::abs(axis.dot(ref)) > 0.9) ref = Eigen::Vector3d::UnitY();
  return axis.cross(ref).normalized();
}

// Expands a ring of `count` sensor units around `axis` on one link. Rays
// point radially outward; a positive `tilt` pitches them toward +axis
// (tilt = pi/2 would make them axial).
void expand_ring(const json& ring, std::vector<SensorMount>& out) {
  const Eigen::Vector3d axis = vec3(ring.at("axis"), "ring axis").normalized();
  const double offset = ring.at("offset").get<double>();
  const double radius = ring.at("radius").get<double>();
  const int count = ring.at("count").get<int>();
  const int link = ring.at("link").get<int>();
  const int id_base = ring.value("id_base", static_cast<int>(out.size()));
  const double phase = ring.value("phase", 0.0);
  const double tilt = ring.value("tilt", 0.0);
  if (count < 1) throw std::runtime_error("ring count must be >= 1");

  const Eigen::Vector3d u = perp(axis);
  const Eigen::Vector3d v = axis.cross(u);
  for (int i = 0; i < count; ++i) {
    const double a = phase + 2.0 * M_PI * i / count;
    const Eigen::Vector3d radial = std::cos(a) * u + std::sin(a) * v;
    const Eigen::Vector3d dir =
        std::cos(tilt) * radial + std::sin(tilt) * axis;
    SensorMount m;
    m.id = id_base + i;
    m.link = link;
    m.translation = offset * axis + radius * radial;
    m.rotation.col(2) = dir;
    m.rotation.col(0) = (radial - radial.dot(dir) * dir).norm() > 1e-9
                            ? (radial - radial.dot(dir) * dir).normalized()
                            : axis;
    m.rotation.col(1) = dir.cross(m.rotation.col(0));
    out.push_back(m);
  }
}

}  // namespace

Eigen::Vector3d MovingSphere::position_at(double t) const {
  if (waypoints.empty()) return Eigen::Vector3d::Zero();
  if (t <= waypoints.front().first) return waypoints.front().second;
  for (size_t i = 1; i < waypoints.size(); ++i) {
    if (t <= waypoints[i].first) {
      const auto& [t0, p0] = waypoints[i - 1];
      const auto& [t1, p1] = waypoints[i];
      const double s = (t - t0) / (t1 - t0);
      return p0 + s * (p1 - p0);
    }
  }
  return waypoints.back().second;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scenario parse error in " + path + ": " +
                             e.what());
  }
  if (j.value("schema", 0) != 1)
    throw std::runtime_error("unsupported scenario schema in " + path);

  Scenario sc;
  sc.name = j.value("name", std::filesystem::path(path).stem().string());
  sc.model_path =
      (std::filesystem::path(path).parent_path() / j.at("model").get<std::string>())
          .lexically_normal()
          .string();
  sc.duration = j.value("duration", 10.0);
  if (sc.duration <= 0.0) throw std::runtime_error("duration must be > 0");
  sc.seed = j.value("seed", 1ull);

  const auto& q0 = j.at("q0");
  sc.q0.resize(q0.size());
  for (size_t i = 0; i < q0.size(); ++i) sc.q0[i] = q0[i].get<double>();

  const auto& task = j.at("task");
  const std::string type = task.at("type").get<std::string>();
  if (type == "circle") {
    CircleTask c;
    c.center = vec3(task.at("center"), "circle center");
    c.radius = task.at("radius").get<double>();
    c.angular_rate = task.at("angular_rate").get<double>();
    c.start_angle = task.value("start_angle", 0.0);
    sc.circle = c;
  } else if (type == "line") {
    LineTask l;
    l.start = vec3(task.at("start"), "line start");
    l.end = vec3(task.at("end"), "line end");
    l.speed = task.at("speed").get<double>();
    sc.line = l;
  } else {
    throw std::runtime_error("unknown task type: " + type);
  }

  for (const auto& ring : j.value("sensor_rings", json::array()))
    expand_ring(ring, sc.sensors);
  for (const auto& s : j.value("sensors", json::array())) {
    SensorMount m;
    m.id = s.at("id").get<int>();
    m.link = s.at("link").get<int>();
    m.translation = vec3(s.at("translation"), "sensor translation");
    if (s.contains("rotation")) {
      const auto& r = s["rotation"];
      for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
          m.rotation(row, col) = r[row][col].get<double>();
    } else {
      m.rotation.setIdentity();
    }
    sc.sensors.push_back(m);
  }

  const auto obstacles = j.value("obstacles", json::object());
  for (const auto& b : obstacles.value("boxes", json::array()))
    sc.boxes.push_back({vec3(b.at("min"), "box min"), vec3(b.at("max"), "box max")});
  for (const auto& s : obstacles.value("spheres", json::array())) {
    MovingSphere ms;
    ms.radius = s.at("radius").get<double>();
    for (const auto& w : s.at("waypoints"))
      ms.waypoints.emplace_back(w.at("t").get<double>(),
                                vec3(w.at("p"), "waypoint p"));
    if (ms.waypoints.empty())
      throw std::runtime_error("sphere needs at least one waypoint");
    sc.spheres.push_back(std::move(ms));
  }

  for (const auto& p : j.value("pushes", json::array())) {
    PushPulse pp;
    pp.direction = vec3(p.at("direction"), "push direction").normalized();
    pp.magnitude = p.at("magnitude").get<double>();
    pp.start = p.at("start").get<double>();
    pp.duration = p.at("duration").get<double>();
    sc.pushes.push_back(pp);
  }

  if (j.contains("toggles")) {
    sc.toggles.proximity_informed =
        j["toggles"].value("proximity_informed", true);
    sc.toggles.restrictions = j["toggles"].value("restrictions", true);
  }
  sc.sensor_noise = j.value("sensor_noise", false);

  const json params = j.value("params", json::object());
  for (const auto& [key, val] : params.items())
    sc.params[key] = val.get<double>();

  return sc;
}

}  // namespace pact
