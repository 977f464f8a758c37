#include "pact/simworld.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "pact/kinematics.hpp"

namespace pact {
namespace {

SceneGeometry scene_at(const Scenario& sc, double t) {
  SceneGeometry scene;
  scene.boxes = sc.boxes;
  for (const auto& s : sc.spheres)
    scene.spheres.push_back({s.position_at(t), s.radius});
  return scene;
}

Eigen::Vector3d spring_force(const Eigen::Vector3d& ee,
                             const SceneGeometry& scene, double k_c) {
  Eigen::Vector3d F = Eigen::Vector3d::Zero();
  for (const auto& s : scene.spheres) {
    const Eigen::Vector3d d = ee - s.center;
    const double dist = d.norm();
    if (dist < s.radius && dist > 1e-12)
      F += k_c * (s.radius - dist) * (d / dist);
  }
  for (const auto& b : scene.boxes) {
    bool inside = true;
    for (int i = 0; i < 3; ++i)
      inside = inside && ee[i] >= b.lo[i] && ee[i] <= b.hi[i];
    if (!inside) continue;
    // Push back out through the nearest face.
    double depth = std::numeric_limits<double>::infinity();
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i) {
      if (ee[i] - b.lo[i] < depth) {
        depth = ee[i] - b.lo[i];
        normal = -Eigen::Vector3d::Unit(i);
      }
      if (b.hi[i] - ee[i] < depth) {
        depth = b.hi[i] - ee[i];
        normal = Eigen::Vector3d::Unit(i);
      }
    }
    F += k_c * depth * normal;
  }
  return F;
}

// Reference-point trajectory state; the phase advances with the applied
// scale factor so the reference never runs away from a slowed EE.
struct Trajectory {
  const Scenario& sc;
  const PlantParams& plant;
  double phase;  // circle: angle; line: arc length

  explicit Trajectory(const Scenario& s, const PlantParams& p)
      : sc(s), plant(p),
        phase(s.circle ? s.circle->start_angle : 0.0) {}

  Eigen::Vector3d reference() const {
    if (sc.circle) {
      const auto& c = *sc.circle;
      return c.center + c.radius * Eigen::Vector3d(0.0, std::cos(phase),
                                                   std::sin(phase));
    }
    const auto& l = *sc.line;
    const double len = (l.end - l.start).norm();
    const double s = std::min(phase, len);
    return l.start + s * (l.end - l.start) / len;
  }

  Eigen::Vector3d feedforward() const {
    if (sc.circle) {
      const auto& c = *sc.circle;
      return c.angular_rate * c.radius *
             Eigen::Vector3d(0.0, -std::sin(phase), std::cos(phase));
    }
    const auto& l = *sc.line;
    const double len = (l.end - l.start).norm();
    if (phase >= len) return Eigen::Vector3d::Zero();
    return l.speed * (l.end - l.start) / len;
  }

  Eigen::Vector3d task_velocity(const Eigen::Vector3d& ee) const {
    Eigen::Vector3d v = feedforward() + plant.K_p * (reference() - ee);
    const double norm = v.norm();
    if (norm > plant.task_vmax) v *= plant.task_vmax / norm;
    return v;
  }

  void advance(double applied_factor) {
    if (sc.circle) {
      phase += sc.circle->angular_rate * kDt * applied_factor;
    } else {
      const double len = (sc.line->end - sc.line->start).norm();
      phase = std::min(len, phase + sc.line->speed * kDt * applied_factor);
    }
  }
};

}  // namespace

Eigen::Vector3d synth_external_force(const Eigen::Vector3d& ee,
                                     const Eigen::Vector3d& ee_vel,
                                     const SceneGeometry& scene,
                                     const std::vector<PushPulse>& pushes,
                                     double t, const PlantParams& plant,
                                     std::mt19937_64& rng) {
  Eigen::Vector3d F = spring_force(ee, scene, plant.k_c);
  for (const auto& p : pushes)
    if (t >= p.start && t < p.start + p.duration)
      F += p.magnitude * p.direction;
  const double sd = plant.sigma0 + plant.sigma_v * ee_vel.norm();
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  for (int a = 0; a < 3; ++a) F[a] += sd * unit_normal(rng);
  return F;
}

Trace run_scenario(const Scenario& sc, const RunOptions& opt) {
  SimParams params;
  for (const auto& [key, val] : sc.params)
    if (!set_param(params, key, val))
      throw std::runtime_error("scenario " + sc.name + ": unknown param " + key);
  for (const auto& [key, val] : opt.overrides)
    if (!set_param(params, key, val))
      throw std::runtime_error("unknown parameter override: " + key);

  const bool informed = sc.toggles.proximity_informed && !opt.no_proximity;
  const bool restrictions =
      informed && sc.toggles.restrictions && !opt.no_restrictions;
  const uint64_t seed = opt.seed.value_or(sc.seed);

  const RobotModel model = load_robot_model(sc.model_path);
  if (sc.q0.size() != model.n())
    throw std::runtime_error("scenario q0 length does not match the model");
  for (const auto& m : sc.sensors)
    if (m.link < 0 || m.link >= model.n())
      throw std::runtime_error("sensor mount link out of range");

  Controller ctrl(model, params.gains);
  ForceWindow window(params.window, params.alpha, params.lambda);
  Trajectory traj(sc, params.plant);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sensor_jitter(-0.005, 0.005);

  Trace trace;
  trace.scenario_name = sc.name;
  trace.model_name = model.name;
  trace.n = model.n();
  trace.seed = seed;
  trace.toggles = {informed, restrictions};
  trace.params = param_table(params);

  JointState state{sc.q0, Eigen::VectorXd::Zero(model.n())};
  std::vector<ObstacleEstimate> snapshot;
  ReactionState react;
  bool reacting = false;
  Eigen::Vector3d active_F_ext = Eigen::Vector3d::Zero();
  Eigen::Vector3d prev_ee = Eigen::Vector3d::Zero();

  const int steps = static_cast<int>(std::llround(sc.duration / kDt));
  trace.rows.reserve(steps);

  for (int k = 0; k < steps; ++k) {
    const double t = k * kDt;
    const SceneGeometry scene = scene_at(sc, t);
    const FrameSet frames = forward_kinematics(model, state.q);
    const Eigen::Vector3d ee = frames.ee.translation();

    if (k % kSensorDivisor == 0) {
      snapshot.clear();
      for (const auto& m : sc.sensors) {
        const Eigen::Isometry3d& T = frames.joint[m.link];
        SensorUnitPose pose;
        pose.id = m.id;
        pose.link_index = m.link;
        pose.position = T * m.translation;
        pose.rotation = T.linear() * m.rotation;
        double d = simulate_proximity(pose, scene);
        if (sc.sensor_noise)
          d = std::clamp(d + sensor_jitter(rng), 0.0, kSensorMaxRange);
        snapshot.push_back({obstacle_position(pose, d), pose.id, d, t});
      }
    }

    const GateResult gate =
        informed ? gate_obstacles(snapshot, ee, params.gains.d_max)
                 : GateResult{};
    const double factor = ctrl.on_cycle(gate.d_lowest);

    TraceRow row;
    row.t = t;
    row.q = state.q;
    row.ee = ee;
    row.n_gated = static_cast<int>(gate.kept.size());
    row.d_lowest = gate.d_lowest.value_or(-1.0);
    row.scale_factor = factor;

    for (const auto& e : snapshot) {
      if (e.d_obs < kSensorMaxRange && e.d_obs < row.d_obs) {
        row.sensor_id = e.source_id;
        row.d_obs = e.d_obs;
        row.h = e.h;
      }
    }
    if (!scene.spheres.empty() || !scene.boxes.empty()) {
      row.body_dist = min_body_scene_distance(model, frames, scene);
    }

    // Contact pipeline: thresholds from pre-push statistics, detection on
    // the appended (outlier-weighted) value.
    const Eigen::Vector3d ee_vel = k == 0 ? Eigen::Vector3d::Zero()
                                          : ((ee - prev_ee) / kDt).eval();
    row.F_raw = synth_external_force(ee, ee_vel, scene, sc.pushes, t,
                                     params.plant, rng);
    row.mu = window.mean();
    row.sigma = window.stddev();
    row.window_full = window.full();
    row.F_app = window.push(row.F_raw);
    const AxisProximity prox =
        informed ? split_by_axis(gate.kept, ee) : AxisProximity{};
    const ThresholdBand band =
        thresholds(row.mu, row.sigma, params.thresh, prox);
    row.T_u = band.upper;
    row.T_l = band.lower;

    if (row.window_full && !reacting) {
      if (auto ev = detect(row.F_app, band, row.mu, t)) {
        row.contact = true;
        active_F_ext = ev->F_ext;
        react = reaction(*ev, params.C(), params.gains.l_max);
        reacting = true;
      }
    }

    ControlCommand cmd;
    if (reacting) {
      const Eigen::Vector3d v = react.step_decay();
      row.reaction = v;
      row.F_ext = active_F_ext;
      row.task_xd = v;
      cmd = ctrl.compute_command(state, v, gate.kept, 1.0, restrictions);
      cmd.mode = CommandMode::reacting;
      traj.advance(0.0);
      if (react.finished()) {
        reacting = false;
        active_F_ext = Eigen::Vector3d::Zero();
      }
    } else {
      const Eigen::Vector3d xd = traj.task_velocity(ee);
      row.task_xd = xd;
      cmd = ctrl.compute_command(state, xd, gate.kept, factor, restrictions);
      traj.advance(factor);
    }

    row.qd_cmd = cmd.q_dot;
    row.scaled_task = cmd.scaled_task;
    row.n_constraints = cmd.active_constraints;
    row.slack = cmd.slack_used;
    row.clamped = cmd.clamped;
    row.mode = cmd.mode == CommandMode::reacting ? kModeReacting
               : cmd.mode == CommandMode::scaled ? kModeScaled
                                                 : kModeNominal;

    state.q += cmd.q_dot * kDt;
    prev_ee = ee;
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

namespace {

void put(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out += buf;
  out += ',';
}

void put(std::string& out, int v) {
  out += std::to_string(v);
  out += ',';
}

void put3(std::string& out, const Eigen::Vector3d& v) {
  put(out, v[0]);
  put(out, v[1]);
  put(out, v[2]);
}

const char* mode_name(int mode) {
  switch (mode) {
    case kModeScaled: return "scaled";
    case kModeReacting: return "reacting";
    default: return "nominal";
  }
}

}  // namespace

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace output: " + path);

  std::string line = "t,";
  for (int i = 0; i < trace.n; ++i) line += "q" + std::to_string(i) + ",";
  for (int i = 0; i < trace.n; ++i) line += "qd" + std::to_string(i) + ",";
  line +=
      "ee_x,ee_y,ee_z,task_x,task_y,task_z,scaled_x,scaled_y,scaled_z,"
      "scale_factor,n_constraints,n_gated,d_lowest,body_dist,"
      "sensor_id,d_obs,h_x,h_y,h_z,"
      "Fraw_x,Fraw_y,Fraw_z,Fapp_x,Fapp_y,Fapp_z,mu_x,mu_y,mu_z,"
      "sigma_x,sigma_y,sigma_z,Tu_x,Tu_y,Tu_z,Tl_x,Tl_y,Tl_z,"
      "window_full,contact,Fext_x,Fext_y,Fext_z,react_x,react_y,react_z,"
      "mode,slack,clamped\n";
  out << line;

  for (const auto& r : trace.rows) {
    line.clear();
    put(line, r.t);
    for (int i = 0; i < trace.n; ++i) put(line, r.q[i]);
    for (int i = 0; i < trace.n; ++i) put(line, r.qd_cmd[i]);
    put3(line, r.ee);
    put3(line, r.task_xd);
    put3(line, r.scaled_task);
    put(line, r.scale_factor);
    put(line, r.n_constraints);
    put(line, r.n_gated);
    put(line, r.d_lowest);
    put(line, r.body_dist);
    put(line, r.sensor_id);
    put(line, r.d_obs);
    put3(line, r.h);
    put3(line, r.F_raw);
    put3(line, r.F_app);
    put3(line, r.mu);
    put3(line, r.sigma);
    put3(line, r.T_u);
    put3(line, r.T_l);
    put(line, r.window_full ? 1 : 0);
    put(line, r.contact ? 1 : 0);
    put3(line, r.F_ext);
    put3(line, r.reaction);
    line += mode_name(r.mode);
    line += ',';
    put(line, r.slack ? 1 : 0);
    line += r.clamped ? "1" : "0";
    line += '\n';
    out << line;
  }
}

void write_trace_meta(const Trace& trace, const std::string& path) {
  nlohmann::json j;
  j["scenario"] = trace.scenario_name;
  j["model"] = trace.model_name;
  j["joints"] = trace.n;
  j["seed"] = trace.seed;
  j["rows"] = trace.rows.size();
  j["control_rate_hz"] = 1.0 / kDt;
  j["sensor_rate_hz"] = 1.0 / (kDt * kSensorDivisor);
  j["toggles"] = {{"proximity_informed", trace.toggles.proximity_informed},
                  {"restrictions", trace.toggles.restrictions}};
  j["params"] = trace.params;
#ifdef PACT_VERSION
  j["version"] = PACT_VERSION;
#endif
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open metadata output: " + path);
  out << j.dump(2) << "\n";
}

TraceSummary summarize(const Trace& trace) {
  TraceSummary s;
  s.min_body_distance = -1.0;
  bool in_interval = false;
  for (const auto& r : trace.rows) {
    if (r.body_dist >= 0.0 &&
        (s.min_body_distance < 0.0 || r.body_dist < s.min_body_distance))
      s.min_body_distance = r.body_dist;
    if (r.contact) {
      ++s.contact_events;
      in_interval = true;
    }
    if (in_interval) {
      s.peak_contact_force = std::max(s.peak_contact_force, r.F_raw.norm());
      if (r.mode != kModeReacting && !r.contact) in_interval = false;
    }
    if (r.slack) ++s.slack_events;
  }
  return s;
}

}  // namespace pact
