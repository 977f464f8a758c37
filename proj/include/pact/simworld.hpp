#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pact/contact.hpp"
#include "pact/controller.hpp"
#include "pact/params.hpp"
#include "pact/scenario.hpp"

namespace pact {

inline constexpr double kDt = 0.01;       // control period, s (100 Hz)
inline constexpr int kSensorDivisor = 2;  // sense every 2nd cycle (50 Hz)

enum TraceMode { kModeNominal = 0, kModeScaled = 1, kModeReacting = 2 };

// One control cycle of the merged controller/sensing/contact state.
struct TraceRow {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd qd_cmd;
  Eigen::Vector3d ee = Eigen::Vector3d::Zero();
  Eigen::Vector3d task_xd = Eigen::Vector3d::Zero();
  Eigen::Vector3d scaled_task = Eigen::Vector3d::Zero();
  double scale_factor = 1.0;
  int n_constraints = 0;
  int n_gated = 0;
  double d_lowest = -1.0;   // gated EE-obstacle distance; -1 when none
  double body_dist = -1.0;  // true min body-scene distance; -1 when no scene
  int sensor_id = -1;       // unit with the smallest unsaturated reading
  double d_obs = kSensorMaxRange;
  Eigen::Vector3d h = Eigen::Vector3d::Zero();
  Eigen::Vector3d F_raw = Eigen::Vector3d::Zero();
  Eigen::Vector3d F_app = Eigen::Vector3d::Zero();
  Eigen::Vector3d mu = Eigen::Vector3d::Zero();
  Eigen::Vector3d sigma = Eigen::Vector3d::Zero();
  Eigen::Vector3d T_u = Eigen::Vector3d::Zero();
  Eigen::Vector3d T_l = Eigen::Vector3d::Zero();
  bool window_full = false;
  bool contact = false;  // detection fired this cycle
  Eigen::Vector3d F_ext = Eigen::Vector3d::Zero();  // of the active event
  Eigen::Vector3d reaction = Eigen::Vector3d::Zero();
  int mode = kModeNominal;
  bool slack = false;
  bool clamped = false;
};

struct Trace {
  std::string scenario_name;
  std::string model_name;
  int n = 0;
  uint64_t seed = 0;
  Toggles toggles;
  std::map<std::string, double> params;
  std::vector<TraceRow> rows;
};

struct RunOptions {
  std::optional<uint64_t> seed;
  bool no_proximity = false;
  bool no_restrictions = false;
  std::map<std::string, double> overrides;  // applied after scenario params
};

// Synthetic external EE force: penetration spring against the scene plus
// scripted pulses plus zero-mean Gaussian noise whose std grows with the EE
// speed. Always draws exactly three normals so the stream stays aligned.
Eigen::Vector3d synth_external_force(const Eigen::Vector3d& ee,
                                     const Eigen::Vector3d& ee_vel,
                                     const SceneGeometry& scene,
                                     const std::vector<PushPulse>& pushes,
                                     double t, const PlantParams& plant,
                                     std::mt19937_64& rng);

Trace run_scenario(const Scenario& sc, const RunOptions& opt = {});

void write_trace_csv(const Trace& trace, const std::string& path);
void write_trace_meta(const Trace& trace, const std::string& path);

struct TraceSummary {
  double peak_contact_force = 0.0;  // max ||F_raw|| inside contact intervals
  double min_body_distance = -1.0;  // -1 when the scene was empty throughout
  int contact_events = 0;
  int slack_events = 0;
};

// Contact interval: from each detection row through the end of its reaction.
TraceSummary summarize(const Trace& trace);

}  // namespace pact
