#pragma once

#include <optional>
#include <vector>

#include "pact/kinematics.hpp"
#include "pact/qp_solver.hpp"
#include "pact/sensing.hpp"

namespace pact {

struct ControllerGains {
  double mu = 0.01;      // joint-velocity damping weight
  double k = 0.01;       // mid-joint attraction weight
  double t_mid = 2.0;    // horizon for the mid-joint velocities, s
  double d_max = 0.8;    // obstacle gating distance from the EE, m
  double d_min = 0.05;   // closest accounted obstacle distance, m
  int l_max = 200;       // recovery length, control cycles
  double V_max = 0.04;   // max repulsive / approach velocity, m/s
  double d_repulse = 0.1;
  double d_crit = 0.1;
  double d_notice = 0.6;
  double beta = -10.0;   // sigmoid steepness
  int max_constraints = 8;
};

// Velocity-recovery bookkeeping: l_obs counts control cycles since the gated
// obstacle set emptied; the scale captured at that moment ramps back to 1.
struct RecoveryState {
  double scale = 1.0;
  int l_obs = 0;
  bool active = false;      // ramping back up
  bool had_obstacle = false;
};

enum class CommandMode { nominal, scaled, reacting };

struct ControlCommand {
  Eigen::VectorXd q_dot;
  Eigen::Vector3d scaled_task = Eigen::Vector3d::Zero();  // ẋ_d actually used
  double scale_factor = 1.0;
  int active_constraints = 0;
  CommandMode mode = CommandMode::nominal;
  bool slack_used = false;
  bool clamped = false;  // joint velocity limits engaged
};

// Fraction of the task velocity allowed at EE-obstacle distance d_lowest.
double velocity_scale(double d_lowest, double d_max);

// Linear ramp from `scale` back to 1 over l_max cycles; exactly 1 at the end.
double recovery_factor(double scale, int l_obs, int l_max);

// Signed approach-velocity bound toward an obstacle at body distance d, or
// nullopt when the obstacle is far enough that no restriction applies.
std::optional<double> approach_limit(double d, const ControllerGains& gains);

// Joint velocities that would reach the middle of the joint range in t_mid.
Eigen::VectorXd mid_joint_velocity(const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& limit_lo,
                                   const Eigen::VectorXd& limit_hi,
                                   double t_mid);

// One movement restriction: approach velocity of the closest body point
// toward an obstacle, bounded above.
struct Restriction {
  Eigen::RowVectorXd row;  // d̂ᵀ J_c
  double bound;            // m/s
  double distance;         // body-obstacle distance used, m
  int link_index;
};

// Builds restriction rows for the gated estimates, nearest first, capped at
// gains.max_constraints. `last_dirs` supplies a fallback direction per link
// for degenerate (touching) closest-point queries and is updated in place.
std::vector<Restriction> build_restrictions(
    const RobotModel& model, const FrameSet& frames,
    const std::vector<ObstacleEstimate>& gated, const ControllerGains& gains,
    std::vector<Eigen::Vector3d>& last_dirs);

class Controller {
 public:
  Controller(const RobotModel& model, const ControllerGains& gains);

  // Advances the scale/recovery state machine with this cycle's gated
  // EE-obstacle distance and returns the factor to apply to the task.
  // Call exactly once per control cycle.
  double on_cycle(std::optional<double> d_lowest);

  // Solves the per-cycle QP. `factor` multiplies task_xd (pass 1.0 while a
  // contact reaction overrides the task: reactions are never slowed down).
  ControlCommand compute_command(const JointState& state,
                                 const Eigen::Vector3d& task_xd,
                                 const std::vector<ObstacleEstimate>& gated,
                                 double factor = 1.0,
                                 bool restrictions_enabled = true);

  const RecoveryState& recovery() const { return recovery_; }
  const ControllerGains& gains() const { return gains_; }

 private:
  const RobotModel& model_;
  ControllerGains gains_;
  RecoveryState recovery_;
  QpSolver qp_;
  std::vector<Eigen::Vector3d> last_dirs_;
};

}  // namespace pact
