#include "pact/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pact {

double velocity_scale(double d_lowest, double d_max) {
  if (d_lowest < 0.0 || d_lowest > d_max)
    throw std::invalid_argument("velocity_scale: d_lowest outside [0, d_max]");
  return d_lowest / d_max;
}

double recovery_factor(double scale, int l_obs, int l_max) {
  if (l_obs < 0 || l_obs > l_max)
    throw std::invalid_argument("recovery_factor: l_obs outside [0, l_max]");
  if (l_obs >= l_max) return 1.0;  // exact terminus, no rounding residue
  return scale + (1.0 - scale) * static_cast<double>(l_obs) / l_max;
}

namespace {

inline double sigmoid_velocity(double V_max, double beta, double u) {
  return V_max / (1.0 + std::exp(beta * (2.0 * u - 1.0)));
}

}  // namespace

std::optional<double> approach_limit(double d, const ControllerGains& gains) {
  if (d < 0.0) throw std::invalid_argument("approach_limit: negative distance");
  if (d < gains.d_repulse) {
    // Inside the repulsion band the bound goes negative: back away at up to
    // V_max, easing off as d approaches d_crit.
    const double v_a = sigmoid_velocity(gains.V_max, gains.beta, d / gains.d_crit);
    return v_a - gains.V_max;
  }
  if (d < gains.d_notice) {
    const double u = (d - gains.d_crit) / (gains.d_notice - gains.d_crit);
    return sigmoid_velocity(gains.V_max, gains.beta, u);
  }
  return std::nullopt;  // far away: drop the restriction
}

Eigen::VectorXd mid_joint_velocity(const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& limit_lo,
                                   const Eigen::VectorXd& limit_hi,
                                   double t_mid) {
  return (0.5 * (limit_lo + limit_hi) - q) / t_mid;
}

std::vector<Restriction> build_restrictions(
    const RobotModel& model, const FrameSet& frames,
    const std::vector<ObstacleEstimate>& gated, const ControllerGains& gains,
    std::vector<Eigen::Vector3d>& last_dirs) {
  if (last_dirs.size() != static_cast<size_t>(model.n()))
    last_dirs.assign(model.n(), Eigen::Vector3d::Zero());

  std::vector<Restriction> rows;
  for (const auto& est : gated) {
    const BodyPoint bp = closest_point_on_robot(model, frames, est.h);
    Eigen::Vector3d dir = bp.direction;
    if (bp.degenerate) {
      dir = last_dirs[bp.link_index];  // touching: reuse the last known side
      if (dir.squaredNorm() < 1e-12) continue;
    } else {
      last_dirs[bp.link_index] = dir;
    }
    const auto bound = approach_limit(bp.distance, gains);
    if (!bound) continue;
    Restriction r;
    r.row = dir.transpose() *
            point_jacobian(model, frames, bp.link_index, bp.world_point);
    r.bound = *bound;
    r.distance = bp.distance;
    r.link_index = bp.link_index;
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Restriction& a, const Restriction& b) {
                     return a.distance < b.distance;
                   });
  if (static_cast<int>(rows.size()) > gains.max_constraints)
    rows.resize(gains.max_constraints);
  return rows;
}

Controller::Controller(const RobotModel& model, const ControllerGains& gains)
    : model_(model), gains_(gains) {
  last_dirs_.assign(model.n(), Eigen::Vector3d::Zero());
}

double Controller::on_cycle(std::optional<double> d_lowest) {
  if (d_lowest) {
    recovery_.scale =
        velocity_scale(std::min(*d_lowest, gains_.d_max), gains_.d_max);
    recovery_.l_obs = 0;
    recovery_.active = false;
    recovery_.had_obstacle = true;
    return recovery_.scale;
  }
  if (recovery_.had_obstacle) {
    recovery_.active = true;
    const double f =
        recovery_factor(recovery_.scale, recovery_.l_obs, gains_.l_max);
    if (recovery_.l_obs >= gains_.l_max) {
      recovery_ = RecoveryState{};  // fully recovered
    } else {
      ++recovery_.l_obs;
    }
    return f;
  }
  return 1.0;
}

ControlCommand Controller::compute_command(
    const JointState& state, const Eigen::Vector3d& task_xd,
    const std::vector<ObstacleEstimate>& gated, double factor,
    bool restrictions_enabled) {
  const int n = model_.n();
  if (state.q.size() != n)
    throw std::invalid_argument("compute_command: state size");

  const FrameSet frames = forward_kinematics(model_, state.q);
  const Eigen::MatrixXd J = ee_jacobian(model_, frames);

  const Eigen::Vector3d xd_scaled = factor * task_xd;

  const Eigen::VectorXd qd_mid =
      mid_joint_velocity(state.q, model_.limit_lo, model_.limit_hi, gains_.t_mid);

  QpProblem qp;
  qp.H = J.transpose() * J +
         (gains_.mu + gains_.k) * Eigen::MatrixXd::Identity(n, n);
  qp.g = -(J.transpose() * xd_scaled + gains_.k * qd_mid);

  std::vector<Restriction> rows;
  if (restrictions_enabled)
    rows = build_restrictions(model_, frames, gated, gains_, last_dirs_);
  qp.A.resize(rows.size(), n);
  qp.b.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    qp.A.row(i) = rows[i].row;
    qp.b[i] = rows[i].bound;
  }

  const QpSolution sol = qp_.solve(qp);

  ControlCommand cmd;
  cmd.q_dot = sol.x;
  for (int i = 0; i < n; ++i) {
    const double lim = model_.vel_limit[i];
    if (std::abs(cmd.q_dot[i]) > lim) {
      cmd.q_dot[i] = std::clamp(cmd.q_dot[i], -lim, lim);
      cmd.clamped = true;
    }
  }
  cmd.scaled_task = xd_scaled;
  cmd.scale_factor = factor;
  cmd.active_constraints = static_cast<int>(sol.active_set.size());
  cmd.slack_used = sol.slack_used;
  cmd.mode = (factor < 1.0 || !rows.empty()) ? CommandMode::scaled
                                             : CommandMode::nominal;
  return cmd;
}

}  // namespace pact
