#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "pact/sensing.hpp"

namespace pact {

// Sliding window over one force axis with outlier-weighted appends: once the
// window is full, a sample further than lambda*sigma from the running mean
// is blended as alpha*x_raw + (1-alpha)*previous_appended before insertion.
// Mean and standard deviation are recomputed from the buffer every push.
class SignalWindow {
 public:
  SignalWindow(int capacity, double alpha, double lambda);

  double push(double x_raw);  // returns the value actually appended
  double mean() const { return mean_; }
  double stddev() const { return std_; }
  bool full() const { return count_ == capacity_; }
  double last_appended() const { return last_; }
  int capacity() const { return capacity_; }

  // Floor on sigma inside the outlier gate so a perfectly constant history
  // cannot lock every future sample out.
  static constexpr double kSigmaFloor = 0.05;

 private:
  void recompute();

  std::vector<double> buf_;
  int capacity_;
  int head_ = 0;
  int count_ = 0;
  double alpha_;
  double lambda_;
  double mean_ = 0.0;
  double std_ = 0.0;
  double last_ = 0.0;
};

// Independent windows for the three Cartesian force axes.
class ForceWindow {
 public:
  ForceWindow(int capacity, double alpha, double lambda);

  Eigen::Vector3d push(const Eigen::Vector3d& raw);
  Eigen::Vector3d mean() const;
  Eigen::Vector3d stddev() const;
  bool full() const;
  const SignalWindow& axis(int i) const { return ax_[i]; }

 private:
  std::array<SignalWindow, 3> ax_;
};

struct ThresholdParams {
  double F_b = 10.0;      // base band half-width, N
  double F_std = 3.0;     // max noise-driven widening, N
  double sigma_max = 3.0; // sigma that saturates the widening, N
  double F_d = 4.0;       // max proximity-driven tightening, N
  double d_max = 0.8;     // tightening onset distance, m
  double d_min = 0.05;    // distance of full tightening, m
};

// Band widening from signal noise, clamped at F_std.
double f_sigma(double sigma, const ThresholdParams& p);

// Band tightening from obstacle proximity, linear in d over [d_min, d_max].
double f_obs(double d, const ThresholdParams& p);

// Nearest obstacle distance (3D, to the EE) per axis and side: `above`
// holds obstacles whose coordinate on that axis exceeds the EE's.
struct AxisProximity {
  std::array<std::optional<double>, 3> above;
  std::array<std::optional<double>, 3> below;
};

AxisProximity split_by_axis(const std::vector<ObstacleEstimate>& estimates,
                            const Eigen::Vector3d& ee_position);

struct ThresholdBand {
  Eigen::Vector3d upper;
  Eigen::Vector3d lower;
};

// Per-axis contact band around the window mean. An obstacle below an axis
// tightens the upper threshold (it can only push the EE toward +), one
// above tightens the lower threshold.
ThresholdBand thresholds(const Eigen::Vector3d& mu, const Eigen::Vector3d& sigma,
                         const ThresholdParams& p, const AxisProximity& prox);

struct ContactEvent {
  std::array<int, 3> axes{};  // per axis: +1 upper breach, -1 lower, 0 none
  Eigen::Vector3d F_ext = Eigen::Vector3d::Zero();  // reading - window mean
  double stamp = 0.0;
};

std::optional<ContactEvent> detect(const Eigen::Vector3d& reading,
                                   const ThresholdBand& band,
                                   const Eigen::Vector3d& mu, double stamp);

// Compliance reaction to a contact: starts at x_dot_des = C * F_ext and
// ramps linearly to an exact zero over l_max cycles.
class ReactionState {
 public:
  ReactionState() = default;
  ReactionState(const Eigen::Matrix3d& C, const Eigen::Vector3d& F_ext,
                int l_max);

  // Returns x_dot_des * (1 - l/l_max) and advances l. The terminal call
  // returns exactly zero and marks the reaction finished.
  Eigen::Vector3d step_decay();
  bool finished() const { return finished_; }
  const Eigen::Vector3d& x_dot_des() const { return xd_; }

 private:
  Eigen::Vector3d xd_ = Eigen::Vector3d::Zero();
  int l_ = 0;
  int l_max_ = 0;
  bool finished_ = true;
};

ReactionState reaction(const ContactEvent& event, const Eigen::Matrix3d& C,
                       int l_max);

}  // namespace pact
