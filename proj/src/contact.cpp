#include "pact/contact.hpp"

#include <cmath>
#include <stdexcept>

namespace pact {

SignalWindow::SignalWindow(int capacity, double alpha, double lambda)
    : capacity_(capacity), alpha_(alpha), lambda_(lambda) {
  if (capacity < 1) throw std::invalid_argument("SignalWindow: capacity");
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("SignalWindow: alpha");
  if (lambda <= 0.0) throw std::invalid_argument("SignalWindow: lambda");
  buf_.resize(capacity);
}

double SignalWindow::push(double x_raw) {
  double appended = x_raw;
  if (full()) {
    const double gate = lambda_ * std::max(std_, kSigmaFloor);
    if (std::abs(x_raw - mean_) > gate)
      appended = alpha_ * x_raw + (1.0 - alpha_) * last_;
  }
  buf_[head_] = appended;
  head_ = (head_ + 1) % capacity_;
  if (count_ < capacity_) ++count_;
  last_ = appended;
  recompute();
  return appended;
}

void SignalWindow::recompute() {
  double sum = 0.0;
  for (int i = 0; i < count_; ++i) sum += buf_[i];
  mean_ = sum / count_;
  double acc = 0.0;
  for (int i = 0; i < count_; ++i) {
    const double d = buf_[i] - mean_;
    acc += d * d;
  }
  std_ = std::sqrt(acc / count_);
}

ForceWindow::ForceWindow(int capacity, double alpha, double lambda)
    : ax_{SignalWindow(capacity, alpha, lambda),
          SignalWindow(capacity, alpha, lambda),
          SignalWindow(capacity, alpha, lambda)} {}

Eigen::Vector3d ForceWindow::push(const Eigen::Vector3d& raw) {
  return {ax_[0].push(raw[0]), ax_[1].push(raw[1]), ax_[2].push(raw[2])};
}

Eigen::Vector3d ForceWindow::mean() const {
  return {ax_[0].mean(), ax_[1].mean(), ax_[2].mean()};
}

Eigen::Vector3d ForceWindow::stddev() const {
  return {ax_[0].stddev(), ax_[1].stddev(), ax_[2].stddev()};
}

bool ForceWindow::full() const {
  return ax_[0].full() && ax_[1].full() && ax_[2].full();
}

double f_sigma(double sigma, const ThresholdParams& p) {
  if (sigma < 0.0) throw std::invalid_argument("f_sigma: negative sigma");
  return std::min(sigma / p.sigma_max * p.F_std, p.F_std);
}

double f_obs(double d, const ThresholdParams& p) {
  const double dc = std::clamp(d, p.d_min, p.d_max);
  return (p.d_max - dc) / (p.d_max - p.d_min) * p.F_d;
}

AxisProximity split_by_axis(const std::vector<ObstacleEstimate>& estimates,
                            const Eigen::Vector3d& ee_position) {
  AxisProximity prox;
  for (const auto& e : estimates) {
    const double d = (e.h - ee_position).norm();
    for (int a = 0; a < 3; ++a) {
      if (e.h[a] > ee_position[a]) {
        if (!prox.above[a] || d < *prox.above[a]) prox.above[a] = d;
      } else if (e.h[a] < ee_position[a]) {
        if (!prox.below[a] || d < *prox.below[a]) prox.below[a] = d;
      }
    }
  }
  return prox;
}

ThresholdBand thresholds(const Eigen::Vector3d& mu, const Eigen::Vector3d& sigma,
                         const ThresholdParams& p, const AxisProximity& prox) {
  ThresholdBand band;
  for (int a = 0; a < 3; ++a) {
    const double fs = f_sigma(sigma[a], p);
    const double f_above = prox.above[a] ? f_obs(*prox.above[a], p) : 0.0;
    const double f_below = prox.below[a] ? f_obs(*prox.below[a], p) : 0.0;
    band.upper[a] = mu[a] + p.F_b + fs - f_below;
    band.lower[a] = mu[a] - p.F_b - fs + f_above;
  }
  return band;
}

std::optional<ContactEvent> detect(const Eigen::Vector3d& reading,
                                   const ThresholdBand& band,
                                   const Eigen::Vector3d& mu, double stamp) {
  ContactEvent ev;
  bool any = false;
  for (int a = 0; a < 3; ++a) {
    if (reading[a] > band.upper[a]) {
      ev.axes[a] = 1;
      any = true;
    } else if (reading[a] < band.lower[a]) {
      ev.axes[a] = -1;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  ev.F_ext = reading - mu;
  ev.stamp = stamp;
  return ev;
}

ReactionState::ReactionState(const Eigen::Matrix3d& C,
                             const Eigen::Vector3d& F_ext, int l_max)
    : xd_(C * F_ext), l_max_(l_max), finished_(false) {
  if (l_max < 1) throw std::invalid_argument("ReactionState: l_max");
}

Eigen::Vector3d ReactionState::step_decay() {
  if (finished_) return Eigen::Vector3d::Zero();
  if (l_ >= l_max_) {
    finished_ = true;
    return Eigen::Vector3d::Zero();  // exact terminus
  }
  const Eigen::Vector3d v = xd_ * (1.0 - static_cast<double>(l_) / l_max_);
  ++l_;
  return v;
}

ReactionState reaction(const ContactEvent& event, const Eigen::Matrix3d& C,
                       int l_max) {
  return ReactionState(C, event.F_ext, l_max);
}

}  // namespace pact
