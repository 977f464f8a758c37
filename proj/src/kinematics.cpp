#include "pact/kinematics.hpp"

#include <stdexcept>

namespace pact {

FrameSet forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  const int n = model.n();
  if (q.size() != n) throw std::invalid_argument("forward_kinematics: q size");
  FrameSet out;
  out.joint.reserve(n);
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  for (int i = 0; i < n; ++i) {
    T = T * model.joints[i].fixed;
    T.linear() = T.linear() *
                 Eigen::AngleAxisd(q[i], model.joints[i].axis).toRotationMatrix();
    out.joint.push_back(T);
  }
  out.ee = T * model.ee_fixed;
  return out;
}

Eigen::MatrixXd point_jacobian(const RobotModel& model, const FrameSet& frames,
                               int link, const Eigen::Vector3d& world_point) {
  const int n = model.n();
  if (link < 0 || link >= n) throw std::invalid_argument("point_jacobian: link");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3, n);
  for (int j = 0; j <= link; ++j) {
    const Eigen::Vector3d axis = frames.joint[j].linear() * model.joints[j].axis;
    J.col(j) = axis.cross(world_point - frames.joint[j].translation());
  }
  return J;
}

Eigen::MatrixXd ee_jacobian(const RobotModel& model, const FrameSet& frames) {
  return point_jacobian(model, frames, model.n() - 1, frames.ee.translation());
}

Eigen::MatrixXd ee_jacobian_full(const RobotModel& model,
                                 const FrameSet& frames) {
  const int n = model.n();
  Eigen::MatrixXd J(6, n);
  J.topRows(3) = ee_jacobian(model, frames);
  for (int j = 0; j < n; ++j)
    J.block<3, 1>(3, j) = frames.joint[j].linear() * model.joints[j].axis;
  return J;
}

BodyPoint closest_point_on_robot(const RobotModel& model,
                                 const FrameSet& frames,
                                 const Eigen::Vector3d& obstacle) {
  BodyPoint best;
  best.distance = std::numeric_limits<double>::infinity();
  for (const auto& lc : model.links) {
    const Eigen::Isometry3d& T = frames.joint[lc.joint];
    const Eigen::Vector3d a = T * lc.shape.p0;
    const Eigen::Vector3d b = T * lc.shape.p1;
    const Eigen::Vector3d axis_pt = closest_point_on_segment(a, b, obstacle);
    const double axis_dist = (obstacle - axis_pt).norm();
    const double dist = std::max(0.0, axis_dist - lc.shape.radius);
    if (dist < best.distance) {  // strict: tie keeps the lower link index
      best.distance = dist;
      best.link_index = lc.joint;
      if (axis_dist > 1e-12) {
        const Eigen::Vector3d dir = (obstacle - axis_pt) / axis_dist;
        best.world_point = axis_pt + lc.shape.radius * dir;
        best.degenerate = axis_dist <= lc.shape.radius;
        best.direction = best.degenerate ? Eigen::Vector3d::Zero().eval() : dir;
      } else {
        // Query on the capsule axis: no usable direction.
        best.world_point = axis_pt;
        best.direction = Eigen::Vector3d::Zero();
        best.degenerate = true;
      }
      best.local_point = T.inverse() * best.world_point;
    }
  }
  if (!std::isfinite(best.distance))
    throw std::runtime_error("closest_point_on_robot: model has no capsules");
  return best;
}

Eigen::MatrixXd ee_jacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  return ee_jacobian(model, forward_kinematics(model, q));
}

BodyPoint closest_point_on_robot(const RobotModel& model,
                                 const Eigen::VectorXd& q,
                                 const Eigen::Vector3d& obstacle) {
  return closest_point_on_robot(model, forward_kinematics(model, q), obstacle);
}

double min_body_scene_distance(const RobotModel& model, const FrameSet& frames,
                               const SceneGeometry& scene) {
  double best = std::numeric_limits<double>::infinity();
  constexpr int kBoxSamples = 33;
  for (const auto& lc : model.links) {
    const Eigen::Isometry3d& T = frames.joint[lc.joint];
    const Eigen::Vector3d a = T * lc.shape.p0;
    const Eigen::Vector3d b = T * lc.shape.p1;
    for (const auto& s : scene.spheres) {
      const Eigen::Vector3d p = closest_point_on_segment(a, b, s.center);
      best = std::min(best,
                      (s.center - p).norm() - lc.shape.radius - s.radius);
    }
    for (const auto& box : scene.boxes) {
      for (int i = 0; i < kBoxSamples; ++i) {
        const double t = static_cast<double>(i) / (kBoxSamples - 1);
        const Eigen::Vector3d p = a + t * (b - a);
        best = std::min(best, point_box_distance(p, box) - lc.shape.radius);
      }
    }
  }
  return std::max(0.0, best);
}

}  // namespace pact
