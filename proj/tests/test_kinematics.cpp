#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pact/kinematics.hpp"

using namespace pact;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

const std::string kModelDir = std::string(PACT_DATA_DIR) + "/models/";

VectorXd random_config(const RobotModel& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VectorXd q(m.n());
  for (int i = 0; i < m.n(); ++i)
    q[i] = m.limit_lo[i] + u(rng) * (m.limit_hi[i] - m.limit_lo[i]);
  return q;
}

Eigen::MatrixXd fd_jacobian(const RobotModel& m, const VectorXd& q) {
  const double h = 1e-6;
  Eigen::MatrixXd J(3, m.n());
  for (int j = 0; j < m.n(); ++j) {
    VectorXd qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    J.col(j) = (forward_kinematics(m, qp).ee.translation() -
                forward_kinematics(m, qm).ee.translation()) /
               (2.0 * h);
  }
  return J;
}

}  // namespace

TEST_CASE("planar two-link FK matches the analytic chain") {
  const RobotModel m = load_robot_model(kModelDir + "planar_2link.json");
  REQUIRE(m.n() == 2);
  std::mt19937 rng(4);
  for (int it = 0; it < 200; ++it) {
    const VectorXd q = random_config(m, rng);
    const Vector3d ee = forward_kinematics(m, q).ee.translation();
    const Vector3d ref(std::cos(q[0]) + std::cos(q[0] + q[1]),
                       std::sin(q[0]) + std::sin(q[0] + q[1]), 0.0);
    CHECK((ee - ref).norm() < 1e-12);
  }
}

TEST_CASE("seven-dof FK reference poses") {
  const RobotModel m = load_robot_model(kModelDir + "redundant_7dof.json");
  REQUIRE(m.n() == 7);

  const Vector3d home = forward_kinematics(m, VectorXd::Zero(7)).ee.translation();
  CHECK((home - Vector3d(0.0, 0.0, 1.2)).norm() < 1e-12);

  VectorXd q(7);
  q << 0.3, -0.4, 0.5, -0.6, 0.2, 0.4, -0.3;
  const Vector3d ee = forward_kinematics(m, q).ee.translation();
  const Vector3d ref(-0.08747539061625716, 0.13376668594216595,
                     1.1266412704261166);
  CHECK((ee - ref).norm() < 1e-9);
}

TEST_CASE("EE jacobian agrees with central differences") {
  std::mt19937 rng(7);
  for (const char* name : {"planar_2link.json", "redundant_7dof.json"}) {
    const RobotModel m = load_robot_model(kModelDir + name);
    for (int it = 0; it < 50; ++it) {
      const VectorXd q = random_config(m, rng);
      const Eigen::MatrixXd J = ee_jacobian(m, q);
      CHECK((J - fd_jacobian(m, q)).lpNorm<Eigen::Infinity>() < 1e-6);
    }
  }
}

TEST_CASE("planar jacobian analytic form") {
  const RobotModel m = load_robot_model(kModelDir + "planar_2link.json");
  VectorXd q(2);
  q << 0.7, -1.1;
  const Eigen::MatrixXd J = ee_jacobian(m, q);
  const double s1 = std::sin(q[0]), c1 = std::cos(q[0]);
  const double s12 = std::sin(q[0] + q[1]), c12 = std::cos(q[0] + q[1]);
  Eigen::MatrixXd ref(3, 2);
  ref << -s1 - s12, -s12, c1 + c12, c12, 0, 0;
  CHECK((J - ref).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("body point jacobian zeroes distal columns") {
  const RobotModel m = load_robot_model(kModelDir + "redundant_7dof.json");
  std::mt19937 rng(11);
  const VectorXd q = random_config(m, rng);
  const FrameSet frames = forward_kinematics(m, q);
  const int link = 3;
  const Vector3d wp = frames.joint[link].translation();
  const Eigen::MatrixXd J = point_jacobian(m, frames, link, wp);
  for (int j = link + 1; j < m.n(); ++j)
    CHECK(J.col(j).norm() == 0.0);

  // finite-difference the same attached point
  const double h = 1e-6;
  for (int j = 0; j <= link; ++j) {
    VectorXd qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    const Vector3d fd = (forward_kinematics(m, qp).joint[link].translation() -
                         forward_kinematics(m, qm).joint[link].translation()) /
                        (2.0 * h);
    CHECK((J.col(j) - fd).norm() < 1e-6);
  }
}

TEST_CASE("full jacobian angular block matches rotation derivative") {
  const RobotModel m = load_robot_model(kModelDir + "redundant_7dof.json");
  std::mt19937 rng(13);
  const VectorXd q = random_config(m, rng);
  const Eigen::MatrixXd J = ee_jacobian_full(m, forward_kinematics(m, q));
  REQUIRE(J.rows() == 6);
  const double h = 1e-6;
  for (int j = 0; j < m.n(); ++j) {
    VectorXd qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    const Eigen::Matrix3d Rp = forward_kinematics(m, qp).ee.linear();
    const Eigen::Matrix3d Rm = forward_kinematics(m, qm).ee.linear();
    const Eigen::Matrix3d R = forward_kinematics(m, q).ee.linear();
    const Eigen::Matrix3d omega_hat = ((Rp - Rm) / (2.0 * h)) * R.transpose();
    const Vector3d w(omega_hat(2, 1), omega_hat(0, 2), omega_hat(1, 0));
    CHECK((J.block<3, 1>(3, j) - w).norm() < 1e-6);
  }
}

TEST_CASE("closest body point against a surface-sampling oracle") {
  const RobotModel m = load_robot_model(kModelDir + "redundant_7dof.json");
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int it = 0; it < 100; ++it) {
    const VectorXd q = random_config(m, rng);
    const FrameSet frames = forward_kinematics(m, q);
    const Vector3d p(u(rng), u(rng), 0.3 + u(rng));

    const BodyPoint bp = closest_point_on_robot(m, frames, p);
    if (bp.degenerate) continue;

    // Oracle: dense sampling along every capsule axis.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& link : m.links) {
      const Eigen::Isometry3d& T = frames.joint[link.joint];
      const Vector3d a = T * link.shape.p0;
      const Vector3d b = T * link.shape.p1;
      for (int s = 0; s <= 400; ++s) {
        const Vector3d c = a + (b - a) * (s / 400.0);
        best = std::min(best, (p - c).norm() - link.shape.radius);
      }
    }
    CHECK(bp.distance == doctest::Approx(best).epsilon(1e-5));
    CHECK(bp.distance <= best + 1e-12);  // sampling can only overestimate

    // reported point sits on the capsule surface along the query direction
    CHECK((p - bp.world_point).norm() == doctest::Approx(bp.distance));
    CHECK((bp.world_point + bp.distance * bp.direction - p).norm() < 1e-9);
    CHECK(bp.direction.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("closest body point degenerates inside a capsule") {
  const RobotModel m = load_robot_model(kModelDir + "planar_2link.json");
  const FrameSet frames = forward_kinematics(m, VectorXd::Zero(2));
  // query on the first link axis
  const BodyPoint bp = closest_point_on_robot(m, frames, Vector3d(0.5, 0, 0));
  CHECK(bp.degenerate);
  CHECK(bp.distance == 0.0);
  CHECK(bp.direction == Vector3d::Zero());
  CHECK(bp.link_index == 0);
}

TEST_CASE("body-scene distance: sphere exact, box sampled") {
  const RobotModel m = load_robot_model(kModelDir + "planar_2link.json");
  const FrameSet frames = forward_kinematics(m, VectorXd::Zero(2));
  // arm lies along x in [0, 2] with radius 0.05

  SceneGeometry scene;
  CHECK(min_body_scene_distance(m, frames, scene) ==
        std::numeric_limits<double>::infinity());

  scene.spheres.push_back({Vector3d(1.0, 0.5, 0.0), 0.1});
  CHECK(min_body_scene_distance(m, frames, scene) ==
        doctest::Approx(0.5 - 0.1 - 0.05).epsilon(1e-12));

  // face-parallel box: every axis sample sees the same distance, so the
  // sampled evaluation is exact here
  SceneGeometry boxes;
  boxes.boxes.push_back({Vector3d(-1, -2, -1), Vector3d(3, -0.8, 1)});
  CHECK(min_body_scene_distance(m, frames, boxes) ==
        doctest::Approx(0.8 - 0.05).epsilon(1e-12));

  // overlapping sphere clamps at zero
  scene.spheres.push_back({Vector3d(2.0, 0.0, 0.0), 0.2});
  CHECK(min_body_scene_distance(m, frames, scene) == 0.0);
}
