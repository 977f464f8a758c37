#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pact/contact.hpp"

using Eigen::Matrix3d;
using Eigen::Vector3d;
using namespace pact;

TEST_CASE("signal window statistics") {
  SignalWindow w(5, 0.1, 0.75);
  CHECK(!w.full());
  for (double x : {1.0, 2.0, 3.0, 4.0, 5.0}) CHECK(w.push(x) == x);
  CHECK(w.full());
  CHECK(w.mean() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(w.stddev() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  SignalWindow partial(5, 0.1, 0.75);
  partial.push(2.0);
  partial.push(4.0);
  CHECK(!partial.full());
  CHECK(partial.mean() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(partial.stddev() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("outlier appends are blended, inliers pass through") {
  SignalWindow w(100, 0.1, 0.75);
  for (int i = 0; i < 100; ++i) w.push(0.0);
  REQUIRE(w.full());
  REQUIRE(w.stddev() == 0.0);

  // Sigma is zero, so the gate runs on the floor: 0.75 * 0.05 = 0.0375.
  SUBCASE("inside the gate the raw sample is appended") {
    CHECK(w.push(0.03) == 0.03);
  }
  SUBCASE("outside the gate the sample is pulled toward the last append") {
    CHECK(w.push(2.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(w.last_appended() == doctest::Approx(0.2).epsilon(1e-15));
    // The anchor is the last *appended* value, not the last raw sample, so a
    // sustained step walks in geometrically rather than jumping.
    CHECK(w.push(2.0) == doctest::Approx(0.1 * 2.0 + 0.9 * 0.2).epsilon(1e-12));
  }
}

TEST_CASE("a partially filled window never gates") {
  SignalWindow w(5, 0.1, 0.75);
  w.push(0.0);
  CHECK(w.push(100.0) == 100.0);
}

TEST_CASE("sigma floor keeps the gate open after a constant history") {
  SignalWindow w(10, 0.1, 0.75);
  for (int i = 0; i < 10; ++i) w.push(5.0);
  REQUIRE(w.stddev() == 0.0);
  CHECK(w.push(5.03) == 5.03);                                // within the floor gate
  CHECK(w.push(5.2) != 5.2);                                  // beyond it: blended
}

TEST_CASE("signal window constructor validation") {
  CHECK_THROWS_AS(SignalWindow(0, 0.1, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(SignalWindow(5, 0.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(SignalWindow(5, 1.5, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(SignalWindow(5, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SignalWindow(5, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("force window runs the three axes independently") {
  ForceWindow w(3, 0.1, 0.75);
  w.push(Vector3d(1.0, 10.0, 100.0));
  w.push(Vector3d(2.0, 20.0, 200.0));
  const Vector3d appended = w.push(Vector3d(3.0, 30.0, 300.0));
  CHECK(appended == Vector3d(3.0, 30.0, 300.0));
  CHECK(w.full());
  CHECK(w.mean() == Vector3d(2.0, 20.0, 200.0));
  CHECK(w.axis(0).stddev() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(w.axis(2).mean() == doctest::Approx(200.0).epsilon(1e-15));
}

TEST_CASE("noise widening is linear and saturates") {
  const ThresholdParams p;
  CHECK(f_sigma(0.0, p) == 0.0);
  CHECK(f_sigma(1.5, p) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(f_sigma(3.0, p) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f_sigma(4.0, p) == doctest::Approx(3.0).epsilon(1e-15));  // clamped
  CHECK_THROWS_AS(f_sigma(-0.1, p), std::invalid_argument);
}

TEST_CASE("proximity tightening is a clamped linear ramp") {
  const ThresholdParams p;
  CHECK(f_obs(0.425, p) == doctest::Approx(2.0).epsilon(1e-12));  // midpoint
  CHECK(f_obs(p.d_min, p) == doctest::Approx(p.F_d).epsilon(1e-15));
  CHECK(f_obs(0.01, p) == doctest::Approx(p.F_d).epsilon(1e-15));  // clamped low
  CHECK(f_obs(p.d_max, p) == 0.0);
  CHECK(f_obs(2.0, p) == 0.0);  // clamped high
}

TEST_CASE("axis split keeps the nearest obstacle per side") {
  const Vector3d ee(1.0, 1.0, 1.0);
  std::vector<ObstacleEstimate> est;
  est.push_back({Vector3d(2.0, 1.0, 0.0), 0, 1.0, 0.0});  // d = sqrt(2)
  est.push_back({Vector3d(0.5, 2.0, 1.0), 1, 1.0, 0.0});  // d = sqrt(1.25)
  est.push_back({Vector3d(3.0, 1.0, 1.0), 2, 1.0, 0.0});  // d = 2, also above x

  const AxisProximity prox = split_by_axis(est, ee);
  REQUIRE(prox.above[0]);
  CHECK(*prox.above[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(prox.below[0]);
  CHECK(*prox.below[0] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  REQUIRE(prox.above[1]);
  CHECK(*prox.above[1] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(!prox.below[1]);  // equal coordinates belong to neither side
  CHECK(!prox.above[2]);
  REQUIRE(prox.below[2]);
  CHECK(*prox.below[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("threshold band composition") {
  const ThresholdParams p;
  const Vector3d mu(1.0, -2.0, 0.0);
  const Vector3d sigma(0.0, 3.0, 1.5);
  AxisProximity prox;
  prox.above[1] = 0.05;   // fully tightens the lower threshold on y
  prox.below[2] = 0.425;  // tightens the upper threshold on z by 2 N

  const ThresholdBand band = thresholds(mu, sigma, p, prox);
  CHECK(band.upper[0] == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(band.lower[0] == doctest::Approx(-9.0).epsilon(1e-12));
  CHECK(band.upper[1] == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(band.lower[1] == doctest::Approx(-11.0).epsilon(1e-12));
  CHECK(band.upper[2] == doctest::Approx(9.5).epsilon(1e-12));
  CHECK(band.lower[2] == doctest::Approx(-11.5).epsilon(1e-12));
}

TEST_CASE("detection is strict and reports mean-relative force") {
  ThresholdBand band;
  band.upper = Vector3d(10.0, 10.0, 10.0);
  band.lower = Vector3d(-10.0, -10.0, -10.0);
  const Vector3d mu(0.5, 0.0, -0.5);

  CHECK(!detect(Vector3d(10.0, 0.0, 0.0), band, mu, 1.0));  // on the line: no
  CHECK(!detect(Vector3d(3.0, -9.9, 9.9), band, mu, 1.0));

  const auto up = detect(Vector3d(10.5, 0.0, 0.0), band, mu, 1.25);
  REQUIRE(up);
  CHECK(up->axes == std::array<int, 3>{1, 0, 0});
  CHECK(up->F_ext == Vector3d(10.0, 0.0, 0.5));
  CHECK(up->stamp == 1.25);

  const auto down = detect(Vector3d(0.0, -12.0, 11.0), band, mu, 2.0);
  REQUIRE(down);
  CHECK(down->axes == std::array<int, 3>{0, -1, 1});
  CHECK(down->F_ext == Vector3d(-0.5, -12.0, 11.5));
}

TEST_CASE("reaction decays linearly to an exact zero") {
  ContactEvent ev;
  ev.F_ext = Vector3d(0.0, 10.0, 0.0);
  const Matrix3d C = 0.01 * Matrix3d::Identity();

  ReactionState r = reaction(ev, C, 4);
  CHECK(!r.finished());
  CHECK(r.x_dot_des() == Vector3d(0.0, 0.1, 0.0));
  CHECK(r.step_decay() == Vector3d(0.0, 0.1, 0.0));
  CHECK((r.step_decay() - Vector3d(0.0, 0.075, 0.0)).norm() < 1e-15);
  CHECK((r.step_decay() - Vector3d(0.0, 0.05, 0.0)).norm() < 1e-15);
  CHECK((r.step_decay() - Vector3d(0.0, 0.025, 0.0)).norm() < 1e-15);
  CHECK(!r.finished());
  CHECK(r.step_decay() == Vector3d::Zero());  // terminal step, bitwise zero
  CHECK(r.finished());
  CHECK(r.step_decay() == Vector3d::Zero());  // stays zero afterwards

  CHECK_THROWS_AS(ReactionState(C, ev.F_ext, 0), std::invalid_argument);
}

TEST_CASE("default-constructed reaction is already finished") {
  ReactionState r;
  CHECK(r.finished());
  CHECK(r.step_decay() == Vector3d::Zero());
}
