#include "pact/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pact/contact.hpp"
#include "pact/controller.hpp"
#include "pact/kinematics.hpp"
#include "pact/qp_solver.hpp"
#include "pact/scenario.hpp"
#include "pact/simworld.hpp"

namespace pact {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.6g", v);
  return b;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double circle_distance(const Eigen::Vector3d& p, const CircleTask& c) {
  const double dx = p.x() - c.center.x();
  const double rho =
      std::hypot(p.y() - c.center.y(), p.z() - c.center.z());
  return std::hypot(dx, rho - c.radius);
}

// ---------------------------------------------------------------- 1
// Peak contact-interval force, proximity-informed vs uninformed, over ten
// seeds on both static-collision scenarios.
CriterionResult crit_force_ratio(const std::string& data_dir) {
  CriterionResult r{1, "force-reduction-ratio", true, ""};
  std::ostringstream detail;
  double max_run_s = 0.0;
  for (const char* name : {"static_wall_circle", "static_wall_line"}) {
    const Scenario sc = load_scenario(data_dir + "/scenarios/" + name + ".json");
    int ok = 0;
    double worst_ratio = 0.0;
    for (uint64_t seed = 1000; seed < 1010; ++seed) {
      RunOptions informed;
      informed.seed = seed;
      RunOptions blind = informed;
      blind.no_proximity = true;

      auto t0 = Clock::now();
      const TraceSummary si = summarize(run_scenario(sc, informed));
      max_run_s = std::max(max_run_s, seconds_since(t0));
      t0 = Clock::now();
      const TraceSummary sb = summarize(run_scenario(sc, blind));
      max_run_s = std::max(max_run_s, seconds_since(t0));

      if (sb.contact_events < 1) continue;  // baseline must collide
      const double ratio = si.peak_contact_force / sb.peak_contact_force;
      worst_ratio = std::max(worst_ratio, ratio);
      if (ratio <= 0.6) ++ok;
    }
    detail << name << ": " << ok << "/10 seeds, worst ratio "
           << fmt(worst_ratio) << "; ";
    if (ok < 9) r.pass = false;
  }
  detail << "max run " << fmt(max_run_s) << " s (limit 10)";
  if (max_run_s >= 10.0) r.pass = false;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------- 2
CriterionResult crit_thresholds() {
  CriterionResult r{2, "threshold-arithmetic", true, ""};
  const ThresholdParams p;
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  const double tol = 1e-9;

  const ThresholdBand quiet = thresholds(zero, zero, p, AxisProximity{});
  const ThresholdBand noisy =
      thresholds(zero, Eigen::Vector3d::Constant(3.0), p, AxisProximity{});
  AxisProximity prox;
  prox.above[1] = p.d_min;
  const ThresholdBand near = thresholds(zero, zero, p, prox);

  bool ok = true;
  for (int a = 0; a < 3; ++a) {
    ok = ok && std::abs(quiet.upper[a] - 10.0) < tol &&
         std::abs(quiet.lower[a] + 10.0) < tol;
    ok = ok && std::abs(noisy.upper[a] - 13.0) < tol &&
         std::abs(noisy.lower[a] + 13.0) < tol;
  }
  ok = ok && std::abs(near.lower[1] + 6.0) < tol &&
       std::abs(near.upper[1] - 10.0) < tol;
  r.pass = ok;
  r.detail = "quiet (" + fmt(quiet.lower[0]) + ", " + fmt(quiet.upper[0]) +
             "), noisy (" + fmt(noisy.lower[0]) + ", " + fmt(noisy.upper[0]) +
             "), +y near y-band (" + fmt(near.lower[1]) + ", " +
             fmt(near.upper[1]) + ")";
  return r;
}

// ---------------------------------------------------------------- 3
CriterionResult crit_approach_limit() {
  CriterionResult r{3, "approach-limit-sigmoid", true, ""};
  const ControllerGains g;
  const auto mid = approach_limit(0.35, g);
  const auto zero = approach_limit(0.0, g);
  const auto at_notice = approach_limit(0.6, g);
  const auto far = approach_limit(0.7, g);

  r.pass = mid && std::abs(*mid - 0.02) < 1e-5 && zero && *zero >= -0.04 &&
           *zero <= -0.0399 && !at_notice && !far;
  r.detail = "limit(0.35)=" + (mid ? fmt(*mid) : std::string("dropped")) +
             ", limit(0)=" + (zero ? fmt(*zero) : std::string("dropped")) +
             ", limit(0.6)=" + (at_notice ? fmt(*at_notice) : "dropped") +
             ", limit(0.7)=" + (far ? fmt(*far) : "dropped");
  return r;
}

// ---------------------------------------------------------------- 4
// Exhaustive KKT enumeration: for m <= 3 inequality rows every active
// subset can be checked directly, which is a complete oracle for a
// strictly convex QP. Solved with pivoted LU, a different path from the
// solver's Cholesky/Schur iterations.
struct OracleResult {
  bool found = false;
  double objective = 0.0;
};

OracleResult kkt_enumerate(const QpProblem& p) {
  const int n = static_cast<int>(p.H.rows());
  const int m = static_cast<int>(p.A.rows());
  OracleResult best;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> S;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) S.push_back(i);
    const int s = static_cast<int>(S.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + s, n + s);
    Eigen::VectorXd rhs(n + s);
    K.topLeftCorner(n, n) = p.H;
    rhs.head(n) = -p.g;
    for (int j = 0; j < s; ++j) {
      K.block(0, n + j, n, 1) = p.A.row(S[j]).transpose();
      K.block(n + j, 0, 1, n) = p.A.row(S[j]);
      rhs[n + j] = p.b[S[j]];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd x = sol.head(n);
    if (s > 0 && sol.tail(s).minCoeff() < -1e-9) continue;
    if (m > 0 && (p.A * x - p.b).maxCoeff() > 1e-9) continue;
    const double obj = 0.5 * x.dot(p.H * x) + p.g.dot(x);
    if (!best.found || obj < best.objective) {
      best.found = true;
      best.objective = obj;
    }
  }
  return best;
}

CriterionResult crit_qp_oracle() {
  CriterionResult r{4, "qp-kkt-oracle", true, ""};
  std::mt19937 rng(424242);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  double worst_gap = 0.0;
  double worst_unconstrained = 0.0;
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(uni(rng) * 7) % 7;
    const int m = (it % 4 == 0) ? 0 : 1 + static_cast<int>(uni(rng) * 3) % 3;

    QpProblem p;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = normal(rng);
    p.H = M.transpose() * M +
          (0.1 + uni(rng)) * Eigen::MatrixXd::Identity(n, n);
    p.g.resize(n);
    for (int i = 0; i < n; ++i) p.g[i] = normal(rng);
    p.A.resize(m, n);
    p.b.resize(m);
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0[i] = normal(rng);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) p.A(i, j) = normal(rng);
      p.b[i] = p.A.row(i).dot(x0) + std::abs(normal(rng));  // feasible by x0
    }

    const QpSolution sol = solve_qp(p);
    if (m == 0) {
      const Eigen::VectorXd direct = p.H.ldlt().solve(-p.g);
      worst_unconstrained = std::max(
          worst_unconstrained, (sol.x - direct).lpNorm<Eigen::Infinity>());
      if (worst_unconstrained > 1e-9) r.pass = false;
      continue;
    }
    const OracleResult oracle = kkt_enumerate(p);
    if (!oracle.found || sol.slack_used) {
      r.pass = false;
      continue;
    }
    const double obj = 0.5 * sol.x.dot(p.H * sol.x) + p.g.dot(sol.x);
    const double gap = std::abs(obj - oracle.objective);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-6 || (p.A * sol.x - p.b).maxCoeff() > 1e-8) r.pass = false;
    ++checked;
  }
  r.detail = std::to_string(checked) +
             " constrained instances, worst objective gap " + fmt(worst_gap) +
             "; worst unconstrained deviation " + fmt(worst_unconstrained);
  return r;
}

// ---------------------------------------------------------------- 5
CriterionResult crit_jacobian_fd(const std::string& data_dir) {
  CriterionResult r{5, "jacobian-finite-difference", true, ""};
  const auto t0 = Clock::now();
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;

  for (const char* name : {"planar_2link", "redundant_7dof"}) {
    const RobotModel model =
        load_robot_model(data_dir + "/models/" + std::string(name) + ".json");
    const int n = model.n();
    for (int it = 0; it < 1000; ++it) {
      Eigen::VectorXd q(n);
      for (int i = 0; i < n; ++i)
        q[i] = model.limit_lo[i] +
               uni(rng) * (model.limit_hi[i] - model.limit_lo[i]);
      const FrameSet frames = forward_kinematics(model, q);
      const Eigen::MatrixXd J = ee_jacobian(model, frames);

      Eigen::MatrixXd J_fd(3, n);
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXd qp = q, qm = q;
        qp[j] += h;
        qm[j] -= h;
        J_fd.col(j) = (forward_kinematics(model, qp).ee.translation() -
                       forward_kinematics(model, qm).ee.translation()) /
                      (2.0 * h);
      }
      const double rel = (J - J_fd).lpNorm<Eigen::Infinity>() /
                         std::max(1.0, J.lpNorm<Eigen::Infinity>());
      worst = std::max(worst, rel);

      // Same check on a proximal body point (distal columns must be zero).
      const int link = static_cast<int>(uni(rng) * n) % n;
      const Eigen::Vector3d wp = frames.joint[link].translation();
      const Eigen::MatrixXd Jp = point_jacobian(model, frames, link, wp);
      Eigen::MatrixXd Jp_fd(3, n);
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXd qp = q, qm = q;
        qp[j] += h;
        qm[j] -= h;
        Jp_fd.col(j) =
            (forward_kinematics(model, qp).joint[link].translation() -
             forward_kinematics(model, qm).joint[link].translation()) /
            (2.0 * h);
      }
      const double relp = (Jp - Jp_fd).lpNorm<Eigen::Infinity>() /
                          std::max(1.0, Jp.lpNorm<Eigen::Infinity>());
      worst = std::max(worst, relp);
    }
  }
  const double elapsed = seconds_since(t0);
  r.pass = worst <= 1e-5 && elapsed < 5.0;
  r.detail = "worst relative error " + fmt(worst) + ", " + fmt(elapsed) +
             " s for 2000 configurations (limit 5 s)";
  return r;
}

// ---------------------------------------------------------------- 6
CriterionResult crit_window_impulse() {
  CriterionResult r{6, "window-impulse-robustness", true, ""};
  SignalWindow w(100, 0.1, 0.75);
  const ThresholdParams p;
  for (int i = 0; i < 100; ++i) w.push(0.0);

  int events = 0;
  double worst_mean = 0.0;
  auto step = [&](double raw) {
    const double mu = w.mean();
    const double sigma = w.stddev();
    const ThresholdBand band =
        thresholds(Eigen::Vector3d::Constant(mu),
                   Eigen::Vector3d::Constant(sigma), p, AxisProximity{});
    const double appended = w.push(raw);
    if (detect(Eigen::Vector3d(appended, 0.0, 0.0), band,
               Eigen::Vector3d::Constant(mu), 0.0))
      ++events;
    worst_mean = std::max(worst_mean, std::abs(w.mean()));
  };

  step(50.0);  // the impulse
  for (int i = 0; i < 99; ++i) step(0.0);

  r.pass = worst_mean <= 0.05 + 1e-12 && events <= 1;
  r.detail = "max |window mean| " + fmt(worst_mean) + " N (limit 0.05), " +
             std::to_string(events) + " contact event(s) (limit 1)";
  return r;
}

// ---------------------------------------------------------------- 7
CriterionResult crit_recovery(const std::string& data_dir) {
  CriterionResult r{7, "recovery-timing", true, ""};
  const Scenario sc =
      load_scenario(data_dir + "/scenarios/recovery_circle.json");
  const Trace trace = run_scenario(sc);

  int last_gated = -1;
  for (size_t i = 0; i < trace.rows.size(); ++i)
    if (trace.rows[i].n_gated > 0) last_gated = static_cast<int>(i);
  if (last_gated < 0 || last_gated + 201 >= static_cast<int>(trace.rows.size())) {
    r.pass = false;
    r.detail = "scenario never gated an obstacle or ends too early";
    return r;
  }
  int reach = -1;
  for (size_t i = last_gated + 1; i < trace.rows.size(); ++i) {
    if (trace.rows[i].scale_factor == 1.0) {
      reach = static_cast<int>(i);
      break;
    }
  }
  const int cycles = reach - (last_gated + 1);
  const double err =
      circle_distance(trace.rows.back().ee, *sc.circle);
  r.pass = reach > 0 && cycles == 200 && err <= 0.005;
  r.detail = "scale reached 1.0 after " + std::to_string(cycles) +
             " cycles (expected 200); final circle error " + fmt(err) +
             " m (limit 0.005)";
  return r;
}

// ---------------------------------------------------------------- 8
CriterionResult crit_restrictions(const std::string& data_dir) {
  CriterionResult r{8, "restriction-efficacy", true, ""};
  const Scenario sc = load_scenario(data_dir + "/scenarios/circle_avoid.json");
  std::ostringstream detail;
  for (uint64_t seed = 2000; seed < 2005; ++seed) {
    RunOptions with;
    with.seed = seed;
    RunOptions without = with;
    without.no_restrictions = true;
    const double d_on = summarize(run_scenario(sc, with)).min_body_distance;
    const double d_off = summarize(run_scenario(sc, without)).min_body_distance;
    detail << fmt(d_on) << ">" << fmt(d_off) << " ";
    if (!(d_on > d_off)) r.pass = false;
  }
  r.detail = "min body-obstacle distance on>off per seed: " + detail.str();
  return r;
}

// ---------------------------------------------------------------- 9
CriterionResult crit_reaction(const std::string& data_dir) {
  CriterionResult r{9, "reaction-correctness", true, ""};
  const Scenario sc =
      load_scenario(data_dir + "/scenarios/dynamic_collision.json");
  const Trace trace = run_scenario(sc);

  int events = 0;
  bool sign_ok = true, zero_ok = true, resume_ok = true;
  for (size_t i = 0; i < trace.rows.size(); ++i) {
    if (!trace.rows[i].contact) continue;
    ++events;
    size_t j = i;
    while (j < trace.rows.size() && trace.rows[j].mode == kModeReacting) {
      for (int a = 0; a < 3; ++a)
        if (trace.rows[j].reaction[a] * trace.rows[j].F_ext[a] < 0.0)
          sign_ok = false;
      ++j;
    }
    // Last reacting row must command an exact zero, then the task resumes.
    zero_ok = zero_ok && j > i &&
              trace.rows[j - 1].reaction == Eigen::Vector3d::Zero();
    resume_ok = resume_ok && j < trace.rows.size() &&
                trace.rows[j].mode != kModeReacting;
    i = j;
  }
  resume_ok = resume_ok && !trace.rows.empty() &&
              trace.rows.back().mode == kModeNominal;
  r.pass = events >= 1 && sign_ok && zero_ok && resume_ok;
  r.detail = std::to_string(events) + " event(s); sign-aligned: " +
             (sign_ok ? "yes" : "no") + ", exact zero at terminus: " +
             (zero_ok ? "yes" : "no") + ", task resumed nominal: " +
             (resume_ok ? "yes" : "no");
  return r;
}

// ---------------------------------------------------------------- 10
const char* kBattery[] = {"free_circle",       "static_wall_circle",
                          "static_wall_line",  "circle_avoid",
                          "recovery_circle",   "dynamic_collision"};

void run_battery(const std::string& data_dir, const fs::path& dir) {
  fs::create_directories(dir);
  for (const char* name : kBattery) {
    const Scenario sc =
        load_scenario(data_dir + "/scenarios/" + name + ".json");
    const Trace trace = run_scenario(sc);
    write_trace_csv(trace, (dir / (std::string(name) + "_trace.csv")).string());
    write_trace_meta(trace, (dir / (std::string(name) + "_meta.json")).string());
  }
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::string ca((std::istreambuf_iterator<char>(fa)),
                 std::istreambuf_iterator<char>());
  std::string cb((std::istreambuf_iterator<char>(fb)),
                 std::istreambuf_iterator<char>());
  return !ca.empty() && ca == cb;
}

CriterionResult crit_determinism(const std::string& data_dir,
                                 const std::string& out_dir) {
  CriterionResult r{10, "suite-determinism", true, ""};
  const fs::path d1 = fs::path(out_dir) / "run1";
  const fs::path d2 = fs::path(out_dir) / "run2";
  run_battery(data_dir, d1);
  run_battery(data_dir, d2);
  int compared = 0;
  for (const char* name : kBattery) {
    for (const char* suffix : {"_trace.csv", "_meta.json"}) {
      const std::string f = std::string(name) + suffix;
      ++compared;
      if (!same_bytes(d1 / f, d2 / f)) {
        r.pass = false;
        r.detail += f + " differs; ";
      }
    }
  }
  if (r.pass)
    r.detail = std::to_string(compared) + " files bitwise identical";
  return r;
}

CriterionResult guarded(CriterionResult (*fn)(const std::string&),
                        const std::string& arg, int id, const char* name) {
  try {
    return fn(arg);
  } catch (const std::exception& e) {
    return {id, name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& data_dir,
                                            const std::string& out_dir) {
  std::vector<CriterionResult> results;
  results.push_back(guarded(crit_force_ratio, data_dir, 1, "force-reduction-ratio"));
  results.push_back(crit_thresholds());
  results.push_back(crit_approach_limit());
  results.push_back(crit_qp_oracle());
  results.push_back(guarded(crit_jacobian_fd, data_dir, 5, "jacobian-finite-difference"));
  results.push_back(crit_window_impulse());
  results.push_back(guarded(crit_recovery, data_dir, 7, "recovery-timing"));
  results.push_back(guarded(crit_restrictions, data_dir, 8, "restriction-efficacy"));
  results.push_back(guarded(crit_reaction, data_dir, 9, "reaction-correctness"));
  try {
    results.push_back(crit_determinism(data_dir, out_dir));
  } catch (const std::exception& e) {
    results.push_back({10, "suite-determinism", false,
                       std::string("exception: ") + e.what()});
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace pact
