#include "pact/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pact {
namespace {

constexpr double kStepTol = 1e-11;   // step/multiplier tolerance
constexpr double kFeasTol = 1e-9;    // feasibility acceptance
constexpr double kTightTol = 1e-8;   // active-set reporting
constexpr double kSlackPenalty = 1e6;

struct AsOutcome {
  Eigen::VectorXd z;
  int iterations = 0;
  bool hit_cap = false;
};

// Primal active-set iteration for min ½zᵀHz + gᵀz s.t. Az ≤ b, started at a
// feasible z whose working-set rows are tight. Lowest row index breaks all
// ties so the path (and hence the result) is deterministic.
AsOutcome active_set_iterate(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                             const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             Eigen::VectorXd z, std::vector<int> W, int cap) {
  const Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("qp: H is not positive definite");
  const int m = static_cast<int>(A.rows());

  AsOutcome out;
  while (true) {
    if (out.iterations++ >= cap) {
      out.hit_cap = true;
      break;
    }
    const Eigen::VectorXd r = H * z + g;
    // Step and multiplier tolerances scale with the residual so that a
    // large penalty weight in g cannot leave cancellation noise above an
    // absolute cutoff and stall the iteration.
    const double scale =
        std::max({1.0, z.lpNorm<Eigen::Infinity>(), r.lpNorm<Eigen::Infinity>()});
    const double ptol = kStepTol * scale;
    Eigen::VectorXd p;
    Eigen::VectorXd lambda;
    if (W.empty()) {
      p = -llt.solve(r);
    } else {
      Eigen::MatrixXd AW(W.size(), A.cols());
      for (size_t i = 0; i < W.size(); ++i) AW.row(i) = A.row(W[i]);
      const Eigen::MatrixXd HiAWt = llt.solve(AW.transpose());
      const Eigen::LLT<Eigen::MatrixXd> slt(AW * HiAWt);
      if (slt.info() != Eigen::Success) {
        // Dependent working set; retry without the newest row.
        W.pop_back();
        continue;
      }
      lambda = slt.solve(-AW * llt.solve(r));
      p = -llt.solve(r + AW.transpose() * lambda);
    }

    if (p.lpNorm<Eigen::Infinity>() < ptol) {
      if (W.empty()) break;
      int drop_pos = -1;
      double worst = -ptol;
      for (size_t i = 0; i < W.size(); ++i) {
        if (lambda[i] < worst ||
            (drop_pos >= 0 && lambda[i] == worst && W[i] < W[drop_pos])) {
          worst = lambda[i];
          drop_pos = static_cast<int>(i);
        }
      }
      if (drop_pos < 0) break;  // all multipliers nonnegative: optimal
      W.erase(W.begin() + drop_pos);
      continue;
    }

    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < m; ++i) {
      if (std::find(W.begin(), W.end(), i) != W.end()) continue;
      const double advance = A.row(i).dot(p);
      if (advance <= kStepTol) continue;
      const double ai = std::max(0.0, (b[i] - A.row(i).dot(z)) / advance);
      if (ai < alpha - 1e-14) {
        alpha = ai;
        blocking = i;
      } else if (blocking >= 0 && std::abs(ai - alpha) <= 1e-14 && i < blocking) {
        blocking = i;
      }
    }
    z += alpha * p;
    if (blocking >= 0) W.push_back(blocking);
  }
  out.z = std::move(z);
  return out;
}

void validate(const QpProblem& p) {
  const auto n = p.H.rows();
  if (p.H.cols() != n || p.g.size() != n)
    throw std::invalid_argument("qp: inconsistent H/g dimensions");
  if (p.A.rows() != p.b.size() || (p.A.rows() > 0 && p.A.cols() != n))
    throw std::invalid_argument("qp: inconsistent A/b dimensions");
  if ((p.H - p.H.transpose()).lpNorm<Eigen::Infinity>() > 1e-9)
    throw std::invalid_argument("qp: H is not symmetric");
}

std::vector<int> tight_rows(const QpProblem& p, const Eigen::VectorXd& x) {
  std::vector<int> act;
  for (int i = 0; i < p.A.rows(); ++i)
    if (std::abs(p.A.row(i).dot(x) - p.b[i]) <= kTightTol) act.push_back(i);
  return act;
}

QpSolution solve_with_slack(const QpProblem& p, const Eigen::VectorXd& x_u) {
  const int n = static_cast<int>(p.H.rows());
  const int m = static_cast<int>(p.A.rows());
  const int nz = n + m;

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nz, nz);
  H.topLeftCorner(n, n) = p.H;
  H.bottomRightCorner(m, m).setIdentity();
  Eigen::VectorXd g(nz);
  g.head(n) = p.g;
  g.tail(m).setConstant(kSlackPenalty);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, nz);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * m);
  A.topLeftCorner(m, n) = p.A;
  A.topRightCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  A.bottomRightCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  b.head(m) = p.b;

  // Feasible start: lift the violated rows onto the slack variables.
  Eigen::VectorXd z0(nz);
  z0.head(n) = x_u;
  const Eigen::VectorXd viol = p.A * x_u - p.b;
  std::vector<int> W;
  for (int i = 0; i < m; ++i) {
    z0[n + i] = std::max(0.0, viol[i]);
    W.push_back(viol[i] > 0.0 ? i : m + i);
  }

  const int cap = 50 * (nz + 2 * m);
  AsOutcome as = active_set_iterate(H, g, A, b, z0, W, cap);

  QpSolution sol;
  sol.x = as.z.head(n);
  sol.iterations = as.iterations;
  sol.slack_used = as.hit_cap || as.z.tail(m).maxCoeff() > kTightTol;
  sol.active_set = tight_rows(p, sol.x);
  return sol;
}

}  // namespace

QpSolution solve_qp(const QpProblem& p) {
  validate(p);
  const Eigen::LLT<Eigen::MatrixXd> llt(p.H);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("qp: H is not positive definite");
  const Eigen::VectorXd x_u = llt.solve(-p.g);

  QpSolution sol;
  if (p.A.rows() == 0 || (p.A * x_u - p.b).maxCoeff() <= kFeasTol) {
    sol.x = x_u;
    sol.active_set = tight_rows(p, sol.x);
    return sol;
  }
  return solve_with_slack(p, x_u);
}

QpSolution QpSolver::solve(const QpProblem& p) {
  validate(p);
  const int m = static_cast<int>(p.A.rows());
  bool warm_ok = !warm_.empty() && m > 0;
  for (int i : warm_)
    if (i < 0 || i >= m) warm_ok = false;

  if (warm_ok) {
    // One equality-constrained solve on last cycle's active set; accept it
    // when it is primal feasible with nonnegative multipliers.
    const Eigen::LLT<Eigen::MatrixXd> llt(p.H);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("qp: H is not positive definite");
    const Eigen::VectorXd x_u = llt.solve(-p.g);
    Eigen::MatrixXd AW(warm_.size(), p.A.cols());
    Eigen::VectorXd bW(warm_.size());
    for (size_t i = 0; i < warm_.size(); ++i) {
      AW.row(i) = p.A.row(warm_[i]);
      bW[i] = p.b[warm_[i]];
    }
    const Eigen::MatrixXd HiAWt = llt.solve(AW.transpose());
    const Eigen::LLT<Eigen::MatrixXd> slt(AW * HiAWt);
    if (slt.info() == Eigen::Success) {
      const Eigen::VectorXd lambda = slt.solve(AW * x_u - bW);
      const Eigen::VectorXd x = x_u - HiAWt * lambda;
      if (lambda.minCoeff() >= -kStepTol &&
          (m == 0 || (p.A * x - p.b).maxCoeff() <= kFeasTol)) {
        QpSolution sol;
        sol.x = x;
        sol.iterations = 1;
        sol.active_set = tight_rows(p, x);
        warm_ = sol.active_set;
        return sol;
      }
    }
  }

  QpSolution sol = solve_qp(p);
  warm_ = sol.active_set;
  return sol;
}

}  // namespace pact
