#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pact {

// minimize ½ xᵀH x + gᵀx   subject to  A x ≤ b
// H must be symmetric positive definite; A may have zero rows (m = 0).
struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

struct QpSolution {
  Eigen::VectorXd x;
  std::vector<int> active_set;  // rows of A tight at the solution, ascending
  int iterations = 0;
  // Set when the constraints could not all be met (or the iteration cap was
  // hit): x then minimizes the objective plus a 1e6-weighted penalty on the
  // constraint violations, so callers always get a usable command.
  bool slack_used = false;
};

// Stateless solve. Throws std::invalid_argument when H is not symmetric
// positive definite or the dimensions are inconsistent.
QpSolution solve_qp(const QpProblem& p);

// Holds the previous cycle's active set and first retries it as an equality
// solve, which usually terminates in one step at 100 Hz rates.
class QpSolver {
 public:
  QpSolution solve(const QpProblem& p);

 private:
  std::vector<int> warm_;
};

}  // namespace pact
