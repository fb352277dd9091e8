#include "vem/nnls.hpp"

#include <cmath>
#include <limits>

#include "vem/errors.hpp"

namespace vem {

namespace {

// Least squares on the passive-column subproblem.
Eigen::VectorXd solve_subproblem(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                 const std::vector<int>& passive) {
  Eigen::MatrixXd Ap(A.rows(), passive.size());
  for (std::size_t k = 0; k < passive.size(); ++k) Ap.col(k) = A.col(passive[k]);
  return Ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
  const int n = static_cast<int>(A.cols());
  if (A.rows() != b.size()) throw FitError("nnls: row count mismatch");
  if (!A.allFinite() || !b.allFinite()) throw FitError("nnls: non-finite input");
  if (max_iter <= 0) max_iter = 30 + 10 * n;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  std::vector<bool> banned(n, false);  // degenerate entries stay at their bound
  Eigen::VectorXd w = A.transpose() * b;
  const double tol = 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff());

  int outer = 0;
  while (true) {
    // Most-violated dual coordinate among bound variables.
    int j_best = -1;
    double w_best = tol;
    Eigen::VectorXd grad = A.transpose() * (b - A * x);
    for (int j = 0; j < n; ++j)
      if (!passive[j] && !banned[j] && grad[j] > w_best) {
        w_best = grad[j];
        j_best = j;
      }
    if (j_best < 0) break;
    if (++outer > max_iter) throw FitError("nnls: iteration cap exceeded");
    passive[j_best] = true;

    // Inner loop: retreat until the passive-set solution is feasible. An
    // entering variable that cannot leave zero (rounding-level gradients)
    // goes back to its bound and stays there.
    while (true) {
      std::vector<int> pset;
      for (int j = 0; j < n; ++j)
        if (passive[j]) pset.push_back(j);
      if (pset.empty()) {
        banned[j_best] = true;
        break;
      }
      Eigen::VectorXd z = solve_subproblem(A, b, pset);

      bool feasible = true;
      for (Eigen::Index k = 0; k < z.size(); ++k)
        if (z[k] <= 0) {
          feasible = false;
          break;
        }

      if (feasible) {
        x.setZero();
        for (std::size_t k = 0; k < pset.size(); ++k) x[pset[k]] = z[k];
        break;
      }

      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < pset.size(); ++k)
        if (z[k] <= 0) {
          double xi = x[pset[k]];
          double step = xi / (xi - z[k]);
          alpha = std::min(alpha, step);
        }
      if (!std::isfinite(alpha)) throw FitError("nnls: degenerate inner step");

      for (std::size_t k = 0; k < pset.size(); ++k) {
        x[pset[k]] += alpha * (z[k] - x[pset[k]]);
        if (x[pset[k]] <= 1e-14 * std::max(1.0, std::abs(z[k]))) {
          x[pset[k]] = 0.0;
          passive[pset[k]] = false;
        }
      }
      if (alpha == 0.0 && !passive[j_best]) {
        banned[j_best] = true;
        break;
      }
      if (++outer > max_iter) throw FitError("nnls: iteration cap exceeded");
    }
  }

  NnlsResult res;
  res.x = x;
  res.at_bound.assign(n, false);
  for (int j = 0; j < n; ++j) res.at_bound[j] = (x[j] == 0.0);
  res.residual_norm = (A * x - b).norm();
  res.iterations = outer;

  const double kkt_tol = 1e-8 * std::max(1.0, (A.transpose() * b).cwiseAbs().maxCoeff());
  if (nnls_kkt_violation(A, b, x) > kkt_tol)
    throw FitError("nnls: KKT verification failed");
  return res;
}

double nnls_kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& x) {
  Eigen::VectorXd g = A.transpose() * (A * x - b);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0)
      worst = std::max(worst, std::abs(g[i]));
    else
      worst = std::max(worst, std::max(0.0, -g[i]));
  }
  return worst;
}

}  // namespace vem
