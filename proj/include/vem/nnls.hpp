#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vem {

struct NnlsResult {
  Eigen::VectorXd x;
  std::vector<bool> at_bound;  ///< true where the coefficient is pinned at zero
  double residual_norm = 0.0;
  int iterations = 0;

  std::vector<int> active_constraints() const {
    std::vector<int> idx;
    for (std::size_t i = 0; i < at_bound.size(); ++i)
      if (at_bound[i]) idx.push_back(static_cast<int>(i));
    return idx;
  }
};

/// Nonnegative least squares: minimize ||A x - b|| subject to x >= 0,
/// Lawson-Hanson active-set iteration. The returned solution satisfies the
/// KKT conditions: the gradient component of 0.5||Ax-b||^2 vanishes on free
/// coefficients and is nonnegative on bound ones (verified before returning).
/// Throws FitError on iteration-cap exhaustion.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 0);

/// Worst KKT violation of a candidate solution: max over free coefficients of
/// |g_i| and over bound coefficients of max(0, -g_i), with g = A^T (A x - b).
double nnls_kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& x);

}  // namespace vem
