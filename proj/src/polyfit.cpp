#include "vem/polyfit.hpp"

#include <sstream>

#include "vem/errors.hpp"

namespace vem {

Eigen::VectorXd olsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const std::vector<std::string>* col_names) {
  if (A.rows() != b.size()) throw FitError("olsq: row count mismatch");
  if (A.rows() < 1 || A.cols() < 1) throw FitError("olsq: empty design");

  // Equilibrate columns so wildly different monomial scales do not wreck the
  // QR rank decision.
  Eigen::VectorXd scale(A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    double n = A.col(j).norm();
    scale[j] = (n > 0 && std::isfinite(n)) ? n : 1.0;
  }
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
  qr.setThreshold(1e-10);
  if (qr.rank() < A.cols()) {
    std::ostringstream msg;
    msg << "rank-deficient design (rank " << qr.rank() << " of " << A.cols() << ")";
    if (col_names) {
      msg << "; deficient directions:";
      const auto& perm = qr.colsPermutation().indices();
      for (Eigen::Index k = qr.rank(); k < A.cols(); ++k) {
        Eigen::Index j = perm[k];
        msg << ' ' << (j < static_cast<Eigen::Index>(col_names->size())
                           ? (*col_names)[j]
                           : ("col" + std::to_string(j)));
      }
    }
    throw FitError("olsq: " + msg.str());
  }
  Eigen::VectorXd xs = qr.solve(b);
  return scale.cwiseInverse().asDiagonal() * xs;
}

Poly2D::Poly2D(int deg_x, int deg_y, Eigen::MatrixXd coeffs) : c_(std::move(coeffs)) {
  if (c_.rows() != deg_x + 1 || c_.cols() != deg_y + 1)
    throw ConfigError("Poly2D: coefficient block does not match declared degrees");
  if (!c_.allFinite()) throw ConfigError("Poly2D: non-finite coefficient");
}

double Poly2D::eval(double x, double y) const {
  // Horner in x of Horner-in-y row polynomials.
  double acc = 0.0;
  for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) {
    double row = 0.0;
    for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) row = row * y + c_(i, j);
    acc = acc * x + row;
  }
  return acc;
}

Poly2D Poly2D::fit(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& z, int deg_x, int deg_y, double* rms) {
  const std::size_t n = x.size();
  if (y.size() != n || z.size() != n) throw FitError("Poly2D::fit: length mismatch");
  const int ncoef = (deg_x + 1) * (deg_y + 1);
  if (static_cast<int>(n) < ncoef)
    throw FitError("Poly2D::fit: fewer samples than coefficients");

  Eigen::MatrixXd A(n, ncoef);
  std::vector<std::string> names(ncoef);
  for (std::size_t r = 0; r < n; ++r) {
    double xp = 1.0;
    for (int i = 0; i <= deg_x; ++i) {
      double yp = 1.0;
      for (int j = 0; j <= deg_y; ++j) {
        A(r, i * (deg_y + 1) + j) = xp * yp;
        yp *= y[r];
      }
      xp *= x[r];
    }
  }
  for (int i = 0; i <= deg_x; ++i)
    for (int j = 0; j <= deg_y; ++j)
      names[i * (deg_y + 1) + j] = "x^" + std::to_string(i) + "*y^" + std::to_string(j);

  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(z.data(), n);
  Eigen::VectorXd sol = olsq(A, b, &names);

  if (rms) *rms = std::sqrt((A * sol - b).squaredNorm() / static_cast<double>(n));

  Eigen::MatrixXd c(deg_x + 1, deg_y + 1);
  for (int i = 0; i <= deg_x; ++i)
    for (int j = 0; j <= deg_y; ++j) c(i, j) = sol[i * (deg_y + 1) + j];
  return Poly2D(deg_x, deg_y, std::move(c));
}

}  // namespace vem
