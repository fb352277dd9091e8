#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

namespace vem {

/// Least squares min ||A x - b|| via column-equilibrated Householder QR.
/// Throws FitError naming the deficient basis directions when the design is
/// rank deficient. `col_names` is optional and only used for error messages.
Eigen::VectorXd olsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const std::vector<std::string>* col_names = nullptr);

/// Tensor-product bivariate polynomial
///   p(x, y) = sum_{i=0..deg_x} sum_{j=0..deg_y} c(i, j) x^i y^j.
class Poly2D {
 public:
  Poly2D() = default;
  Poly2D(int deg_x, int deg_y, Eigen::MatrixXd coeffs);

  double eval(double x, double y) const;

  int deg_x() const { return static_cast<int>(c_.rows()) - 1; }
  int deg_y() const { return static_cast<int>(c_.cols()) - 1; }
  const Eigen::MatrixXd& coeffs() const { return c_; }

  /// Ordinary least squares over the full tensor-product monomial basis.
  /// Returns the fitted polynomial; if `rms` is non-null it receives the RMS
  /// residual over the samples.
  static Poly2D fit(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& z, int deg_x, int deg_y,
                    double* rms = nullptr);

 private:
  Eigen::MatrixXd c_;  // (deg_x+1) x (deg_y+1)
};

/// Univariate polynomial with ascending coefficients, evaluated by Horner.
inline double polyval(const Eigen::VectorXd& coeffs, double x) {
  double acc = 0.0;
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

/// Continuous two-facet piecewise-linear surface
///   z(x, y) = c0 + cx x + cy y + h max(0, x cos(phi) + y sin(phi) - r).
/// The hinge form is continuous across the breakline by construction; the
/// facets are the h-inactive and h-active half-planes.
struct HingeSurface {
  double c0 = 0, cx = 0, cy = 0;
  double h = 0;    ///< facet slope change across the breakline
  double phi = 0;  ///< breakline normal direction
  double r = 0;    ///< breakline offset along the normal

  double eval(double x, double y) const {
    double s = x * std::cos(phi) + y * std::sin(phi) - r;
    return c0 + cx * x + cy * y + h * (s > 0 ? s : 0.0);
  }
};

}  // namespace vem
