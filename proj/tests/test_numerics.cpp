#include <random>

#include "doctest.h"
#include "vem/bisect.hpp"
#include "vem/errors.hpp"
#include "vem/interp.hpp"
#include "vem/nnls.hpp"
#include "vem/polyfit.hpp"

using namespace vem;

TEST_CASE("1-D interpolation: midpoint, clamp, counters") {
  Grid1D g({0.0, 10.0}, {0.0, 10.0});
  CHECK(g.eval(5.0) == doctest::Approx(5.0));
  std::uint64_t clamps = 0;
  CHECK(g.eval(12.0, &clamps) == doctest::Approx(10.0));
  CHECK(clamps == 1);
  CHECK(g.eval(-1.0, &clamps) == doctest::Approx(0.0));
  CHECK(clamps == 2);
  CHECK(g.eval(0.0, &clamps) == doctest::Approx(0.0));
  CHECK(clamps == 2);  // boundary hit is not an extrapolation
}

TEST_CASE("2-D interpolation: bilinear formula") {
  // f(x, y) = x + 2y sampled at the corners of the unit square
  Grid2D g({0.0, 1.0}, {0.0, 1.0}, {{0.0, 2.0}, {1.0, 3.0}});
  CHECK(g.eval(0.5, 0.5) == doctest::Approx(1.5));
  CHECK(g.eval(0.25, 0.75) == doctest::Approx(0.25 + 1.5));
  std::uint64_t clamps = 0;
  CHECK(g.eval(2.0, 0.5, &clamps) == doctest::Approx(2.0));
  CHECK(clamps == 1);
}

TEST_CASE("grid construction errors") {
  CHECK_THROWS_AS(Grid1D({}, {}), ConfigError);
  CHECK_THROWS_AS(Grid1D({0.0, 0.0}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(Grid1D({0.0, 1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(Grid2D({0.0, 1.0}, {0.0, 1.0}, {{1.0}, {2.0}}, "g"), ConfigError);
}

TEST_CASE("categorical cell lookup") {
  Grid2D g({0.0, 0.5, 1.0}, {0.0, 10.0, 20.0},
           {{1, 2, 3}, {1, 2, 2}, {1, 1, 2}});
  CHECK(g.cell_value(0.0, 0.0) == 1.0);
  CHECK(g.cell_value(0.6, 15.0) == 2.0);
  CHECK(g.cell_value(0.4, 25.0) == 3.0);  // clamped into the top-speed column
}

TEST_CASE("bisection: linear and quadratic roots") {
  auto lin = [](double x) { return x - 2.0; };
  auto quad = [](double x) { return x * x - 4.0; };
  auto r1 = bisect_root(lin, 0.0, 10.0, 1e-4);
  auto r2 = bisect_root(quad, 0.0, 10.0, 1e-4);
  REQUIRE(r1.has_value());
  REQUIRE(r2.has_value());
  CHECK(*r1 == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(*r2 == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("bisection: tabulated crossing and absence marker") {
  // Piecewise-linear curve crossing zero at exactly x = 3.75
  auto f = [](double x) { return x < 3.0 ? 1.5 : 1.5 - 2.0 * (x - 3.0); };
  auto r = bisect_root(f, 0.0, 10.0, 1e-5);
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(3.75).epsilon(1e-4));

  auto positive = [](double x) { return x * x + 1.0; };
  CHECK_FALSE(bisect_root(positive, 0.0, 10.0).has_value());

  auto pred = [](double x) { return x < 7.25; };
  auto t = bisect_transition(pred, 0.0, 10.0, 1e-5);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(7.25).epsilon(1e-4));
  CHECK_FALSE(bisect_transition([](double) { return true; }, 0.0, 1.0).has_value());
}

namespace {

// Exhaustive active-set oracle: tries every subset of free coefficients,
// solves the restricted least squares, and keeps the best KKT-feasible one.
Eigen::VectorXd nnls_brute_force(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  double best_sse = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> free_idx;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) free_idx.push_back(j);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (!free_idx.empty()) {
      Eigen::MatrixXd Af(A.rows(), free_idx.size());
      for (std::size_t k = 0; k < free_idx.size(); ++k) Af.col(k) = A.col(free_idx[k]);
      Eigen::VectorXd xf = Af.colPivHouseholderQr().solve(b);
      bool ok = true;
      for (Eigen::Index k = 0; k < xf.size(); ++k)
        if (xf[k] < 0) ok = false;
      if (!ok) continue;
      for (std::size_t k = 0; k < free_idx.size(); ++k) x[free_idx[k]] = xf[k];
    }
    Eigen::VectorXd g = A.transpose() * (A * x - b);
    bool kkt = true;
    for (int j = 0; j < n; ++j)
      if (x[j] == 0.0 && g[j] < -1e-9) kkt = false;
    if (!kkt) continue;
    double sse = (A * x - b).squaredNorm();
    if (sse < best_sse - 1e-15) {
      best_sse = sse;
      best = x;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("nnls: interior optimum equals ordinary least squares") {
  std::mt19937 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXd A(30, 3);
  Eigen::VectorXd x_true(3);
  x_true << 1.5, 0.7, 2.2;
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = std::abs(N(rng)) + 0.1;
  Eigen::VectorXd b = A * x_true;
  Eigen::VectorXd ols = A.colPivHouseholderQr().solve(b);
  NnlsResult res = nnls(A, b);
  CHECK((res.x - ols).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(res.active_constraints().empty());
}

TEST_CASE("nnls: anti-correlated single column pins to zero") {
  Eigen::MatrixXd A(4, 1);
  A << 1, 2, 3, 4;
  Eigen::VectorXd b(4);
  b << -1, -2, -3, -4;
  NnlsResult res = nnls(A, b);
  CHECK(res.x[0] == 0.0);
  CHECK(res.at_bound[0]);
  CHECK(nnls_kkt_violation(A, b, res.x) <= 1e-8);
}

TEST_CASE("nnls: matches exhaustive active-set enumeration on random systems") {
  std::mt19937 rng(2024);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::MatrixXd A(50, 3);
    Eigen::VectorXd b(50);
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 3; ++j) A(i, j) = N(rng);
      b[i] = N(rng);
    }
    NnlsResult res = nnls(A, b);
    Eigen::VectorXd brute = nnls_brute_force(A, b);
    CAPTURE(trial);
    CHECK((res.x - brute).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(nnls_kkt_violation(A, b, res.x) <= 1e-8);
  }
}

TEST_CASE("olsq: rank-deficient design names the dead directions") {
  Eigen::MatrixXd A(10, 3);
  for (int i = 0; i < 10; ++i) {
    A(i, 0) = i;
    A(i, 1) = 2.0 * i;  // collinear with column 0
    A(i, 2) = i * i;
  }
  Eigen::VectorXd b = Eigen::VectorXd::Ones(10);
  std::vector<std::string> names = {"x", "2x", "x^2"};
  CHECK_THROWS_WITH_AS(olsq(A, b, &names), doctest::Contains("rank-deficient"),
                       FitError);
}

TEST_CASE("Poly2D: fit recovers its own basis exactly") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  Eigen::MatrixXd c(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) c(i, j) = U(rng);
  Poly2D truth(2, 3, c);
  std::vector<double> x, y, z;
  for (int i = 0; i < 200; ++i) {
    x.push_back(U(rng));
    y.push_back(U(rng));
    z.push_back(truth.eval(x.back(), y.back()));
  }
  double rms = 1.0;
  Poly2D fit = Poly2D::fit(x, y, z, 2, 3, &rms);
  CHECK(rms < 1e-10);
  CHECK((fit.coeffs() - truth.coeffs()).cwiseAbs().maxCoeff() < 1e-9);
}
