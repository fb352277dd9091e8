#include "vem/interp.hpp"

#include <algorithm>
#include <cmath>

#include "vem/errors.hpp"

namespace vem {

namespace {

void check_axis(const std::vector<double>& x, const std::string& name) {
  if (x.empty()) throw ConfigError(name + ": empty grid");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw ConfigError(name + ": non-finite abscissa");
    if (i > 0 && x[i] <= x[i - 1])
      throw ConfigError(name + ": abscissae must be strictly increasing");
  }
}

// Index of the interval [x[i], x[i+1]] containing q, clamped to valid cells.
std::size_t cell_index(const std::vector<double>& x, double q) {
  if (x.size() < 2) return 0;
  auto it = std::upper_bound(x.begin(), x.end(), q);
  if (it == x.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(i, x.size() - 2);
}

}  // namespace

Grid1D::Grid1D(std::vector<double> x, std::vector<double> y, std::string name)
    : x_(std::move(x)), y_(std::move(y)), name_(std::move(name)) {
  check_axis(x_, name_);
  if (y_.size() != x_.size()) throw ConfigError(name_ + ": ordinate count mismatch");
  for (double v : y_)
    if (!std::isfinite(v)) throw ConfigError(name_ + ": non-finite map value");
}

double Grid1D::eval(double x, std::uint64_t* clamp_count) const {
  if (x_.empty()) throw ConfigError(name_ + ": empty grid");
  if (x <= x_.front()) {
    if (x < x_.front() && clamp_count) ++*clamp_count;
    return y_.front();
  }
  if (x >= x_.back()) {
    if (x > x_.back() && clamp_count) ++*clamp_count;
    return y_.back();
  }
  std::size_t i = cell_index(x_, x);
  double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + t * (y_[i + 1] - y_[i]);
}

Grid2D::Grid2D(std::vector<double> xs, std::vector<double> ys,
               std::vector<std::vector<double>> values, std::string name)
    : xs_(std::move(xs)), ys_(std::move(ys)), v_(std::move(values)), name_(std::move(name)) {
  check_axis(xs_, name_ + ".x");
  check_axis(ys_, name_ + ".y");
  if (v_.size() != xs_.size()) throw ConfigError(name_ + ": row count mismatch");
  for (const auto& row : v_) {
    if (row.size() != ys_.size()) throw ConfigError(name_ + ": column count mismatch");
    for (double v : row)
      if (!std::isfinite(v)) throw ConfigError(name_ + ": non-finite map value");
  }
}

double Grid2D::eval(double x, double y, std::uint64_t* clamp_count) const {
  if (v_.empty()) throw ConfigError(name_ + ": empty grid");
  if (clamp_count && (x < xs_.front() || x > xs_.back() || y < ys_.front() || y > ys_.back()))
    ++*clamp_count;
  double xc = std::clamp(x, xs_.front(), xs_.back());
  double yc = std::clamp(y, ys_.front(), ys_.back());
  if (xs_.size() == 1 && ys_.size() == 1) return v_[0][0];
  if (xs_.size() == 1) {
    std::size_t j = cell_index(ys_, yc);
    double t = (yc - ys_[j]) / (ys_[j + 1] - ys_[j]);
    return v_[0][j] + t * (v_[0][j + 1] - v_[0][j]);
  }
  if (ys_.size() == 1) {
    std::size_t i = cell_index(xs_, xc);
    double t = (xc - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return v_[i][0] + t * (v_[i + 1][0] - v_[i][0]);
  }
  std::size_t i = cell_index(xs_, xc);
  std::size_t j = cell_index(ys_, yc);
  double tx = (xc - xs_[i]) / (xs_[i + 1] - xs_[i]);
  double ty = (yc - ys_[j]) / (ys_[j + 1] - ys_[j]);
  double v00 = v_[i][j], v10 = v_[i + 1][j], v01 = v_[i][j + 1], v11 = v_[i + 1][j + 1];
  return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
}

double Grid2D::cell_value(double x, double y, std::uint64_t* clamp_count) const {
  if (v_.empty()) throw ConfigError(name_ + ": empty grid");
  if (clamp_count && (x < xs_.front() || x > xs_.back() || y < ys_.front() || y > ys_.back()))
    ++*clamp_count;
  double xc = std::clamp(x, xs_.front(), xs_.back());
  double yc = std::clamp(y, ys_.front(), ys_.back());
  auto lower = [](const std::vector<double>& ax, double q) {
    auto it = std::upper_bound(ax.begin(), ax.end(), q);
    if (it == ax.begin()) return std::size_t{0};
    return static_cast<std::size_t>(it - ax.begin()) - 1;
  };
  return v_[lower(xs_, xc)][lower(ys_, yc)];
}

}  // namespace vem
