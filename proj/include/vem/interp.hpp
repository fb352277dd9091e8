#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vem {

/// Piecewise-linear 1-D lookup table on a strictly increasing grid. Queries
/// outside the grid clamp to the boundary value and bump the caller's
/// extrapolation counter; the table itself has no mutable state.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(std::vector<double> x, std::vector<double> y, std::string name = "grid1d");

  double eval(double x, std::uint64_t* clamp_count = nullptr) const;

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  const std::string& name() const { return name_; }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::string name_;
};

/// Bilinear 2-D lookup table over the tensor grid xs × ys. values[i][j]
/// corresponds to (xs[i], ys[j]). Out-of-grid queries clamp per axis.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(std::vector<double> xs, std::vector<double> ys,
         std::vector<std::vector<double>> values, std::string name = "grid2d");

  double eval(double x, double y, std::uint64_t* clamp_count = nullptr) const;

  /// Nearest-lower-cell lookup: no interpolation, returns the stored value at
  /// the grid node just below (x, y). Used for categorical maps (gear
  /// schedules), where interpolating between integer values is meaningless.
  double cell_value(double x, double y, std::uint64_t* clamp_count = nullptr) const;

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<std::vector<double>>& values() const { return v_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::vector<double>> v_;
  std::string name_;
};

}  // namespace vem
