#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vem/reduction_pipeline.hpp"

namespace vem {

/// Black-box release format: fuel rate and feasibility of a model sampled on
/// a regular (v, a, theta) grid. A trilinear interpolating loader turns the
/// dump back into a callable oracle; node queries reproduce node values
/// exactly.
struct GridDump {
  std::vector<double> v_axis;
  std::vector<double> a_axis;
  std::vector<double> theta_axis;
  std::vector<double> fuel;           ///< v-major, then a, then theta
  std::vector<std::uint8_t> feasible;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * a_axis.size() + j) * theta_axis.size() + k;
  }
  std::size_t size() const {
    return v_axis.size() * a_axis.size() * theta_axis.size();
  }

  /// Trilinear interpolation of fuel; feasibility interpolated the same way
  /// and thresholded at 0.5. Queries outside the grid clamp per axis.
  OracleSample interpolate(double v, double a, double theta) const;
};

/// Default export density: trilinear round-trip error of the bundled
/// simplified models stays below 0.5% while the CSV stays under 10 MB.
struct GridSpec {
  std::size_t n_v = 141, n_a = 121, n_theta = 13;
  double v_lo = 0.0, v_hi = 35.0;
  double a_lo = -3.0, a_hi = 3.0;
  double theta_lo = -0.03, theta_hi = 0.03;
};

GridDump export_grid(const ModelOracle& oracle, const GridSpec& spec = {});

std::string grid_dump_to_csv(const GridDump& dump);
void save_grid_dump(const GridDump& dump, const std::filesystem::path& path);
GridDump load_grid_dump(const std::filesystem::path& path);

/// Interpolating oracle over a dump (shares ownership of the data).
ModelOracle make_oracle(GridDump dump);

}  // namespace vem
