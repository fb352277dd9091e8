#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "vem/types.hpp"

namespace vem {

struct CycleSample {
  double t = 0;      ///< s
  double v = 0;      ///< m/s, target speed
  double theta = 0;  ///< rad
};

/// A target speed/grade profile. Time must strictly increase; sampling may be
/// non-uniform except where an operation states otherwise.
struct DriveCycle {
  std::string name;
  std::string source;  ///< provenance tag, e.g. a cycle family name
  std::vector<CycleSample> samples;

  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }
  void validate() const;
};

/// Loads a cycle from CSV with header `t,v[,theta]`. A missing theta column
/// yields zeros. Non-monotone time or negative speed raises ParseError with
/// the offending 1-based data-row index.
DriveCycle load_cycle(const std::filesystem::path& path);

/// Grade-range warning bounds: light-duty cycles are validated over
/// [-0.03, 0.03] rad, heavy-duty over [-0.02, 0.02] rad.
double grade_warning_bound(const DriveCycle& cycle);

/// Same speed trace with a constant grade column. When |theta| exceeds the
/// cycle's validated grade range, `warning` (if given) receives a note; the
/// cycle is still produced.
DriveCycle with_constant_grade(const DriveCycle& cycle, double theta,
                               std::string* warning = nullptr);

/// Acceleration by central differences in the interior and one-sided
/// differences at the endpoints; exact for linear ramps on uniform grids.
std::vector<double> derive_acceleration(const DriveCycle& cycle);

/// Instantaneous model contract for trip integration.
struct ModelSample {
  double fuel_rate = 0;  ///< g/s
  bool feasible = true;
};
using CycleModel = std::function<ModelSample(const OperatingPoint&)>;

struct TripResult {
  double total_fuel_g = 0;
  std::vector<double> fuel_rate;  ///< per-sample trace, g/s
  std::size_t infeasible_samples = 0;
};

/// Trapezoidal trip fuel over the cycle time base.
TripResult integrate_fuel(const CycleModel& model, const DriveCycle& cycle);

/// 2 mi/h at exactly 1609.344 m per mile.
constexpr double kRealizabilitySpeedTol = 2.0 * 1609.344 / 3600.0;  // 0.89408 m/s

struct RealizabilityResult {
  bool realizable = true;
  double violation_fraction = 0;  ///< fraction of samples off by >= 2 mi/h
};

/// A pairing is realizable when at most 25% of samples miss the target speed
/// by 2 mi/h or more (boundary inclusive).
RealizabilityResult realizability(const DriveCycle& target,
                                  const std::vector<double>& achieved_speed);

/// Centered moving average with the window truncated at the boundaries;
/// requires uniform sampling, preserves length. window_s = 20 gives a
/// 21-sample window at 1 Hz.
std::vector<double> moving_average(const std::vector<double>& series, double dt,
                                   double window_s = 20.0);

/// Percentage relative error (model - reference) / reference * 100.
double relative_error_pct(double model_total, double reference_total);

struct ValidationRow {
  std::string vehicle;
  std::string model;
  std::string cycle;
  double grade = 0;
  double model_fuel_g = 0;
  double reference_fuel_g = 0;
  double rel_error_pct = 0;
  bool realizable = true;
};

}  // namespace vem
