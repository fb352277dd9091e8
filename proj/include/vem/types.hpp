#pragma once

#include <cmath>

#include "vem/errors.hpp"

namespace vem {

/// Instantaneous (speed, acceleration, road grade) triplet; the sole input of
/// every model in this library. Grade is the small-angle value used
/// interchangeably with sin/tan of the inclination angle.
struct OperatingPoint {
  double v = 0.0;      ///< speed, m/s
  double a = 0.0;      ///< acceleration, m/s^2
  double theta = 0.0;  ///< road grade, rad

  bool finite() const {
    return std::isfinite(v) && std::isfinite(a) && std::isfinite(theta);
  }
};

inline void require_finite(const OperatingPoint& pt) {
  if (!pt.finite()) throw InputError("non-finite operating point");
}

enum class Duty { LightDuty, MediumHeavyDuty };

/// Public-release feasibility flag: 0 feasible, 1 infeasible, 2 negative speed.
enum class Feasibility : int { Feasible = 0, Infeasible = 1, NegativeSpeed = 2 };

}  // namespace vem
