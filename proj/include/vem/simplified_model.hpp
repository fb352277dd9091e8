#pragma once

#include <string>
#include <vector>

#include "vem/types.hpp"

namespace vem {

/// Closed-form fuel model parameters for one vehicle class: the 19 fuel
/// coefficients, the 6 feasible-region coefficients, and the duty-class
/// discriminator. Light-duty sets carry the fuel-cut description (v_c, beta,
/// a0..a4); medium/heavy-duty sets carry the linear fuel floor (h0, h1).
struct SimplifiedParams {
  std::string name;
  Duty duty = Duty::LightDuty;

  // light-duty fuel cut
  double v_c = 0;   ///< fuel-cut speed, m/s
  double beta = 0;  ///< low-speed fuel floor, g/s
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0;

  // medium/heavy-duty fuel floor, g/s and g/m
  double h0 = 0, h1 = 0;

  // cruising polynomial C(v), linear-in-a P(v), quadratic-in-a Q(v),
  // grade term Z(v)
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  double p0 = 0, p1 = 0, p2 = 0;
  double q0 = 0, q1 = 0;
  double z0 = 0, z1 = 0, z2 = 0;

  // feasible-region boundary a_max(v, theta)
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;

  double C(double v) const { return c0 + v * (c1 + v * (c2 + v * c3)); }
  double P(double v) const { return p0 + v * (p1 + v * p2); }
  double Q(double v) const { return q0 + v * q1; }
  double Z(double v) const { return z0 + v * (z1 + v * z2); }

  /// Throws ConfigError when a fitting-constraint invariant is violated.
  void validate() const;

  /// Non-fatal oddities worth surfacing (e.g. Q(0) = 0 with P(0) > 0, which
  /// degenerates the acceleration vertex at standstill).
  std::vector<std::string> warnings() const;
};

struct SimplifiedEval {
  double fuel_rate = 0;  ///< g/s, never negative
  double power = 0;      ///< W, fuel_rate times the specific energy
  Feasibility feasibility = Feasibility::Feasible;
  bool projected = false;  ///< true when a was replaced by a_max before evaluation
};

/// Conventional lower heating values used to convert fuel rate to power, J/g.
/// These are configuration constants, not fitted quantities.
constexpr double kSpecificEnergySpark = 43500.0;
constexpr double kSpecificEnergyCompression = 42800.0;

/// Spark ignition for the light-duty default, compression ignition for
/// medium/heavy-duty: matches the bundled vehicle portfolio.
inline double default_specific_energy(Duty duty) {
  return duty == Duty::LightDuty ? kSpecificEnergySpark : kSpecificEnergyCompression;
}

/// Evaluates the simplified fuel model at one operating point.
/// Negative input speed short-circuits to fuel 0 with flag 2. Points above
/// the feasibility ceiling are flagged 1 and either evaluated as-is
/// (project = false) or evaluated at a = a_max(v, theta) (project = true).
/// specific_energy = 0 selects the duty-class default.
SimplifiedEval eval_fuel_rate(const SimplifiedParams& params, const OperatingPoint& pt,
                              bool project = false, double specific_energy = 0.0);

/// Element-wise eval_fuel_rate over a batch; bit-identical to the point-wise
/// calls.
std::vector<SimplifiedEval> eval_fuel_rate_batch(const SimplifiedParams& params,
                                                 const std::vector<OperatingPoint>& pts,
                                                 bool project = false,
                                                 double specific_energy = 0.0);

/// Fuel-cut boundary a_c(v, theta) = a0 + a1 v + a2 theta + a3 v^2 + a4 v theta.
/// Only light-duty parameter sets carry one; medium/heavy-duty throws
/// UnsupportedOperation.
double fuel_cut_boundary(const SimplifiedParams& params, double v, double theta);

/// Vertex acceleration a_min(v) = -P(v) / (2 Q(v)), below which the
/// quadratic-in-a fuel surface is held at its minimum. Q(v) = 0 with
/// P(v) = 0 yields 0; Q(v) = 0 with P(v) > 0 throws SingularityError.
double a_min(const SimplifiedParams& params, double v);

/// Feasible-region ceiling
///   a_max(v, theta) = min(b1, b2/v - b3 v^2) - min(b4, b5 + b6 v) theta,
/// with the 1/v singularity at v = 0 masked by the min.
double a_max_feasible(const SimplifiedParams& params, double v, double theta);

}  // namespace vem
