#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vem/interp.hpp"
#include "vem/polyfit.hpp"
#include "vem/types.hpp"

namespace vem {

/// Vehicle quantities read directly off the source model: masses, road load,
/// driveline ratios, engine speed limits. Gear-indexed arrays are ordered from
/// gear 1 (paper index k = array index + 1).
struct PrincipledConstants {
  double m_vehicle = 0;           ///< kg
  std::vector<double> m_general;  ///< kg per gear, includes driveline inertia
  double r_tire = 0;              ///< m
  double R_a = 0;                 ///< air resistance, N s^2/m^2
  double R_r = 0;                 ///< rolling resistance, N s/m
  double R_g = 0;                 ///< constant frictional load, N
  double d_r = 0;                 ///< final drive ratio
  std::vector<double> g_r;        ///< gear ratios per gear
  double N_max = 0;               ///< rad/s
  double N_min = 0;               ///< rad/s (idle engine speed)
  double g_const = 9.81;          ///< m/s^2

  int gear_count() const { return static_cast<int>(g_r.size()); }
  void validate(std::vector<std::string>* warnings = nullptr) const;
};

/// Linear first-gear torque correction anchored at the origin.
struct TorqueCorrection {
  double slope = 0;      ///< Nm per m/s^2
  double intercept = 0;  ///< must be 0
  double operator()(double a) const { return intercept + slope * a; }
};

/// Constants tuned from representative drive traces rather than read off the
/// source model.
struct EmpiricalConstants {
  double T_min = 0;   ///< Nm
  double f_idle = 0;  ///< g/s
  double v_c = 0;     ///< fuel-cut speed, m/s
  double F_wc = 0;    ///< fuel-cut wheel force, N
  /// Median braking speed of each adjacent downshift pair; index i is the
  /// (i+2) -> (i+1) event. May be empty when no downshift schedule is known.
  std::vector<double> downshift_speeds;
  TorqueCorrection torque_correction;

  void validate() const;
};

/// Gridded maps extracted from the source model and interpolated at runtime.
struct PrincipledMaps {
  Grid2D K_upshift;                   ///< (pedal angle, speed) -> gear, categorical
  Grid1D T_max_of_N;                  ///< engine speed -> max engine torque, Nm
  Grid1D T_wmax_of_v;                 ///< speed -> max wheel torque, Nm (pedal-angle reference)
  std::vector<Grid1D> T_wmax_of_v_k;  ///< per gear: speed -> max wheel torque, Nm

  // manual transmission only
  std::vector<Grid1D> V_upshift;    ///< per gear: pedal angle -> upshift speed, m/s
  std::vector<Grid1D> V_downshift;  ///< per gear: pedal angle -> downshift speed, m/s
  double alpha_s = 0;               ///< flat-shift pedal-angle threshold

  void validate(int gears, bool manual, std::vector<std::string>* warnings = nullptr) const;
};

struct LinearMap {
  double c0 = 0, c1 = 0;
  double eval(double x) const { return c0 + c1 * x; }
};

struct PlaneMap {
  double c0 = 0, cx = 0, cy = 0;
  double eval(double x, double y) const { return c0 + cx * x + cy * y; }
};

/// Maps fitted to virtual-chassis-dynamometer data. Gear 1 runs with an open
/// torque converter and gets richer fits; locked gears are linear.
struct EmpiricalMaps {
  Poly2D fuel_poly;     ///< (N, T) -> g/s, degree 2 in N, degree 3 in T
  Poly2D speed_gear1;   ///< (N_output, F_wheel) -> N, degree 3 in N_output, 2 in F_wheel
  std::vector<LinearMap> speed_locked;    ///< gears >= 2: N from N_output
  HingeSurface torque_gear1;              ///< (N_output, F_wheel) -> T
  std::vector<PlaneMap> torque_locked;    ///< gears >= 2: T from (N_output, F_wheel)

  void validate(int gears) const;
};

enum class Transmission { Automatic, Manual };

struct PenaltyWeights {
  double w_T = 10.0;   ///< g/(s Nm)
  double w_N = 10.0;   ///< g/rad
  double w_F = 100.0;  ///< g/(s N)
  double w_g = 100.0;  ///< g/s per skipped gear
};

/// One instantaneous vehicle model: immutable after load, safe to evaluate
/// concurrently. Extrapolation diagnostics are tallied per call via
/// MapDiagnostics and merged by the caller.
struct SemiPrincipledVehicle {
  std::string name;
  Transmission transmission = Transmission::Automatic;
  PrincipledConstants constants;
  EmpiricalConstants empirical;
  PrincipledMaps pmaps;
  EmpiricalMaps emaps;
  PenaltyWeights weights;
  /// Manual gear-penalty rate, g/s per m/s of upshift-speed shortfall. Small
  /// enough not to distort fuel but large enough to break gear ties.
  double manual_penalty_rate = 0.01;

  int gear_count() const { return constants.gear_count(); }

  /// Throws ConfigError on hard violations; returns non-fatal warnings.
  std::vector<std::string> validate() const;
};

struct SemiOutput {
  double N = 0;          ///< engine speed, rad/s
  double T = 0;          ///< engine torque, Nm
  double fuel_rate = 0;  ///< g/s
  double N_output = 0;   ///< transmission output speed, rad/s
  double F_wheel = 0;    ///< wheel force, N
  double P_wheel = 0;    ///< W, exactly F_wheel * v
  double P_engine = 0;   ///< W, exactly N * T
  int gear = 1;
  bool feasible = true;
  double penalty = 0;  ///< weighted engine-penalty sum at the chosen gear, g/s
};

/// Per-call tally of out-of-grid map lookups (clamped, never extrapolated).
struct MapDiagnostics {
  std::uint64_t extrapolation_clamps = 0;
};

/// Commanded wheel force at one gear:
///   F = m_general[k] a + R_a v^2 + R_r v + R_g + m_vehicle sin(theta) g.
double wheel_force(const SemiPrincipledVehicle& vehicle, int gear,
                   const OperatingPoint& pt);

/// Piecewise-constant braking downshift schedule K_downshift(v); returns the
/// chosen gear for speed v (1-based). With an empty schedule returns 0,
/// meaning "no override available".
int downshift_gear(const EmpiricalConstants& empirical, int gears, double v);

/// Instantaneous evaluation with automatic-transmission gear scheduling
/// (penalty-weighted objective over gears, braking downshift override, idle
/// short-circuit, fuel cut).
SemiOutput eval(const SemiPrincipledVehicle& vehicle, const OperatingPoint& pt,
                MapDiagnostics* diag = nullptr);

/// Manual-transmission variant: upshift-speed shortfall penalty instead of
/// the integer gear penalty, plus the flat-shift reverse lookup below the
/// alpha_s pedal threshold.
SemiOutput eval_manual(const SemiPrincipledVehicle& vehicle, const OperatingPoint& pt,
                       MapDiagnostics* diag = nullptr);

}  // namespace vem
