#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vem/semi_principled.hpp"

namespace vem {

/// One steady-state dynamometer cell: hold (gear, speed, pedal) for dwell_s
/// seconds and capture capture_at_s seconds in.
struct VcdEntry {
  int gear = 1;
  double target_speed = 0;  ///< m/s
  double pedal_angle = 0;   ///< fraction in [0, 1]
  double dwell_s = 10.0;
  double capture_at_s = 8.0;
};

struct VcdSchedule {
  std::vector<VcdEntry> entries;  ///< speed-major, then pedal, gear by gear
  std::vector<double> v_min;      ///< per-gear lower speed bound
  std::vector<double> v_max;      ///< per-gear upper speed bound
  std::vector<std::string> warnings;
};

/// Gear-by-gear test schedule:
///   v_min^k = max(N_min r_tire / (g_r^k d_r), 0),
///   v_max^k = min(N_max r_tire / (g_r^k d_r), 34 m/s),
/// speeds in 0.1 m/s increments, pedal angles 0..1 in 0.02 increments.
/// A gear with v_min above v_max yields no entries and a warning.
VcdSchedule generate_vcd_schedule(const PrincipledConstants& constants, int gears = 0);

struct VcdSample {
  int gear = 1;
  double v = 0;
  double pedal = 0;
  double N = 0;         ///< engine speed, rad/s
  double T = 0;         ///< engine torque, Nm
  double fuel = 0;      ///< g/s
  double N_output = 0;  ///< rad/s
  double F_wheel = 0;   ///< N
  bool tc_locked = false;
};

/// What a black-box plant reports for one steady cell.
struct VcdMeasurement {
  double N = 0, T = 0, fuel = 0;
  bool tc_locked = false;
};
using VcdOracle = std::function<VcdMeasurement(int gear, double v, double pedal)>;

/// Drives an oracle through the schedule. Transmission output speed and wheel
/// force are reconstructed from the principled constants and the pedal-angle
/// reference map (F_wheel = pedal * T_wmax(v) / r_tire).
std::vector<VcdSample> run_vcd(const VcdSchedule& schedule,
                               const PrincipledConstants& constants,
                               const Grid1D& t_wmax_of_v, const VcdOracle& oracle);

/// Raw-map plant of a vehicle: evaluates the empirical maps directly, without
/// the model-side floors or the torque correction. This is what a
/// dynamometer measures when the plant itself is polynomial.
VcdOracle make_vcd_oracle(const SemiPrincipledVehicle& vehicle);

struct FuelMapFit {
  Poly2D poly;  ///< degrees (2, 3) in (N, T)
  double rms = 0;
};

/// Ordinary least squares of the fuel map over the full tensor basis
/// {N^i T^j : i <= 2, j <= 3}. Rank-deficient designs throw FitError naming
/// the deficient directions.
FuelMapFit fit_fuel_map(const std::vector<VcdSample>& samples);

struct SpeedMapFit {
  int gear = 1;
  Poly2D gear1;      ///< set when gear == 1, degrees (3, 2) in (N_output, F_wheel)
  LinearMap locked;  ///< set when gear >= 2
  double rms = 0;
};
SpeedMapFit fit_engine_speed_map(const std::vector<VcdSample>& samples, int gear);

struct TorqueMapFit {
  int gear = 1;
  HingeSurface gear1;  ///< set when gear == 1
  PlaneMap locked;     ///< set when gear >= 2
  double rms = 0;
  double plane_rms = 0;  ///< residual of the plane initial guess (gear 1)
  bool plane_fallback = false;
  std::vector<std::string> warnings;
};
/// Gear 1: continuous two-facet piecewise-linear surface, seeded by a plane
/// fit and refined by alternating breakline/facet least squares (at most 50
/// rounds). Locked gears: plane in (N_output, F_wheel).
TorqueMapFit fit_engine_torque_map(const std::vector<VcdSample>& samples, int gear);

enum class TcState : int { Locked = 0, OpenSteady = 1, OpenTransient = 2 };

struct TracePoint {
  double t = 0;
  double v = 0;
  int gear = 1;
  double N = 0;
  double T = 0;
  double fuel = 0;
  double F_wheel = 0;
  TcState tc_state = TcState::Locked;
};

/// Uniformly sampled drive-cycle measurement record.
struct DriveTrace {
  std::vector<TracePoint> points;

  double dt() const;
  void validate() const;
};

struct DownshiftEvent {
  std::size_t index = 0;  ///< sample at which the reduced gear is first seen
  int gear_before = 0;
  int gear_after = 0;
  double v = 0;
};

/// Downshift events: gear decreases by exactly one between consecutive
/// samples while the wheel force at the event sample is negative.
std::vector<DownshiftEvent> detect_downshift_events(const DriveTrace& trace);

struct ExtractionOptions {
  /// Gear-1 torque prediction (N_output, F_wheel) -> Nm used to measure the
  /// underestimation the torque correction compensates. Leave unset to skip
  /// torque-correction extraction.
  std::function<double(double, double)> gear1_torque_model;
  double d_r = 0;     ///< needed with gear1_torque_model
  double r_tire = 0;  ///< needed with gear1_torque_model
};

/// Extraction result with per-field absence: a trace lacking idle, coasting,
/// or downshift coverage yields absent fields and diagnostics, not a failure.
struct ExtractedConstants {
  std::optional<double> T_min;
  std::optional<double> f_idle;
  std::optional<double> v_c;
  std::optional<double> F_wc;
  std::map<int, double> downshift_speeds;  ///< key: gear before the k -> k-1 event
  std::optional<TorqueCorrection> torque_correction;
  std::vector<std::string> diagnostics;

  /// Converts to EmpiricalConstants; throws FitError listing absent fields.
  EmpiricalConstants require_complete(int gears) const;
};

ExtractedConstants extract_empirical_constants(const DriveTrace& trace,
                                               const ExtractionOptions& options = {});

/// Nearest-rank percentile: the smallest sorted value whose rank is at least
/// ceil(p/100 * n). p in (0, 100].
double percentile_nearest_rank(std::vector<double> values, double p);

/// Median: middle order statistic, mean of the two middle ones for even n.
double median(std::vector<double> values);

}  // namespace vem
