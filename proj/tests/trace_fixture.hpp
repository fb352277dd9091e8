#pragma once

// Synthetic drive trace with planted order statistics:
//   - idle block: constant fuel 0.3 g/s, torque 30 Nm at standstill
//   - gear-1 launch blocks at accelerations 0.5 and 2.5 m/s^2 with a known
//     linear torque underestimation (slope 12 Nm per m/s^2)
//   - coast block at speeds {6..20} m/s with zero fuel and F_wheel = -100 - v
//   - three 3->2 downshift events at speeds 4, 5, 6 m/s while braking
// Expected extraction: f_idle = 0.3, T_min = 30, v_c = 6 (1st percentile,
// nearest rank), F_wc = -106 (95th percentile), downshift median 3->2 = 5.

#include <vector>

#include "vem/map_fitting.hpp"

namespace vemtest {

struct PlantedTrace {
  vem::DriveTrace trace;
  double f_idle = 0.3;
  double T_min = 30.0;
  double v_c = 6.0;
  double F_wc = -106.0;
  double downshift_median_3_2 = 5.0;
  double torque_correction_slope = 12.0;
};

inline double fixture_gear1_torque_model(double n_output, double f_wheel) {
  return 10.0 + 0.05 * n_output + 0.04 * f_wheel;
}

inline PlantedTrace make_planted_trace() {
  using namespace vem;
  PlantedTrace out;
  std::vector<TracePoint>& p = out.trace.points;
  double t = 0;
  const double d_r = 3.6, r_tire = 0.3;

  auto push = [&](double v, int gear, double N, double T, double fuel, double F,
                  TcState tc) {
    p.push_back({t, v, gear, N, T, fuel, F, tc});
    t += 1.0;
  };

  // Idle block: 30 s of standstill with constant torque.
  for (int i = 0; i < 30; ++i) push(0.0, 1, 80, out.T_min, out.f_idle, 110, TcState::OpenTransient);

  // Low-acceleration gear-1 launch: v ramps at 0.5 m/s^2; interior samples
  // are flagged open/steady so the extraction selects them.
  for (int i = 0; i <= 10; ++i) {
    double v = 0.5 * i;
    double F = 900.0;
    double n_output = d_r * v / r_tire;
    double T = fixture_gear1_torque_model(n_output, F) +
               out.torque_correction_slope * 0.5;
    push(v, 1, 150, T, 0.8, F,
         (i >= 2 && i <= 8) ? TcState::OpenSteady : TcState::OpenTransient);
  }

  // High-acceleration gear-1 launch: fresh ramp at 2.5 m/s^2.
  for (int i = 0; i <= 8; ++i) {
    double v = 2.5 * i;
    double F = 4200.0;
    double n_output = d_r * v / r_tire;
    double T = fixture_gear1_torque_model(n_output, F) +
               out.torque_correction_slope * 2.5;
    push(v, 1, 260, T, 2.2, F,
         (i >= 2 && i <= 6) ? TcState::OpenSteady : TcState::OpenTransient);
  }

  // Cruise in gear 3 (keeps fuel above the coasting threshold).
  for (int i = 0; i < 5; ++i) push(21.0, 3, 320, 140, 1.5, 500, TcState::Locked);

  // Coasting block: zero fuel, planted speeds 20 down to 6.
  for (int v = 20; v >= 6; --v)
    push(static_cast<double>(v), 3, 200, 25, 0.0, -100.0 - v, TcState::Locked);

  // Three braking episodes with a single 3->2 downshift each. The event
  // speed is the speed at the first sample in the lower gear.
  for (double ev : {4.0, 5.0, 6.0}) {
    push(ev + 2.0, 3, 180, 40, 0.1, -300, TcState::Locked);
    push(ev + 1.0, 3, 170, 40, 0.1, -300, TcState::Locked);
    push(ev, 2, 160, 40, 0.1, -250, TcState::Locked);
    push(ev - 1.0, 2, 150, 40, 0.1, -200, TcState::Locked);
    // recover speed in gear 3 for the next episode (upshifts are not events)
    push(ev + 4.0, 3, 200, 60, 0.9, 800, TcState::Locked);
  }

  return out;
}

}  // namespace vemtest
