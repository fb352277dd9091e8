#include "vem/semi_principled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vem/errors.hpp"

namespace vem {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw ConfigError(std::string(what) + " must be finite and > 0");
}

}  // namespace

void PrincipledConstants::validate(std::vector<std::string>* warnings) const {
  require_positive(m_vehicle, "m_vehicle");
  require_positive(r_tire, "r_tire");
  require_positive(R_a, "R_a");
  require_positive(R_r, "R_r");
  require_positive(R_g, "R_g");
  require_positive(d_r, "d_r");
  require_positive(N_max, "N_max");
  require_positive(N_min, "N_min");
  require_positive(g_const, "g_const");
  if (N_min >= N_max) throw ConfigError("N_min must be below N_max");
  if (g_r.empty()) throw ConfigError("at least one gear ratio required");
  if (m_general.size() != g_r.size())
    throw ConfigError("m_general and g_r must have one entry per gear");
  for (double g : g_r) require_positive(g, "gear ratio");
  for (double m : m_general) {
    require_positive(m, "m_general");
    if (m < m_vehicle)
      throw ConfigError("m_general must be at least m_vehicle in every gear");
  }
  if (warnings) {
    for (std::size_t k = 1; k < g_r.size(); ++k)
      if (g_r[k] >= g_r[k - 1]) {
        warnings->push_back("gear ratios are not strictly decreasing");
        break;
      }
  }
}

void EmpiricalConstants::validate() const {
  require_positive(f_idle, "f_idle");
  require_positive(v_c, "v_c");
  if (!std::isfinite(T_min) || !std::isfinite(F_wc))
    throw ConfigError("non-finite empirical constant");
  for (std::size_t i = 1; i < downshift_speeds.size(); ++i)
    if (downshift_speeds[i] <= downshift_speeds[i - 1])
      throw ConfigError("downshift speeds must increase with gear");
  if (torque_correction.intercept != 0.0)
    throw ConfigError("torque correction must pass through the origin");
}

void PrincipledMaps::validate(int gears, bool manual,
                              std::vector<std::string>* warnings) const {
  if (T_max_of_N.size() == 0) throw ConfigError("T_max_of_N map missing");
  if (T_wmax_of_v.size() == 0) throw ConfigError("T_wmax_of_v map missing");
  if (static_cast<int>(T_wmax_of_v_k.size()) != gears)
    throw ConfigError("T_wmax_of_v_k needs one grid per gear");
  if (!manual && K_upshift.values().empty())
    throw ConfigError("K_upshift map missing");
  if (manual) {
    if (static_cast<int>(V_upshift.size()) != gears ||
        static_cast<int>(V_downshift.size()) != gears)
      throw ConfigError("manual shift maps need one grid per gear");
    if (!(alpha_s > 0) || !(alpha_s <= 1))
      throw ConfigError("alpha_s must lie in (0, 1]");
  }
  if (warnings) {
    // The pedal-angle reference map should dominate the per-gear maxima where
    // their grids overlap.
    for (std::size_t i = 0; i < T_wmax_of_v.size(); ++i) {
      double x = T_wmax_of_v.xs()[i];
      for (const auto& gk : T_wmax_of_v_k) {
        if (x < gk.x_min() || x > gk.x_max()) continue;
        if (gk.eval(x) > T_wmax_of_v.ys()[i] * (1 + 1e-9) + 1e-9) {
          warnings->push_back("T_wmax_of_v below a per-gear maximum at v = " +
                              std::to_string(x));
          break;
        }
      }
    }
  }
}

void EmpiricalMaps::validate(int gears) const {
  if (fuel_poly.deg_x() != 2 || fuel_poly.deg_y() != 3)
    throw ConfigError("fuel map must be degree 2 in N and degree 3 in T");
  if (speed_gear1.deg_x() != 3 || speed_gear1.deg_y() != 2)
    throw ConfigError("gear-1 speed map must be degree 3 in N_output and 2 in F_wheel");
  if (static_cast<int>(speed_locked.size()) != gears - 1 ||
      static_cast<int>(torque_locked.size()) != gears - 1)
    throw ConfigError("locked-gear maps need one entry per gear above 1");
  for (double c : {torque_gear1.c0, torque_gear1.cx, torque_gear1.cy, torque_gear1.h,
                   torque_gear1.phi, torque_gear1.r})
    if (!std::isfinite(c)) throw ConfigError("non-finite gear-1 torque surface");
  // Continuity across the breakline: probe a few points straddling it.
  double nx = std::cos(torque_gear1.phi), ny = std::sin(torque_gear1.phi);
  for (double t : {-1.0, 0.0, 1.0}) {
    double bx = torque_gear1.r * nx - t * ny, by = torque_gear1.r * ny + t * nx;
    double eps = 1e-7 * std::max(1.0, std::abs(torque_gear1.r));
    double lo = torque_gear1.eval(bx - eps * nx, by - eps * ny);
    double hi = torque_gear1.eval(bx + eps * nx, by + eps * ny);
    double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (std::abs(hi - lo) > 1e-4 * scale)
      throw ConfigError("gear-1 torque surface discontinuous across the breakline");
  }
}

std::vector<std::string> SemiPrincipledVehicle::validate() const {
  std::vector<std::string> warnings;
  constants.validate(&warnings);
  empirical.validate();
  pmaps.validate(gear_count(), transmission == Transmission::Manual, &warnings);
  emaps.validate(gear_count());
  if (!empirical.downshift_speeds.empty() &&
      static_cast<int>(empirical.downshift_speeds.size()) != gear_count() - 1)
    throw ConfigError("downshift schedule needs one speed per adjacent gear pair");
  for (double w : {weights.w_T, weights.w_N, weights.w_F, weights.w_g})
    if (!(w >= 0) || !std::isfinite(w)) throw ConfigError("penalty weights must be >= 0");
  if (!(manual_penalty_rate >= 0)) throw ConfigError("manual penalty rate must be >= 0");
  return warnings;
}

double wheel_force(const SemiPrincipledVehicle& vehicle, int gear,
                   const OperatingPoint& pt) {
  const auto& c = vehicle.constants;
  if (gear < 1 || gear > vehicle.gear_count()) throw InputError("gear out of range");
  return c.m_general[gear - 1] * pt.a + c.R_a * pt.v * pt.v + c.R_r * pt.v + c.R_g +
         c.m_vehicle * std::sin(pt.theta) * c.g_const;
}

int downshift_gear(const EmpiricalConstants& empirical, int gears, double v) {
  if (empirical.downshift_speeds.empty()) return 0;
  int gear = 1;
  for (double s : empirical.downshift_speeds)
    if (v >= s) ++gear;
  return std::min(gear, gears);
}

namespace {

struct GearCandidate {
  double N_output = 0;  // post-clamp for gear 1
  double F_wheel = 0;   // post-clamp for gear 1
  double alpha = 0;
  double N = 0, T = 0;
  double fuel = 0;
  bool fuel_cut = false;
  double pen_T = 0, pen_N = 0, pen_F = 0;
  double gear_term = 0;  // weighted gear penalty contribution, g/s
  double objective = 0;
};

GearCandidate evaluate_gear(const SemiPrincipledVehicle& veh, int k,
                            const OperatingPoint& pt, bool manual,
                            std::uint64_t* clamps) {
  const auto& c = veh.constants;
  const auto& e = veh.empirical;
  const auto& pm = veh.pmaps;
  const auto& em = veh.emaps;

  GearCandidate g;
  double n_out = c.d_r * pt.v / c.r_tire;
  double f_raw = wheel_force(veh, k, pt);
  double t_wheel = f_raw * c.r_tire;

  double t_wmax_v = pm.T_wmax_of_v.eval(pt.v, clamps);
  if (t_wmax_v == 0.0)
    throw MapDomainError("pedal angle undefined: T_wmax(v) = 0 at v = " +
                         std::to_string(pt.v));
  g.alpha = t_wheel / t_wmax_v;

  double t_wmax_k = pm.T_wmax_of_v_k[k - 1].eval(pt.v, clamps);
  double f_wmax_k = t_wmax_k / c.r_tire;

  // Open torque converter in gear 1: clamp the map inputs before the lookup.
  g.N_output = n_out;
  g.F_wheel = f_raw;
  if (k == 1) {
    g.N_output = std::min(n_out, c.N_max / c.g_r[0]);
    g.F_wheel = std::min(f_raw, f_wmax_k);
  }

  double n_fit = (k == 1) ? em.speed_gear1.eval(g.N_output, g.F_wheel)
                          : em.speed_locked[k - 2].eval(g.N_output);
  double t_fit = (k == 1) ? em.torque_gear1.eval(g.N_output, g.F_wheel)
                          : em.torque_locked[k - 2].eval(g.N_output, g.F_wheel);
  g.N = std::max(c.N_min, n_fit);
  g.T = std::max(e.T_min, t_fit);
  if (k == 1) g.T += e.torque_correction(std::max(pt.a, 0.0));

  double t_max_k = pm.T_max_of_N.eval(g.N, clamps);

  g.fuel = std::max(0.0, em.fuel_poly.eval(g.N, g.T));
  g.fuel_cut = (pt.v > e.v_c && g.F_wheel < e.F_wc);
  if (g.fuel_cut) g.fuel = 0.0;

  g.pen_N = std::max(0.0, g.N - c.N_max);
  g.pen_T = std::max(0.0, g.T - t_max_k);
  g.pen_F = std::max(0.0, g.F_wheel - f_wmax_k);

  if (manual) {
    double v_up = pm.V_upshift[k - 1].eval(g.alpha, clamps);
    if (pt.v < v_up && !g.fuel_cut)
      g.gear_term = veh.manual_penalty_rate * (v_up - pt.v);
  } else {
    int g_autonomie =
        static_cast<int>(std::llround(pm.K_upshift.cell_value(g.alpha, pt.v, clamps)));
    if (k > 1 && g_autonomie < k && !g.fuel_cut)
      g.gear_term = veh.weights.w_g * static_cast<double>(k - g_autonomie);
  }

  g.objective = g.fuel + veh.weights.w_T * g.pen_T + veh.weights.w_N * g.pen_N +
                veh.weights.w_F * g.pen_F + g.gear_term;
  return g;
}

SemiOutput idle_output(const SemiPrincipledVehicle& veh, const OperatingPoint& pt) {
  SemiOutput out;
  out.N = veh.constants.N_min;
  out.T = veh.empirical.T_min;
  out.fuel_rate = veh.empirical.f_idle;
  out.gear = 1;
  out.N_output = 0.0;
  out.F_wheel = wheel_force(veh, 1, pt);
  out.P_wheel = out.F_wheel * pt.v;
  out.P_engine = out.N * out.T;
  out.feasible = true;
  out.penalty = 0.0;
  return out;
}

SemiOutput finalize(const SemiPrincipledVehicle& veh, const OperatingPoint& pt,
                    const GearCandidate& g, int gear) {
  SemiOutput out;
  out.N = g.N;
  out.T = g.T;
  out.fuel_rate = g.fuel;
  out.N_output = g.N_output;
  out.F_wheel = g.F_wheel;
  out.P_wheel = g.F_wheel * pt.v;
  out.P_engine = g.N * g.T;
  out.gear = gear;
  out.penalty = veh.weights.w_T * g.pen_T + veh.weights.w_N * g.pen_N +
                veh.weights.w_F * g.pen_F;
  out.feasible = (out.penalty == 0.0);
  return out;
}

SemiOutput eval_impl(const SemiPrincipledVehicle& veh, const OperatingPoint& pt,
                     bool manual, MapDiagnostics* diag) {
  require_finite(pt);
  std::uint64_t clamps = 0;

  SemiOutput out;
  if (pt.v == 0.0 && pt.a == 0.0) {
    // Idle is a tuned fixed point, evaluated before any transmission logic.
    out = idle_output(veh, pt);
  } else {
    const int gears = veh.gear_count();
    std::vector<GearCandidate> cand;
    cand.reserve(gears);
    for (int k = 1; k <= gears; ++k)
      cand.push_back(evaluate_gear(veh, k, pt, manual, &clamps));

    int k_best = 1;
    for (int k = 2; k <= gears; ++k)
      if (cand[k - 1].objective < cand[k_best - 1].objective) k_best = k;

    int k_final = k_best;
    if (manual) {
      // Flat-shift region: low pedal angles take the gear implied by the
      // downshift map instead of the optimizer's choice.
      if (cand[k_best - 1].alpha < veh.pmaps.alpha_s) {
        int k_rev = 1;
        for (int k = gears; k >= 1; --k) {
          double v_down = veh.pmaps.V_downshift[k - 1].eval(cand[k_best - 1].alpha, &clamps);
          if (v_down <= pt.v) {
            k_rev = k;
            break;
          }
        }
        k_final = k_rev;
      }
    } else {
      if (cand[k_best - 1].F_wheel < 0.0) {
        int k_down = downshift_gear(veh.empirical, gears, pt.v);
        if (k_down >= 1) k_final = k_down;
      }
    }
    out = finalize(veh, pt, cand[k_final - 1], k_final);
  }

  if (diag) diag->extrapolation_clamps += clamps;
  return out;
}

}  // namespace

SemiOutput eval(const SemiPrincipledVehicle& vehicle, const OperatingPoint& pt,
                MapDiagnostics* diag) {
  return eval_impl(vehicle, pt, /*manual=*/false, diag);
}

SemiOutput eval_manual(const SemiPrincipledVehicle& vehicle, const OperatingPoint& pt,
                       MapDiagnostics* diag) {
  if (vehicle.transmission != Transmission::Manual)
    throw ConfigError(vehicle.name + ": eval_manual requires a manual transmission");
  return eval_impl(vehicle, pt, /*manual=*/true, diag);
}

}  // namespace vem
