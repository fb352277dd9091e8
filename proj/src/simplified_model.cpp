#include "vem/simplified_model.hpp"

#include <algorithm>
#include <cmath>

namespace vem {

namespace {

void require_nonneg(double v, const char* what) {
  if (!(v >= 0) || !std::isfinite(v))
    throw ConfigError(std::string(what) + " must be finite and >= 0");
}

// a_+ = max{a, a_min(v)}. When Q(v) = 0 and P(v) > 0 the parabola in a
// degenerates to a line whose vertex sits at -infinity, so the cap never
// binds (Table 2 has q0 = 0 rows, hit at v = 0).
double a_plus(const SimplifiedParams& p, double v, double a) {
  double qv = p.Q(v);
  double pv = p.P(v);
  if (qv > 0) return std::max(a, -pv / (2.0 * qv));
  if (pv == 0.0) return std::max(a, 0.0);
  return a;
}

double fuel_floor(const SimplifiedParams& p, double v) {
  if (p.duty == Duty::MediumHeavyDuty) return p.h0 + p.h1 * v;
  // Light duty: beta up to the fuel-cut speed, zero beyond it. The fitted
  // a_c(v, theta) describes where the fuel surface reaches zero; it does not
  // enter the evaluation.
  return v <= p.v_c ? p.beta : 0.0;
}

}  // namespace

void SimplifiedParams::validate() const {
  require_nonneg(c0, "c0");
  require_nonneg(c1, "c1");
  require_nonneg(c2, "c2");
  require_nonneg(c3, "c3");
  require_nonneg(p0, "p0");
  require_nonneg(p1, "p1");
  require_nonneg(p2, "p2");
  require_nonneg(q0, "q0");
  require_nonneg(q1, "q1");
  require_nonneg(z0, "z0");
  require_nonneg(z1, "z1");
  require_nonneg(z2, "z2");

  if (!(b1 > 0) || !(b2 > 0)) throw ConfigError("b1 and b2 must be > 0");
  require_nonneg(b3, "b3");
  require_nonneg(b4, "b4");
  require_nonneg(b5, "b5");
  require_nonneg(b6, "b6");

  if (duty == Duty::LightDuty) {
    if (!(v_c > 0) || !(v_c <= 35.0))
      throw ConfigError("light-duty v_c must lie in (0, 35] m/s");
    if (!(beta > 0)) throw ConfigError("light-duty beta must be > 0");
    for (double a : {a0, a1, a2, a3, a4})
      if (!std::isfinite(a)) throw ConfigError("non-finite fuel-cut coefficient");
  } else {
    require_nonneg(h0, "h0");
    require_nonneg(h1, "h1");
  }
}

std::vector<std::string> SimplifiedParams::warnings() const {
  std::vector<std::string> w;
  if (q0 == 0.0 && p0 > 0.0)
    w.push_back(name + ": Q(0) = 0 with P(0) > 0; the acceleration vertex is "
                       "unbounded at v = 0 and the a_+ cap is inactive there");
  return w;
}

SimplifiedEval eval_fuel_rate(const SimplifiedParams& params, const OperatingPoint& pt,
                              bool project, double specific_energy) {
  params.validate();
  require_finite(pt);
  if (specific_energy <= 0.0) specific_energy = default_specific_energy(params.duty);

  SimplifiedEval out;
  if (pt.v < 0) {
    out.fuel_rate = 0.0;
    out.power = 0.0;
    out.feasibility = Feasibility::NegativeSpeed;
    return out;
  }

  double a_eval = pt.a;
  double ceiling = a_max_feasible(params, pt.v, pt.theta);
  if (pt.a > ceiling) {
    out.feasibility = Feasibility::Infeasible;
    if (project) {
      a_eval = ceiling;
      out.projected = true;
    }
  }

  double ap = a_plus(params, pt.v, a_eval);
  double fp = params.C(pt.v) + params.P(pt.v) * ap + params.Q(pt.v) * ap * ap +
              params.Z(pt.v) * pt.theta;
  double fs = std::max(fuel_floor(params, pt.v), fp);
  out.fuel_rate = std::max(fs, 0.0);
  out.power = out.fuel_rate * specific_energy;
  return out;
}

std::vector<SimplifiedEval> eval_fuel_rate_batch(const SimplifiedParams& params,
                                                 const std::vector<OperatingPoint>& pts,
                                                 bool project, double specific_energy) {
  std::vector<SimplifiedEval> out;
  out.reserve(pts.size());
  for (const auto& pt : pts)
    out.push_back(eval_fuel_rate(params, pt, project, specific_energy));
  return out;
}

double fuel_cut_boundary(const SimplifiedParams& params, double v, double theta) {
  if (params.duty != Duty::LightDuty)
    throw UnsupportedOperation(params.name +
                               ": medium/heavy-duty vehicles have no fuel-cut boundary");
  if (!std::isfinite(v) || !std::isfinite(theta))
    throw InputError("fuel_cut_boundary: non-finite input");
  return params.a0 + params.a1 * v + params.a2 * theta + params.a3 * v * v +
         params.a4 * v * theta;
}

double a_min(const SimplifiedParams& params, double v) {
  if (!std::isfinite(v)) throw InputError("a_min: non-finite speed");
  double qv = params.Q(v);
  double pv = params.P(v);
  if (qv > 0) return -pv / (2.0 * qv);
  if (pv == 0.0) return 0.0;
  throw SingularityError(params.name + ": Q(v) = 0 with P(v) > 0 at v = " +
                         std::to_string(v));
}

double a_max_feasible(const SimplifiedParams& params, double v, double theta) {
  if (!std::isfinite(v) || !std::isfinite(theta))
    throw InputError("a_max_feasible: non-finite input");
  if (v < 0) throw InputError("a_max_feasible: negative speed");
  double flat = params.b1;
  if (v > 0) flat = std::min(params.b1, params.b2 / v - params.b3 * v * v);
  return flat - std::min(params.b4, params.b5 + params.b6 * v) * theta;
}

}  // namespace vem
