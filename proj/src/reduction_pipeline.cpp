#include "vem/reduction_pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "vem/bisect.hpp"
#include "vem/errors.hpp"
#include "vem/nnls.hpp"

namespace vem {

ModelOracle make_oracle(const SimplifiedParams& params) {
  params.validate();
  return [params](double v, double a, double theta) {
    SimplifiedEval e = eval_fuel_rate(params, {v, a, theta});
    return OracleSample{e.fuel_rate, e.feasibility == Feasibility::Feasible};
  };
}

ModelOracle make_oracle(const SemiPrincipledVehicle& vehicle) {
  vehicle.validate();
  const bool manual = vehicle.transmission == Transmission::Manual;
  return [vehicle, manual](double v, double a, double theta) {
    SemiOutput o = manual ? eval_manual(vehicle, {v, a, theta})
                          : eval(vehicle, {v, a, theta});
    return OracleSample{o.fuel_rate, o.feasible};
  };
}

std::size_t CachingOracle::KeyHash::operator()(const Key& k) const {
  auto mix = [](std::size_t h, double d) {
    std::size_t x = std::bit_cast<std::uint64_t>(d);
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  return mix(mix(mix(0, k.v), k.a), k.theta);
}

OracleSample CachingOracle::operator()(double v, double a, double theta) const {
  Key key{v, a, theta};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  OracleSample s = inner_(v, a, theta);
  cache_.emplace(key, s);
  return s;
}

ModelOracle CachingOracle::as_oracle() const {
  return [this](double v, double a, double theta) { return (*this)(v, a, theta); };
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

constexpr double kBisectTol = 1e-4;
constexpr double kProbeDecel = -3.0;   // strong enough to trigger any fuel cut
constexpr double kCeilingLo = -25.0;   // below every plausible ceiling
constexpr double kCeilingHi = 20.0;    // above every plausible ceiling

// Nonnegative least squares wrapper that records the fit in a step report.
Eigen::VectorXd nnls_step(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          StepReport& rep) {
  NnlsResult res;
  try {
    res = nnls(A, b);
  } catch (const FitError& e) {
    throw FitError(rep.step + ": " + e.what());
  }
  rep.rms = b.size() > 0 ? res.residual_norm / std::sqrt(static_cast<double>(b.size()))
                         : 0.0;
  rep.active_constraints = res.active_constraints();
  return res.x;
}

// Light-duty keep rule for fuel-cut exclusion: fuel above the low-speed floor
// below the cut speed, strictly positive fuel at or above it. The comparison
// with beta is strict so samples riding exactly on the floor (which do not
// follow the polynomial surface) drop out of the regression.
bool non_fuel_cut(Duty duty, double v_c, double beta, double v, double fuel) {
  if (duty == Duty::MediumHeavyDuty) return true;
  return v < v_c ? fuel > beta : fuel > 0.0;
}

// Maximum feasible acceleration at (v, theta) by bisection on the feasibility
// flag; nullopt when the oracle has no ceiling below the probe top or is
// infeasible over the whole bracket.
std::optional<double> probe_a_max(const ModelOracle& oracle, double v, double theta) {
  auto feasible = [&](double a) { return oracle(v, a, theta).feasible; };
  if (!feasible(kCeilingLo)) return std::nullopt;
  if (feasible(kCeilingHi)) return std::nullopt;
  return bisect_transition(feasible, kCeilingLo, kCeilingHi, kBisectTol);
}

}  // namespace

DutyDetection detect_duty(const ModelOracle& oracle) {
  auto vs = linspace(0.0, 35.0, 100);
  std::vector<double> fuel(vs.size());
  std::vector<bool> ok(vs.size());
  std::size_t feasible_count = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    OracleSample s = oracle(vs[i], kProbeDecel, 0.0);
    fuel[i] = s.fuel;
    ok[i] = s.feasible;
    if (s.feasible) ++feasible_count;
  }
  if (feasible_count == 0)
    throw FitError("detect_duty: oracle infeasible along the whole probe line");

  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (fuel[i] > 0.0 && fuel[i + 1] <= 0.0) {
      auto burning = [&](double v) { return oracle(v, kProbeDecel, 0.0).fuel > 0.0; };
      auto vc = bisect_transition(burning, vs[i], vs[i + 1], kBisectTol);
      if (vc) return {Duty::LightDuty, *vc};
    }
  }
  return {Duty::MediumHeavyDuty, 35.0};
}

SimplifiedParams fit_simplified(const ModelOracle& oracle,
                                std::optional<DutyDetection> duty_hint,
                                FitReport* report) {
  DutyDetection duty = duty_hint ? *duty_hint : detect_duty(oracle);
  SimplifiedParams out;
  out.duty = duty.duty;
  FitReport local;
  FitReport& rep = report ? *report : local;
  rep.duty = duty.duty;
  rep.v_c = duty.v_c;
  rep.steps.clear();

  // ---- Step 1: fuel floor and (light duty) fuel-cut boundary ----
  if (duty.duty == Duty::LightDuty) {
    out.v_c = duty.v_c;
    out.beta = oracle(0.0, kProbeDecel, 0.0).fuel;
    if (!(out.beta > 0))
      throw FitError("step 1: low-speed fuel floor beta must be positive");

    StepReport s1;
    s1.step = "step1_fuel_cut_boundary";
    auto vs = linspace(duty.v_c + 1.0, 35.0, 50);
    auto thetas = linspace(-0.03, 0.0, 50);
    s1.grid_points = vs.size() * thetas.size();
    std::vector<double> cv, ct, ca;
    for (double v : vs)
      for (double theta : thetas) {
        auto cut = [&](double a) { return oracle(v, a, theta).fuel <= 0.0; };
        if (!cut(kProbeDecel) || cut(1.0)) {
          ++s1.excluded_fuel_cut;  // no crossing on this probe column
          continue;
        }
        auto root = bisect_transition(cut, kProbeDecel, 1.0, kBisectTol);
        if (!root) continue;
        cv.push_back(v);
        ct.push_back(theta);
        ca.push_back(*root);
      }
    s1.used_points = ca.size();
    if (ca.size() < 5) throw FitError("step 1: too few fuel-cut crossings found");
    Eigen::MatrixXd A(ca.size(), 5);
    Eigen::VectorXd b(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = cv[i];
      A(i, 2) = ct[i];
      A(i, 3) = cv[i] * cv[i];
      A(i, 4) = cv[i] * ct[i];
      b[i] = ca[i];
    }
    std::vector<std::string> names = {"1", "v", "theta", "v^2", "v*theta"};
    Eigen::VectorXd c = olsq(A, b, &names);
    out.a0 = c[0];
    out.a1 = c[1];
    out.a2 = c[2];
    out.a3 = c[3];
    out.a4 = c[4];
    s1.rms = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(ca.size()));
    rep.steps.push_back(s1);
  } else {
    StepReport s1;
    s1.step = "step1_fuel_floor";
    auto vs = linspace(0.0, 35.0, 100);
    s1.grid_points = vs.size();
    std::vector<double> kv, kf;
    for (double v : vs) {
      OracleSample s = oracle(v, kProbeDecel, 0.0);
      if (!s.feasible) {
        ++s1.excluded_infeasible;
        continue;
      }
      kv.push_back(v);
      kf.push_back(s.fuel);
    }
    s1.used_points = kv.size();
    if (kv.size() < 2) throw FitError("step 1: fuel-floor probe entirely infeasible");
    Eigen::MatrixXd A(kv.size(), 2);
    Eigen::VectorXd b(kv.size());
    for (std::size_t i = 0; i < kv.size(); ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = kv[i];
      b[i] = kf[i];
    }
    Eigen::VectorXd h = nnls_step(A, b, s1);
    out.h0 = h[0];
    out.h1 = h[1];
    rep.steps.push_back(s1);
  }

  // ---- Step 2: cruising polynomial C(v) ----
  {
    StepReport s2;
    s2.step = "step2_cruise";
    auto vs = linspace(0.0, 35.0, 100);
    s2.grid_points = vs.size();
    std::vector<double> kv, kf;
    for (double v : vs) {
      OracleSample s = oracle(v, 0.0, 0.0);
      if (!s.feasible) {
        ++s2.excluded_infeasible;
        continue;
      }
      kv.push_back(v);
      kf.push_back(s.fuel);
    }
    s2.used_points = kv.size();
    if (kv.size() < 4) throw FitError("step 2: too few feasible cruise points");
    Eigen::MatrixXd A(kv.size(), 4);
    Eigen::VectorXd b(kv.size());
    for (std::size_t i = 0; i < kv.size(); ++i) {
      double v = kv[i];
      A(i, 0) = 1.0;
      A(i, 1) = v;
      A(i, 2) = v * v;
      A(i, 3) = v * v * v;
      b[i] = kf[i];
    }
    Eigen::VectorXd c = nnls_step(A, b, s2);
    out.c0 = c[0];
    out.c1 = c[1];
    out.c2 = c[2];
    out.c3 = c[3];
    rep.steps.push_back(s2);
  }

  // ---- Step 3: linear-in-a slope P(v) around zero acceleration ----
  {
    StepReport s3;
    s3.step = "step3_accel_slope";
    auto vs = linspace(0.0, 35.0, 100);
    double a_lo = duty.duty == Duty::LightDuty ? -0.3 : 0.0;
    auto as = linspace(a_lo, 0.3, 100);
    s3.grid_points = vs.size() * as.size();
    std::vector<double> kv, ka, ky;
    for (double v : vs)
      for (double a : as) {
        OracleSample s = oracle(v, a, 0.0);
        if (!s.feasible) {
          ++s3.excluded_infeasible;
          continue;
        }
        if (!non_fuel_cut(duty.duty, out.v_c, out.beta, v, s.fuel)) {
          ++s3.excluded_fuel_cut;
          continue;
        }
        kv.push_back(v);
        ka.push_back(a);
        ky.push_back(s.fuel - out.C(v));
      }
    s3.used_points = kv.size();
    if (kv.size() < 3) throw FitError("step 3: all grid points excluded");
    Eigen::MatrixXd A(kv.size(), 3);
    Eigen::VectorXd b(kv.size());
    for (std::size_t i = 0; i < kv.size(); ++i) {
      A(i, 0) = ka[i];
      A(i, 1) = kv[i] * ka[i];
      A(i, 2) = kv[i] * kv[i] * ka[i];
      b[i] = ky[i];
    }
    Eigen::VectorXd p = nnls_step(A, b, s3);
    out.p0 = p[0];
    out.p1 = p[1];
    out.p2 = p[2];
    rep.steps.push_back(s3);
  }

  // ---- Step 4: quadratic-in-a curvature Q(v) ----
  {
    StepReport s4;
    s4.step = "step4_accel_curvature";
    auto vs = linspace(0.0, 35.0, 100);
    auto as = linspace(0.0, 3.0, 100);
    s4.grid_points = vs.size() * as.size();
    std::vector<double> kv, ka, ky;
    for (double v : vs)
      for (double a : as) {
        OracleSample s = oracle(v, a, 0.0);
        if (!s.feasible) {
          ++s4.excluded_infeasible;
          continue;
        }
        if (!non_fuel_cut(duty.duty, out.v_c, out.beta, v, s.fuel)) {
          ++s4.excluded_fuel_cut;
          continue;
        }
        kv.push_back(v);
        ka.push_back(a);
        ky.push_back(s.fuel - out.C(v) - out.P(v) * a);
      }
    s4.used_points = kv.size();
    if (kv.size() < 2) throw FitError("step 4: all grid points excluded");
    Eigen::MatrixXd A(kv.size(), 2);
    Eigen::VectorXd b(kv.size());
    for (std::size_t i = 0; i < kv.size(); ++i) {
      A(i, 0) = ka[i] * ka[i];
      A(i, 1) = kv[i] * ka[i] * ka[i];
      b[i] = ky[i];
    }
    Eigen::VectorXd q = nnls_step(A, b, s4);
    out.q0 = q[0];
    out.q1 = q[1];
    rep.steps.push_back(s4);
  }

  // ---- Step 5: grade slope Z(v) on the cruise residual ----
  {
    StepReport s5;
    s5.step = "step5_grade";
    auto vs = linspace(0.0, 35.0, 100);
    double theta_hi = duty.duty == Duty::LightDuty ? 0.03 : 0.02;
    auto thetas = linspace(0.0, theta_hi, 100);
    s5.grid_points = vs.size() * thetas.size();
    std::vector<double> kv, kt, ky;
    for (double v : vs)
      for (double theta : thetas) {
        OracleSample s = oracle(v, 0.0, theta);
        if (!s.feasible) {
          ++s5.excluded_infeasible;
          continue;
        }
        if (!non_fuel_cut(duty.duty, out.v_c, out.beta, v, s.fuel)) {
          ++s5.excluded_fuel_cut;
          continue;
        }
        kv.push_back(v);
        kt.push_back(theta);
        // Residual against the already-fitted flat-road model at a = 0.
        ky.push_back(s.fuel - out.C(v));
      }
    s5.used_points = kv.size();
    if (kv.size() < 3) throw FitError("step 5: all grid points excluded");
    Eigen::MatrixXd A(kv.size(), 3);
    Eigen::VectorXd b(kv.size());
    for (std::size_t i = 0; i < kv.size(); ++i) {
      A(i, 0) = kt[i];
      A(i, 1) = kv[i] * kt[i];
      A(i, 2) = kv[i] * kv[i] * kt[i];
      b[i] = ky[i];
    }
    Eigen::VectorXd z = nnls_step(A, b, s5);
    out.z0 = z[0];
    out.z1 = z[1];
    out.z2 = z[2];
    rep.steps.push_back(s5);
  }

  return out;
}

namespace {

struct BoundarySamples {
  std::vector<double> v;
  std::vector<double> a_max;
};

// Fit min(b1, b2/v - b3 v^2) by profiling the breakpoint over the abscissae:
// the flat coefficient is the mean of the flat region, the curved pair is a
// nonnegative least squares on {1/v, -v^2}.
void fit_speed_ceiling(const BoundarySamples& data, FeasibleRegionFit& fit,
                       StepReport& rep) {
  const std::size_t m = data.v.size();
  if (m < 8) throw FitError("feasible-region step 1: too few boundary samples");

  auto curved_fit = [&](std::size_t first) -> std::optional<std::pair<double, double>> {
    std::size_t rows = 0;
    for (std::size_t j = first; j < m; ++j)
      if (data.v[j] > 0) ++rows;
    if (rows < 2) return std::nullopt;
    Eigen::MatrixXd A(rows, 2);
    Eigen::VectorXd b(rows);
    std::size_t r = 0;
    for (std::size_t j = first; j < m; ++j) {
      if (!(data.v[j] > 0)) continue;
      A(r, 0) = 1.0 / data.v[j];
      A(r, 1) = -data.v[j] * data.v[j];
      b[r] = data.a_max[j];
      ++r;
    }
    Eigen::VectorXd c = nnls(A, b).x;
    return std::make_pair(c[0], c[1]);
  };

  auto sse_of = [&](double b1, double b2, double b3) {
    double sse = 0;
    for (std::size_t j = 0; j < m; ++j) {
      double curve = data.v[j] > 0
                         ? b2 / data.v[j] - b3 * data.v[j] * data.v[j]
                         : std::numeric_limits<double>::infinity();
      double pred = std::min(b1, curve);
      double e = data.a_max[j] - pred;
      sse += e * e;
    }
    return sse;
  };

  double best_sse = std::numeric_limits<double>::infinity();
  double best_b1 = 0, best_b2 = 0, best_b3 = 0;
  for (std::size_t split = 1; split + 2 < m; ++split) {
    double mean = 0;
    for (std::size_t j = 0; j <= split; ++j) mean += data.a_max[j];
    mean /= static_cast<double>(split + 1);
    auto cf = curved_fit(split + 1);
    if (!cf) continue;
    double sse = sse_of(mean, cf->first, cf->second);
    if (sse < best_sse) {
      best_sse = sse;
      best_b1 = mean;
      best_b2 = cf->first;
      best_b3 = cf->second;
    }
  }
  if (!std::isfinite(best_sse))
    throw FitError("feasible-region step 1: breakpoint profiling failed");

  // One refinement round: re-split by the active branch of the fitted model.
  {
    double sum = 0;
    std::size_t cnt = 0;
    std::vector<char> flat(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      double curve = data.v[j] > 0
                         ? best_b2 / data.v[j] - best_b3 * data.v[j] * data.v[j]
                         : std::numeric_limits<double>::infinity();
      flat[j] = curve >= best_b1;
      if (flat[j]) {
        sum += data.a_max[j];
        ++cnt;
      }
    }
    if (cnt >= 2 && cnt + 2 <= m) {
      double b1r = sum / static_cast<double>(cnt);
      std::size_t rows = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (!flat[j] && data.v[j] > 0) ++rows;
      if (rows >= 2) {
        Eigen::MatrixXd A(rows, 2);
        Eigen::VectorXd b(rows);
        std::size_t r = 0;
        for (std::size_t j = 0; j < m; ++j) {
          if (flat[j] || !(data.v[j] > 0)) continue;
          A(r, 0) = 1.0 / data.v[j];
          A(r, 1) = -data.v[j] * data.v[j];
          b[r] = data.a_max[j];
          ++r;
        }
        Eigen::VectorXd c = nnls(A, b).x;
        double sse = sse_of(b1r, c[0], c[1]);
        if (sse < best_sse) {
          best_sse = sse;
          best_b1 = b1r;
          best_b2 = c[0];
          best_b3 = c[1];
        }
      }
    }
  }

  fit.b1 = best_b1;
  fit.b2 = best_b2;
  fit.b3 = best_b3;
  rep.rms = std::sqrt(best_sse / static_cast<double>(m));
  rep.used_points = m;
}

struct GradeRow {
  double v, theta, diff;  // diff = a_max(v, -theta) - a_max(v, +theta)
};

// Fit 2 min(b4, b5 + b6 v) theta to opposite-grade ceiling differences, again
// profiling the breakpoint speed.
void fit_grade_shift(const std::vector<GradeRow>& rows, const std::vector<double>& vs,
                     FeasibleRegionFit& fit, StepReport& rep) {
  if (rows.size() < 8) throw FitError("feasible-region step 2: too few samples");

  auto flat_fit = [&](auto&& in_flat) -> std::optional<double> {
    double num = 0, den = 0;
    std::size_t cnt = 0;
    for (const auto& r : rows)
      if (in_flat(r.v)) {
        num += 2.0 * r.theta * r.diff;
        den += 4.0 * r.theta * r.theta;
        ++cnt;
      }
    if (cnt < 1 || den <= 0) return std::nullopt;
    return std::max(0.0, num / den);
  };
  auto line_fit = [&](auto&& in_line) -> std::optional<std::pair<double, double>> {
    std::size_t cnt = 0;
    for (const auto& r : rows)
      if (in_line(r.v)) ++cnt;
    if (cnt < 2) return std::nullopt;
    Eigen::MatrixXd A(cnt, 2);
    Eigen::VectorXd b(cnt);
    std::size_t i = 0;
    for (const auto& r : rows)
      if (in_line(r.v)) {
        A(i, 0) = 2.0 * r.theta;
        A(i, 1) = 2.0 * r.theta * r.v;
        b[i] = r.diff;
        ++i;
      }
    Eigen::VectorXd c = nnls(A, b).x;
    return std::make_pair(c[0], c[1]);
  };
  auto sse_of = [&](double b4, double b5, double b6) {
    double sse = 0;
    for (const auto& r : rows) {
      double e = r.diff - 2.0 * std::min(b4, b5 + b6 * r.v) * r.theta;
      sse += e * e;
    }
    return sse;
  };

  double best_sse = std::numeric_limits<double>::infinity();
  double b4 = 0, b5 = 0, b6 = 0;
  for (std::size_t s = 1; s + 1 < vs.size(); ++s) {
    double v_split = vs[s];
    auto lf = line_fit([&](double v) { return v < v_split; });
    auto ff = flat_fit([&](double v) { return v >= v_split; });
    if (!lf || !ff) continue;
    double sse = sse_of(*ff, lf->first, lf->second);
    if (sse < best_sse) {
      best_sse = sse;
      b4 = *ff;
      b5 = lf->first;
      b6 = lf->second;
    }
  }
  // Degenerate but legitimate case: the line branch covers every speed.
  {
    auto lf = line_fit([](double) { return true; });
    if (lf) {
      double b4_cap = lf->first + lf->second * 1e3;  // inactive flat branch
      double sse = sse_of(b4_cap, lf->first, lf->second);
      if (sse < best_sse) {
        best_sse = sse;
        b4 = b4_cap;
        b5 = lf->first;
        b6 = lf->second;
      }
    }
  }
  if (!std::isfinite(best_sse))
    throw FitError("feasible-region step 2: breakpoint profiling failed");

  // One refinement round by active branch.
  {
    auto lf = line_fit([&](double v) { return b5 + b6 * v <= b4; });
    auto ff = flat_fit([&](double v) { return b5 + b6 * v > b4; });
    if (lf && ff) {
      double sse = sse_of(*ff, lf->first, lf->second);
      if (sse < best_sse) {
        best_sse = sse;
        b4 = *ff;
        b5 = lf->first;
        b6 = lf->second;
      }
    }
  }

  fit.b4 = b4;
  fit.b5 = b5;
  fit.b6 = b6;
  rep.rms = std::sqrt(best_sse / static_cast<double>(rows.size()));
  rep.used_points = rows.size();
}

}  // namespace

FeasibleRegionFit fit_feasible_region(const ModelOracle& oracle, FitReport* report) {
  FeasibleRegionFit fit;
  FitReport local;
  FitReport& rep = report ? *report : local;

  // ---- Step 1: flat-road ceiling over v in [0, 70] ----
  StepReport s1;
  s1.step = "feasible_step1_speed_ceiling";
  auto vs1 = linspace(0.0, 70.0, 500);
  s1.grid_points = vs1.size();
  BoundarySamples data;
  std::size_t no_ceiling = 0;
  for (double v : vs1) {
    auto am = probe_a_max(oracle, v, 0.0);
    if (!am) {
      if (oracle(v, kCeilingHi, 0.0).feasible) ++no_ceiling;
      ++s1.excluded_infeasible;
      continue;
    }
    data.v.push_back(v);
    data.a_max.push_back(*am);
  }
  if (data.v.empty())
    throw FitError(no_ceiling > 0
                       ? "fit_feasible_region: oracle has no acceleration ceiling "
                         "below 20 m/s^2"
                       : "fit_feasible_region: no usable boundary samples");
  fit_speed_ceiling(data, fit, s1);
  rep.steps.push_back(s1);

  // ---- Step 2: grade shift from opposite-grade ceiling differences ----
  StepReport s2;
  s2.step = "feasible_step2_grade_shift";
  auto vs2 = linspace(0.0, 35.0, 200);
  auto thetas = linspace(-0.03, 0.03, 150);
  s2.grid_points = vs2.size() * thetas.size();
  std::vector<GradeRow> rows;
  for (double v : vs2) {
    // The 150-point symmetric grid pairs thetas[j] with thetas[149-j] = -thetas[j].
    for (std::size_t j = 0; j < thetas.size() / 2; ++j) {
      double theta_neg = thetas[j];
      double theta_pos = thetas[thetas.size() - 1 - j];
      auto hi = probe_a_max(oracle, v, theta_neg);
      auto lo = probe_a_max(oracle, v, theta_pos);
      if (!hi || !lo) {
        ++s2.excluded_infeasible;
        continue;
      }
      rows.push_back({v, theta_pos, *hi - *lo});
    }
  }
  fit_grade_shift(rows, vs2, fit, s2);
  rep.steps.push_back(s2);
  return fit;
}

SimplifiedParams fit_model(const ModelOracle& oracle, FitReport* report,
                           const std::string& name) {
  CachingOracle cache(oracle);
  ModelOracle cached = cache.as_oracle();
  DutyDetection duty = detect_duty(cached);
  SimplifiedParams params = fit_simplified(cached, duty, report);
  FeasibleRegionFit fr = fit_feasible_region(cached, report);
  params.b1 = fr.b1;
  params.b2 = fr.b2;
  params.b3 = fr.b3;
  params.b4 = fr.b4;
  params.b5 = fr.b5;
  params.b6 = fr.b6;
  params.name = name;
  params.validate();
  return params;
}

}  // namespace vem
