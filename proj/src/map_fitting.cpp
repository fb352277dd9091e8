#include "vem/map_fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vem/errors.hpp"

namespace vem {

VcdSchedule generate_vcd_schedule(const PrincipledConstants& constants, int gears) {
  constants.validate();
  if (gears <= 0) gears = constants.gear_count();
  if (gears > constants.gear_count())
    throw ConfigError("requested more gears than the vehicle has");

  VcdSchedule s;
  s.v_min.resize(gears);
  s.v_max.resize(gears);
  for (int k = 1; k <= gears; ++k) {
    double ratio = constants.r_tire / (constants.g_r[k - 1] * constants.d_r);
    s.v_min[k - 1] = std::max(constants.N_min * ratio, 0.0);
    s.v_max[k - 1] = std::min(constants.N_max * ratio, 34.0);
    if (s.v_min[k - 1] > s.v_max[k - 1]) {
      s.warnings.push_back("gear " + std::to_string(k) +
                           ": empty speed range, no test cells generated");
      continue;
    }
    for (int i = 0;; ++i) {
      double v = s.v_min[k - 1] + 0.1 * i;
      if (v > s.v_max[k - 1] + 1e-9) break;
      for (int j = 0; j <= 50; ++j)
        s.entries.push_back({k, v, j / 50.0, 10.0, 8.0});
    }
  }
  return s;
}

std::vector<VcdSample> run_vcd(const VcdSchedule& schedule,
                               const PrincipledConstants& constants,
                               const Grid1D& t_wmax_of_v, const VcdOracle& oracle) {
  std::vector<VcdSample> out;
  out.reserve(schedule.entries.size());
  for (const auto& e : schedule.entries) {
    VcdSample s;
    s.gear = e.gear;
    s.v = e.target_speed;
    s.pedal = e.pedal_angle;
    s.N_output = constants.d_r * s.v / constants.r_tire;
    s.F_wheel = s.pedal * t_wmax_of_v.eval(s.v) / constants.r_tire;
    VcdMeasurement m = oracle(s.gear, s.v, s.pedal);
    s.N = m.N;
    s.T = m.T;
    s.fuel = m.fuel;
    s.tc_locked = m.tc_locked;
    out.push_back(s);
  }
  return out;
}

VcdOracle make_vcd_oracle(const SemiPrincipledVehicle& vehicle) {
  return [&vehicle](int gear, double v, double pedal) {
    const auto& c = vehicle.constants;
    double n_output = c.d_r * v / c.r_tire;
    double f_wheel = pedal * vehicle.pmaps.T_wmax_of_v.eval(v) / c.r_tire;
    VcdMeasurement m;
    if (gear == 1) {
      m.N = vehicle.emaps.speed_gear1.eval(n_output, f_wheel);
      m.T = vehicle.emaps.torque_gear1.eval(n_output, f_wheel);
    } else {
      m.N = vehicle.emaps.speed_locked[gear - 2].eval(n_output);
      m.T = vehicle.emaps.torque_locked[gear - 2].eval(n_output, f_wheel);
    }
    m.fuel = vehicle.emaps.fuel_poly.eval(m.N, m.T);
    m.tc_locked = gear > 1;
    return m;
  };
}

FuelMapFit fit_fuel_map(const std::vector<VcdSample>& samples) {
  std::vector<double> n, t, f;
  n.reserve(samples.size());
  for (const auto& s : samples) {
    n.push_back(s.N);
    t.push_back(s.T);
    f.push_back(s.fuel);
  }
  FuelMapFit fit;
  fit.poly = Poly2D::fit(n, t, f, 2, 3, &fit.rms);
  return fit;
}

namespace {

std::vector<VcdSample> gear_samples(const std::vector<VcdSample>& samples, int gear) {
  std::vector<VcdSample> out;
  for (const auto& s : samples)
    if (s.gear == gear) out.push_back(s);
  if (out.empty()) throw FitError("no samples for gear " + std::to_string(gear));
  return out;
}

PlaneMap fit_plane(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& z, double* rms) {
  Eigen::MatrixXd A(x.size(), 3);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[i];
    A(i, 2) = y[i];
    b[i] = z[i];
  }
  std::vector<std::string> names = {"1", "x", "y"};
  Eigen::VectorXd c = olsq(A, b, &names);
  if (rms) *rms = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(x.size()));
  return PlaneMap{c[0], c[1], c[2]};
}

// Least squares of {1, x, y, hinge(x, y)} for a fixed breakline in normalized
// coordinates. Returns squared residual, or nullopt when the breakline does
// not split the samples into two usable groups.
struct HingeCandidate {
  double c0, cx, cy, h;
  double sse;
};

std::optional<HingeCandidate> solve_hinge(const std::vector<double>& u,
                                          const std::vector<double>& w,
                                          const std::vector<double>& z, double phi,
                                          double r) {
  const std::size_t n = u.size();
  double cphi = std::cos(phi), sphi = std::sin(phi);
  std::size_t above = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (u[i] * cphi + w[i] * sphi - r > 0) ++above;
  if (above < 3 || above + 3 > n) return std::nullopt;

  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = u[i] * cphi + w[i] * sphi - r;
    A(i, 0) = 1.0;
    A(i, 1) = u[i];
    A(i, 2) = w[i];
    A(i, 3) = s > 0 ? s : 0.0;
    b[i] = z[i];
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  if (!c.allFinite()) return std::nullopt;
  return HingeCandidate{c[0], c[1], c[2], c[3], (A * c - b).squaredNorm()};
}

}  // namespace

SpeedMapFit fit_engine_speed_map(const std::vector<VcdSample>& samples, int gear) {
  auto gs = gear_samples(samples, gear);
  SpeedMapFit fit;
  fit.gear = gear;
  if (gear == 1) {
    std::vector<double> x, y, z;
    for (const auto& s : gs) {
      x.push_back(s.N_output);
      y.push_back(s.F_wheel);
      z.push_back(s.N);
    }
    fit.gear1 = Poly2D::fit(x, y, z, 3, 2, &fit.rms);
  } else {
    Eigen::MatrixXd A(gs.size(), 2);
    Eigen::VectorXd b(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = gs[i].N_output;
      b[i] = gs[i].N;
    }
    std::vector<std::string> names = {"1", "N_output"};
    Eigen::VectorXd c = olsq(A, b, &names);
    fit.locked = LinearMap{c[0], c[1]};
    fit.rms = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(gs.size()));
  }
  return fit;
}

TorqueMapFit fit_engine_torque_map(const std::vector<VcdSample>& samples, int gear) {
  auto gs = gear_samples(samples, gear);
  TorqueMapFit fit;
  fit.gear = gear;

  std::vector<double> x, y, z;
  for (const auto& s : gs) {
    x.push_back(s.N_output);
    y.push_back(s.F_wheel);
    z.push_back(s.T);
  }

  if (gear >= 2) {
    fit.locked = fit_plane(x, y, z, &fit.rms);
    return fit;
  }

  const std::size_t n = x.size();
  if (n < 8) throw FitError("gear-1 torque fit needs at least 8 samples");

  // Plane initial guess; also the fallback.
  PlaneMap plane = fit_plane(x, y, z, &fit.plane_rms);
  double plane_sse = fit.plane_rms * fit.plane_rms * static_cast<double>(n);

  // Normalize coordinates so the breakline search is scale free.
  auto moments = [](const std::vector<double>& v) {
    double mu = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double var = 0;
    for (double e : v) var += (e - mu) * (e - mu);
    double sd = std::sqrt(var / v.size());
    return std::pair<double, double>{mu, sd > 1e-12 ? sd : 1.0};
  };
  auto [mux, sdx] = moments(x);
  auto [muy, sdy] = moments(y);
  std::vector<double> u(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = (x[i] - mux) / sdx;
    w[i] = (y[i] - muy) / sdy;
  }

  // Breakline search: coarse direction/offset grid, then alternating local
  // refinement of offset and direction.
  double best_sse = std::numeric_limits<double>::infinity();
  double best_phi = 0, best_r = 0;
  HingeCandidate best{0, 0, 0, 0, 0};
  auto consider = [&](double phi, double r) {
    auto cand = solve_hinge(u, w, z, phi, r);
    if (cand && cand->sse < best_sse) {
      best_sse = cand->sse;
      best = *cand;
      best_phi = phi;
      best_r = r;
    }
  };

  std::vector<double> projections(n);
  for (int d = 0; d < 16; ++d) {
    double phi = d * M_PI / 16.0;
    for (std::size_t i = 0; i < n; ++i)
      projections[i] = u[i] * std::cos(phi) + w[i] * std::sin(phi);
    std::sort(projections.begin(), projections.end());
    for (int q = 1; q <= 14; ++q)
      consider(phi, projections[(q * (n - 1)) / 15]);
  }

  bool have_hinge = std::isfinite(best_sse);
  if (have_hinge) {
    // Pattern search around the coarse optimum: probe both breakline
    // parameters at the current scale and shrink only when stuck.
    double dphi = M_PI / 16.0;
    double span = 0.5;
    const double steps[] = {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0};
    for (int iter = 0; iter < 50; ++iter) {
      double prev = best_sse;
      for (double s : steps) consider(best_phi + s * dphi, best_r);
      for (double s : steps) consider(best_phi, best_r + s * span);
      if (prev - best_sse <= 1e-14 * std::max(1.0, prev)) {
        dphi *= 0.5;
        span *= 0.5;
      }
    }
  }

  if (!have_hinge || best_sse > plane_sse * (1 + 1e-12)) {
    fit.plane_fallback = true;
    fit.warnings.push_back("gear-1 piecewise fit did not improve on the plane fit");
    fit.gear1 = HingeSurface{plane.c0, plane.cx, plane.cy, 0.0, 0.0, 0.0};
    fit.rms = fit.plane_rms;
    return fit;
  }

  // Map the normalized hinge back to raw coordinates.
  double dx = std::cos(best_phi) / sdx;
  double dy = std::sin(best_phi) / sdy;
  double rho = best_r + std::cos(best_phi) * mux / sdx + std::sin(best_phi) * muy / sdy;
  double len = std::hypot(dx, dy);
  HingeSurface hs;
  hs.c0 = best.c0 - best.cx * mux / sdx - best.cy * muy / sdy;
  hs.cx = best.cx / sdx;
  hs.cy = best.cy / sdy;
  hs.h = best.h * len;
  hs.phi = std::atan2(dy, dx);
  hs.r = rho / len;
  fit.gear1 = hs;
  fit.rms = std::sqrt(best_sse / static_cast<double>(n));
  return fit;
}

double DriveTrace::dt() const {
  if (points.size() < 2) throw InputError("drive trace needs at least 2 samples");
  return points[1].t - points[0].t;
}

void DriveTrace::validate() const {
  if (points.size() < 2) throw InputError("drive trace needs at least 2 samples");
  double step = points[1].t - points[0].t;
  if (!(step > 0)) throw InputError("drive trace time must increase");
  for (std::size_t i = 1; i < points.size(); ++i) {
    double d = points[i].t - points[i - 1].t;
    if (!(d > 0)) throw InputError("drive trace time must strictly increase");
    if (std::abs(d - step) > 1e-6 * std::max(1.0, step))
      throw InputError("drive trace must be uniformly sampled");
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.t) || !std::isfinite(p.v) || !std::isfinite(p.N) ||
        !std::isfinite(p.T) || !std::isfinite(p.fuel) || !std::isfinite(p.F_wheel))
      throw InputError("non-finite drive trace sample");
    if (p.gear < 1) throw InputError("drive trace gear must be >= 1");
  }
}

std::vector<DownshiftEvent> detect_downshift_events(const DriveTrace& trace) {
  std::vector<DownshiftEvent> events;
  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    const auto& prev = trace.points[i - 1];
    const auto& cur = trace.points[i];
    if (cur.gear == prev.gear - 1 && cur.F_wheel < 0)
      events.push_back({i, prev.gear, cur.gear, cur.v});
  }
  return events;
}

double percentile_nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("percentile of empty set");
  if (!(p > 0) || p > 100) throw InputError("percentile rank must lie in (0, 100]");
  std::sort(values.begin(), values.end());
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  rank = std::max<std::size_t>(rank, 1);
  return values[rank - 1];
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of empty set");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

ExtractedConstants extract_empirical_constants(const DriveTrace& trace,
                                               const ExtractionOptions& options) {
  trace.validate();
  const auto& p = trace.points;
  const std::size_t n = p.size();
  const double dt = trace.dt();
  ExtractedConstants out;

  // Torque slew rate, central differences on the uniform grid.
  std::vector<double> dTdt(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0)
      dTdt[i] = (p[1].T - p[0].T) / dt;
    else if (i == n - 1)
      dTdt[i] = (p[n - 1].T - p[n - 2].T) / dt;
    else
      dTdt[i] = (p[i + 1].T - p[i - 1].T) / (2.0 * dt);
  }

  // Idle set: standstill with torque essentially constant over +-1 s.
  const std::size_t halo = static_cast<std::size_t>(std::llround(1.0 / dt));
  std::vector<double> idle_torque, idle_fuel;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i].v < 0.1)) continue;
    bool steady = true;
    std::size_t lo = i >= halo ? i - halo : 0;
    std::size_t hi = std::min(n - 1, i + halo);
    for (std::size_t j = lo; j <= hi && steady; ++j)
      if (!(std::abs(dTdt[j]) < 0.01)) steady = false;
    if (steady) {
      idle_torque.push_back(p[i].T);
      idle_fuel.push_back(p[i].fuel);
    }
  }
  if (!idle_torque.empty()) {
    out.T_min = median(idle_torque);
    // Running mean: exact for constant sequences, stable otherwise.
    double mean = 0;
    for (std::size_t i = 0; i < idle_fuel.size(); ++i)
      mean += (idle_fuel[i] - mean) / static_cast<double>(i + 1);
    out.f_idle = mean;
  } else {
    out.diagnostics.push_back("no idle samples (v < 0.1 m/s with steady torque)");
  }

  // Fuel-cut thresholds from coasting samples.
  std::vector<double> coast_v, coast_F;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i].fuel < 0.05 && p[i].v > 1.0) {
      coast_v.push_back(p[i].v);
      coast_F.push_back(p[i].F_wheel);
    }
  if (!coast_v.empty()) {
    out.v_c = percentile_nearest_rank(coast_v, 1.0);
    out.F_wc = percentile_nearest_rank(coast_F, 95.0);
  } else {
    out.diagnostics.push_back("no coasting samples (fuel < 0.05 g/s above 1 m/s)");
  }

  // Downshift medians per adjacent gear pair.
  std::map<int, std::vector<double>> by_pair;
  for (const auto& ev : detect_downshift_events(trace))
    by_pair[ev.gear_before].push_back(ev.v);
  for (auto& [gear_before, speeds] : by_pair)
    out.downshift_speeds[gear_before] = median(speeds);
  if (by_pair.empty()) out.diagnostics.push_back("no downshift events in trace");

  // First-gear torque correction: mean (a, underestimation) of the three
  // samples nearest each region's acceleration centroid, line through origin.
  if (options.gear1_torque_model) {
    if (!(options.d_r > 0) || !(options.r_tire > 0))
      throw ConfigError("torque-correction extraction needs d_r and r_tire");
    std::vector<double> accel(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0)
        accel[i] = (p[1].v - p[0].v) / dt;
      else if (i == n - 1)
        accel[i] = (p[n - 1].v - p[n - 2].v) / dt;
      else
        accel[i] = (p[i + 1].v - p[i - 1].v) / (2.0 * dt);
    }
    struct Obs {
      double a, err;
    };
    std::vector<Obs> low, high;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i].gear != 1 || p[i].tc_state != TcState::OpenSteady) continue;
      double n_output = options.d_r * p[i].v / options.r_tire;
      double err = p[i].T - options.gear1_torque_model(n_output, p[i].F_wheel);
      if (accel[i] < 1.0) low.push_back({accel[i], err});
      if (accel[i] > 2.0) high.push_back({accel[i], err});
    }
    auto region_mean = [](std::vector<Obs>& obs) -> std::optional<Obs> {
      if (obs.size() < 3) return std::nullopt;
      double centroid = 0;
      for (const auto& o : obs) centroid += o.a;
      centroid /= static_cast<double>(obs.size());
      std::sort(obs.begin(), obs.end(), [&](const Obs& l, const Obs& r) {
        return std::abs(l.a - centroid) < std::abs(r.a - centroid);
      });
      Obs mean{0, 0};
      for (int i = 0; i < 3; ++i) {
        mean.a += obs[i].a / 3.0;
        mean.err += obs[i].err / 3.0;
      }
      return mean;
    };
    auto lo_mean = region_mean(low);
    auto hi_mean = region_mean(high);
    if (lo_mean && hi_mean) {
      // Slope through the origin over {(0,0), low mean, high mean}.
      double num = lo_mean->a * lo_mean->err + hi_mean->a * hi_mean->err;
      double den = lo_mean->a * lo_mean->a + hi_mean->a * hi_mean->a;
      out.torque_correction = TorqueCorrection{den > 0 ? num / den : 0.0, 0.0};
    } else {
      out.diagnostics.push_back(
          "insufficient open-converter gear-1 samples for torque correction");
    }
  }

  return out;
}

EmpiricalConstants ExtractedConstants::require_complete(int gears) const {
  std::string missing;
  auto need = [&](bool ok, const char* field) {
    if (!ok) missing += std::string(missing.empty() ? "" : ", ") + field;
  };
  need(T_min.has_value(), "T_min");
  need(f_idle.has_value(), "f_idle");
  need(v_c.has_value(), "v_c");
  need(F_wc.has_value(), "F_wc");
  for (int k = 2; k <= gears; ++k)
    need(downshift_speeds.count(k) > 0, ("downshift " + std::to_string(k)).c_str());
  if (!missing.empty())
    throw FitError("incomplete extraction, missing: " + missing);

  EmpiricalConstants e;
  e.T_min = *T_min;
  e.f_idle = *f_idle;
  e.v_c = *v_c;
  e.F_wc = *F_wc;
  for (int k = 2; k <= gears; ++k) e.downshift_speeds.push_back(downshift_speeds.at(k));
  if (torque_correction) e.torque_correction = *torque_correction;
  return e;
}

}  // namespace vem
