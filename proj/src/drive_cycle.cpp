#include "vem/drive_cycle.hpp"

#include <algorithm>
#include <cmath>

#include "vem/csv.hpp"
#include "vem/errors.hpp"

namespace vem {

void DriveCycle::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.v) || !std::isfinite(s.theta))
      throw ParseError(name + ": non-finite sample", static_cast<long>(i + 1));
    if (s.v < 0) throw ParseError(name + ": negative speed", static_cast<long>(i + 1));
    if (i > 0 && !(s.t > samples[i - 1].t))
      throw ParseError(name + ": time must strictly increase", static_cast<long>(i + 1));
  }
}

DriveCycle load_cycle(const std::filesystem::path& path) {
  csv::Table table = csv::read_table(path);
  int ct = table.column("t");
  int cv = table.column("v");
  int cth = table.column("theta");
  if (ct < 0 || cv < 0)
    throw ParseError(path.string() + ": cycle header must contain t and v");

  DriveCycle cycle;
  cycle.name = path.stem().string();
  cycle.source = cycle.name;
  cycle.samples.reserve(table.rows.size());
  for (const auto& row : table.rows)
    cycle.samples.push_back({row[ct], row[cv], cth >= 0 ? row[cth] : 0.0});
  cycle.validate();
  return cycle;
}

double grade_warning_bound(const DriveCycle& cycle) {
  // Heavy-duty cycle families keep a narrower validated grade range.
  std::string tag = cycle.source.empty() ? cycle.name : cycle.source;
  std::transform(tag.begin(), tag.end(), tag.begin(), ::tolower);
  if (tag.find("hhddt") != std::string::npos || tag.find("heavy") != std::string::npos)
    return 0.02;
  return 0.03;
}

DriveCycle with_constant_grade(const DriveCycle& cycle, double theta,
                               std::string* warning) {
  if (!std::isfinite(theta)) throw InputError("with_constant_grade: non-finite grade");
  double bound = grade_warning_bound(cycle);
  if (warning && std::abs(theta) > bound)
    *warning = cycle.name + ": grade " + csv::format_double(theta) +
               " rad exceeds the validated range [-" + csv::format_double(bound) +
               ", " + csv::format_double(bound) + "] rad";
  DriveCycle out = cycle;
  for (auto& s : out.samples) s.theta = theta;
  return out;
}

std::vector<double> derive_acceleration(const DriveCycle& cycle) {
  const auto& s = cycle.samples;
  if (s.size() < 2) throw InputError("derive_acceleration: need at least 2 samples");
  std::vector<double> a(s.size());
  const std::size_t n = s.size();
  a[0] = (s[1].v - s[0].v) / (s[1].t - s[0].t);
  a[n - 1] = (s[n - 1].v - s[n - 2].v) / (s[n - 1].t - s[n - 2].t);
  for (std::size_t i = 1; i + 1 < n; ++i)
    a[i] = (s[i + 1].v - s[i - 1].v) / (s[i + 1].t - s[i - 1].t);
  return a;
}

TripResult integrate_fuel(const CycleModel& model, const DriveCycle& cycle) {
  TripResult out;
  if (cycle.samples.empty()) return out;
  if (cycle.samples.size() == 1) {
    ModelSample m = model({cycle.samples[0].v, 0.0, cycle.samples[0].theta});
    out.fuel_rate.push_back(m.fuel_rate);
    if (!m.feasible) ++out.infeasible_samples;
    return out;
  }
  auto accel = derive_acceleration(cycle);
  out.fuel_rate.reserve(cycle.samples.size());
  for (std::size_t i = 0; i < cycle.samples.size(); ++i) {
    const auto& s = cycle.samples[i];
    ModelSample m = model({s.v, accel[i], s.theta});
    out.fuel_rate.push_back(m.fuel_rate);
    if (!m.feasible) ++out.infeasible_samples;
  }
  for (std::size_t i = 1; i < cycle.samples.size(); ++i) {
    double dt = cycle.samples[i].t - cycle.samples[i - 1].t;
    out.total_fuel_g += 0.5 * (out.fuel_rate[i - 1] + out.fuel_rate[i]) * dt;
  }
  return out;
}

RealizabilityResult realizability(const DriveCycle& target,
                                  const std::vector<double>& achieved_speed) {
  if (target.samples.size() != achieved_speed.size())
    throw InputError("realizability: trace lengths differ");
  if (target.samples.empty()) return {true, 0.0};
  std::size_t violations = 0;
  for (std::size_t i = 0; i < achieved_speed.size(); ++i)
    if (std::abs(target.samples[i].v - achieved_speed[i]) >= kRealizabilitySpeedTol)
      ++violations;
  RealizabilityResult r;
  r.violation_fraction =
      static_cast<double>(violations) / static_cast<double>(achieved_speed.size());
  r.realizable = r.violation_fraction <= 0.25;
  return r;
}

std::vector<double> moving_average(const std::vector<double>& series, double dt,
                                   double window_s) {
  if (!(dt > 0)) throw InputError("moving_average: nonpositive sample step");
  if (series.empty()) return {};
  const long n = static_cast<long>(series.size());
  const long half = static_cast<long>(std::llround(window_s / (2.0 * dt)));
  std::vector<double> out(series.size());
  // Prefix sums keep this O(n) for the long cycles.
  std::vector<double> prefix(series.size() + 1, 0.0);
  for (long i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series[i];
  for (long i = 0; i < n; ++i) {
    long lo = std::max<long>(0, i - half);
    long hi = std::min<long>(n - 1, i + half);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

double relative_error_pct(double model_total, double reference_total) {
  if (reference_total == 0.0)
    throw InputError("relative error undefined for zero reference fuel");
  return (model_total - reference_total) / reference_total * 100.0;
}

}  // namespace vem
