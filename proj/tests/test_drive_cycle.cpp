#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vem/drive_cycle.hpp"
#include "vem/errors.hpp"

using namespace vem;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

DriveCycle ramp_cycle(double t_end, double dt, double slope) {
  DriveCycle c;
  c.name = "ramp";
  for (double t = 0; t <= t_end + 1e-9; t += dt) c.samples.push_back({t, slope * t, 0});
  return c;
}

}  // namespace

TEST_CASE("cycle loading") {
  auto p = write_temp("vem_cycle_ok.csv", "t,v\n0,0\n1,1\n");
  DriveCycle c = load_cycle(p);
  CHECK(c.samples.size() == 2);
  CHECK(c.samples[1].v == 1.0);
  CHECK(c.samples[0].theta == 0.0);
  CHECK(c.samples[1].theta == 0.0);

  auto bad = write_temp("vem_cycle_bad.csv", "t,v\n0,0\n1,1\n1,2\n");
  try {
    load_cycle(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
  }

  auto neg = write_temp("vem_cycle_neg.csv", "t,v\n0,0\n1,-1\n");
  CHECK_THROWS_AS(load_cycle(neg), ParseError);

  auto with_theta = write_temp("vem_cycle_theta.csv", "t,v,theta\n0,0,0.01\n1,1,0.02\n");
  DriveCycle ct = load_cycle(with_theta);
  CHECK(ct.samples[0].theta == 0.01);
  CHECK(ct.samples[1].theta == 0.02);
}

TEST_CASE("constant-grade construction") {
  DriveCycle c = ramp_cycle(10, 1, 1.0);

  std::string warning;
  DriveCycle flat = with_constant_grade(c, 0.0, &warning);
  CHECK(warning.empty());
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    CHECK(flat.samples[i].t == c.samples[i].t);
    CHECK(flat.samples[i].v == c.samples[i].v);
    CHECK(flat.samples[i].theta == 0.0);
  }

  DriveCycle graded = with_constant_grade(c, 0.02, &warning);
  CHECK(warning.empty());
  for (const auto& s : graded.samples) CHECK(s.theta == 0.02);

  with_constant_grade(c, 0.05, &warning);
  CHECK_FALSE(warning.empty());

  // Heavy-duty cycle families validate a narrower range.
  DriveCycle heavy = c;
  heavy.name = heavy.source = "hhddt_cruise_like";
  warning.clear();
  with_constant_grade(heavy, 0.025, &warning);
  CHECK_FALSE(warning.empty());
  CHECK(grade_warning_bound(heavy) == 0.02);
}

TEST_CASE("acceleration differencing") {
  DriveCycle lin = ramp_cycle(10, 0.5, 2.0);
  for (double a : derive_acceleration(lin)) CHECK(a == doctest::Approx(2.0).epsilon(1e-12));

  DriveCycle flat = ramp_cycle(10, 1, 0.0);
  for (double a : derive_acceleration(flat)) CHECK(a == 0.0);

  // v = t^2: central differences of a quadratic are exact in the interior.
  DriveCycle quad;
  quad.name = "quad";
  const double h = 0.25;
  for (double t = 0; t <= 5 + 1e-9; t += h) quad.samples.push_back({t, t * t, 0});
  auto a = derive_acceleration(quad);
  for (std::size_t i = 1; i + 1 < quad.samples.size(); ++i)
    CHECK(a[i] == doctest::Approx(2.0 * quad.samples[i].t).epsilon(1e-12));

  DriveCycle single;
  single.samples.push_back({0, 0, 0});
  CHECK_THROWS_AS(derive_acceleration(single), InputError);
}

TEST_CASE("trip fuel integration") {
  CycleModel half_gram = [](const OperatingPoint&) { return ModelSample{0.5, true}; };
  DriveCycle c = ramp_cycle(100, 1, 0.1);
  TripResult r = integrate_fuel(half_gram, c);
  CHECK(r.total_fuel_g == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(r.infeasible_samples == 0);

  DriveCycle point;
  point.samples.push_back({0, 5, 0});
  CHECK(integrate_fuel(half_gram, point).total_fuel_g == 0.0);

  // Rate rising linearly 0 -> 1 g/s over 10 s integrates to exactly 5 g.
  CycleModel speed_rate = [](const OperatingPoint& pt) {
    return ModelSample{pt.v, true};
  };
  DriveCycle ramp10 = ramp_cycle(10, 1, 0.1);  // v = 0.1 t, rate 0..1
  CHECK(integrate_fuel(speed_rate, ramp10).total_fuel_g ==
        doctest::Approx(5.0).epsilon(1e-12));

  CycleModel sometimes = [](const OperatingPoint& pt) {
    return ModelSample{0.2, pt.v < 0.55};
  };
  TripResult t2 = integrate_fuel(sometimes, ramp10);
  CHECK(t2.infeasible_samples == 5);
}

TEST_CASE("trip integration is additive over concatenation") {
  CycleModel m = [](const OperatingPoint& pt) { return ModelSample{0.1 + 0.02 * pt.v, true}; };
  DriveCycle whole = ramp_cycle(20, 0.5, 0.3);
  DriveCycle head, tail;
  head.name = tail.name = "part";
  const std::size_t split = 17;
  for (std::size_t i = 0; i <= split; ++i) head.samples.push_back(whole.samples[i]);
  for (std::size_t i = split; i < whole.samples.size(); ++i)
    tail.samples.push_back(whole.samples[i]);
  double sum = integrate_fuel(m, head).total_fuel_g + integrate_fuel(m, tail).total_fuel_g;
  CHECK(sum == doctest::Approx(integrate_fuel(m, whole).total_fuel_g).epsilon(1e-12));
}

TEST_CASE("realizability criterion") {
  DriveCycle c = ramp_cycle(99, 1, 0.2);
  std::vector<double> same;
  for (const auto& s : c.samples) same.push_back(s.v);
  auto r = realizability(c, same);
  CHECK(r.realizable);
  CHECK(r.violation_fraction == 0.0);

  std::vector<double> off;
  for (const auto& s : c.samples) off.push_back(s.v + 1.0);  // 1 m/s > 0.89408 m/s
  r = realizability(c, off);
  CHECK_FALSE(r.realizable);
  CHECK(r.violation_fraction == 1.0);

  // Exactly 25% violating sits on the inclusive boundary.
  std::vector<double> quarter = same;
  for (std::size_t i = 0; i < quarter.size() / 4; ++i) quarter[i] += 2.0;
  r = realizability(c, quarter);
  CHECK(r.violation_fraction == 0.25);
  CHECK(r.realizable);

  quarter[quarter.size() / 4] += 2.0;
  r = realizability(c, quarter);
  CHECK_FALSE(r.realizable);

  std::vector<double> short_trace(10, 0.0);
  CHECK_THROWS_AS(realizability(c, short_trace), InputError);

  // Threshold is exactly 2 mi/h at 1609.344 m per mile.
  CHECK(kRealizabilitySpeedTol == doctest::Approx(0.89408).epsilon(1e-12));
}

TEST_CASE("moving-window averaging") {
  std::vector<double> constant(200, 3.25);
  auto avg = moving_average(constant, 1.0, 20.0);
  for (double x : avg) CHECK(x == doctest::Approx(3.25).epsilon(1e-12));

  std::vector<double> impulse(201, 0.0);
  impulse[100] = 1.0;
  avg = moving_average(impulse, 1.0, 20.0);
  for (int i = 0; i < 201; ++i) {
    if (i >= 90 && i <= 110)
      CHECK(avg[i] == doctest::Approx(1.0 / 21.0).epsilon(1e-12));
    else
      CHECK(avg[i] == 0.0);
  }

  std::vector<double> shorty = {1, 2, 3, 4};
  avg = moving_average(shorty, 1.0, 20.0);
  for (double x : avg) CHECK(x == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("relative-error swap identity") {
  for (double m : {50.0, 80.0, 120.0})
    for (double r : {40.0, 100.0}) {
      double e = relative_error_pct(m, r);
      double swapped = relative_error_pct(r, m);
      CHECK(swapped == doctest::Approx(-e / (1.0 + e / 100.0)).epsilon(1e-12));
    }
  CHECK_THROWS_AS(relative_error_pct(1.0, 0.0), InputError);
}
