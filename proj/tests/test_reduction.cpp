#include <cmath>

#include "doctest.h"
#include "vem/errors.hpp"
#include "vem/grid_export.hpp"
#include "vem/json_io.hpp"
#include "vem/reduction_pipeline.hpp"

using namespace vem;

namespace {

SimplifiedParams load_bundled(const std::string& file) {
  return load_simplified_params(std::string(VEM_DATA_DIR) + "/vehicles/" + file);
}

}  // namespace

TEST_CASE("duty detection on the bundled portfolio") {
  auto compact = detect_duty(make_oracle(load_bundled("compact_sedan.json")));
  CHECK(compact.duty == Duty::LightDuty);
  CHECK(compact.v_c == doctest::Approx(5.040).epsilon(5e-5));

  auto suv = detect_duty(make_oracle(load_bundled("midsize_suv.json")));
  CHECK(suv.duty == Duty::LightDuty);
  CHECK(suv.v_c == doctest::Approx(9.160).epsilon(5e-5));

  auto class8 = detect_duty(make_oracle(load_bundled("class8_tractor.json")));
  CHECK(class8.duty == Duty::MediumHeavyDuty);
  CHECK(class8.v_c == 35.0);
}

TEST_CASE("duty detection edge oracles") {
  // Strictly positive fuel at full deceleration: no fuel cut anywhere.
  ModelOracle warm = [](double, double, double) { return OracleSample{0.4, true}; };
  CHECK(detect_duty(warm).duty == Duty::MediumHeavyDuty);

  ModelOracle dead = [](double, double, double) { return OracleSample{0.4, false}; };
  CHECK_THROWS_AS(detect_duty(dead), FitError);
}

TEST_CASE("five-step fit: pure cruise oracle leaves slopes at zero") {
  ModelOracle cubic = [](double v, double, double) {
    return OracleSample{0.1 + 0.01 * v + 1e-4 * v * v * v, true};
  };
  FitReport report;
  SimplifiedParams p = fit_simplified(cubic, std::nullopt, &report);
  CHECK(p.duty == Duty::MediumHeavyDuty);  // never reaches zero fuel
  CHECK(p.c0 == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(p.c1 == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(std::abs(p.c2) < 1e-9);
  CHECK(p.c3 == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK(std::abs(p.p0) < 1e-9);
  CHECK(std::abs(p.p1) < 1e-9);
  CHECK(std::abs(p.p2) < 1e-9);
  CHECK(std::abs(p.q0) < 1e-9);
  CHECK(std::abs(p.q1) < 1e-9);
  CHECK(std::abs(p.z0) < 1e-9);
  CHECK(std::abs(p.z1) < 1e-9);
  CHECK(std::abs(p.z2) < 1e-9);
  CHECK(report.steps.size() == 5);
}

TEST_CASE("five-step fit: downhill-cheaper oracle activates the constraints") {
  // Fuel falls with speed; the nonnegative cruise fit must pin slopes at zero.
  ModelOracle falling = [](double v, double, double) {
    return OracleSample{std::max(0.5 - 0.01 * v, 0.1) + 1e-3, true};
  };
  FitReport report;
  SimplifiedParams p = fit_simplified(falling, std::nullopt, &report);
  CHECK(p.c1 == 0.0);
  bool noted = false;
  for (const auto& s : report.steps)
    if (s.step == "step2_cruise" && !s.active_constraints.empty()) noted = true;
  CHECK(noted);
}

TEST_CASE("feasible-region fit recovers a synthetic ground truth") {
  // feasible iff a <= min(3, 40 / v) - 9 theta
  ModelOracle oracle = [](double v, double a, double theta) {
    double ceiling = (v > 0 ? std::min(3.0, 40.0 / v) : 3.0) - 9.0 * theta;
    return OracleSample{1.0, a <= ceiling};
  };
  FitReport report;
  FeasibleRegionFit fit = fit_feasible_region(oracle, &report);
  CHECK(fit.b1 == doctest::Approx(3.0).epsilon(0.01));
  CHECK(fit.b2 == doctest::Approx(40.0).epsilon(0.01));
  CHECK(std::abs(fit.b3) < 1e-5);
  // Grade shift: min(b4, b5 + b6 v) should reproduce the constant 9.
  for (double v : {0.0, 10.0, 20.0, 35.0})
    CHECK(std::min(fit.b4, fit.b5 + fit.b6 * v) == doctest::Approx(9.0).epsilon(0.01));
  CHECK(report.steps.size() == 2);
}

TEST_CASE("feasible-region fit: grade-symmetric oracle yields a zero shift") {
  ModelOracle oracle = [](double v, double a, double) {
    double ceiling = v > 0 ? std::min(3.0, 40.0 / v) : 3.0;
    return OracleSample{1.0, a <= ceiling};
  };
  FeasibleRegionFit fit = fit_feasible_region(oracle);
  for (double v : {0.0, 15.0, 35.0})
    CHECK(std::abs(std::min(fit.b4, fit.b5 + fit.b6 * v)) < 1e-6);
}

TEST_CASE("feasible-region fit refuses an oracle without a ceiling") {
  ModelOracle open_sky = [](double, double, double) { return OracleSample{1.0, true}; };
  CHECK_THROWS_WITH_AS(fit_feasible_region(open_sky),
                       doctest::Contains("no acceleration ceiling"), FitError);
}

TEST_CASE("round trip recovers every fuel coefficient when nothing is masked") {
  // Lowering the low-speed floor keeps it clear of the slope-fit box, so the
  // full coefficient set is recoverable from input-output behavior alone.
  SimplifiedParams truth = load_bundled("midsize_suv.json");
  truth.beta = 0.05;
  FitReport report;
  SimplifiedParams fit = fit_model(make_oracle(truth), &report, truth.name);

  auto close = [](double got, double want) {
    double tol = std::max(0.02 * std::abs(want), 1e-3);
    return std::abs(got - want) <= tol;
  };
  CHECK(report.duty == Duty::LightDuty);
  CHECK(close(fit.v_c, truth.v_c));
  CHECK(close(fit.beta, truth.beta));
  CHECK(close(fit.c0, truth.c0));
  CHECK(close(fit.c1, truth.c1));
  CHECK(close(fit.c2, truth.c2));
  CHECK(close(fit.c3, truth.c3));
  CHECK(close(fit.p0, truth.p0));
  CHECK(close(fit.p1, truth.p1));
  CHECK(close(fit.p2, truth.p2));
  CHECK(close(fit.q0, truth.q0));
  CHECK(close(fit.q1, truth.q1));
  CHECK(close(fit.z0, truth.z0));
  CHECK(close(fit.z1, truth.z1));
  CHECK(close(fit.z2, truth.z2));
  CHECK(close(fit.b1, truth.b1));
  CHECK(close(fit.b2, truth.b2));
  CHECK(close(fit.b3, truth.b3));
  CHECK(close(fit.b4, truth.b4));
  CHECK(close(fit.b5, truth.b5));
  CHECK(close(fit.b6, truth.b6));
}

TEST_CASE("round trip on the bundled file recovers the unmasked rows") {
  // The bundled floor grazes the slope-fit box, so only the structurally
  // identifiable rows are asserted here; the acceptance suite gates the rest
  // through trip-fuel equivalence.
  SimplifiedParams truth = load_bundled("midsize_suv.json");
  FitReport report;
  SimplifiedParams fit = fit_model(make_oracle(truth), &report, truth.name);

  auto close = [](double got, double want) {
    double tol = std::max(0.02 * std::abs(want), 1e-3);
    return std::abs(got - want) <= tol;
  };
  CHECK(report.duty == Duty::LightDuty);
  CHECK(close(fit.v_c, truth.v_c));
  CHECK(close(fit.beta, truth.beta));
  CHECK(close(fit.c0, truth.c0));
  CHECK(close(fit.c1, truth.c1));
  CHECK(close(fit.c2, truth.c2));
  CHECK(close(fit.c3, truth.c3));
  CHECK(close(fit.z0, truth.z0));
  CHECK(close(fit.z1, truth.z1));
  CHECK(close(fit.z2, truth.z2));
  CHECK(close(fit.b1, truth.b1));
  CHECK(close(fit.b2, truth.b2));
  CHECK(close(fit.b3, truth.b3));
  CHECK(close(fit.b4, truth.b4));
  CHECK(close(fit.b5, truth.b5));
  CHECK(close(fit.b6, truth.b6));
  CHECK(fit.p0 >= 0);
  CHECK(fit.q1 >= 0);
}

TEST_CASE("fitting from a black-box grid dump recovers the fuel surface") {
  SimplifiedParams truth = load_bundled("midsize_suv.json");
  GridDump dump = export_grid(make_oracle(truth));  // default release density
  FitReport report;
  SimplifiedParams fit = fit_model(make_oracle(std::move(dump)), &report, "from-dump");

  auto close = [](double got, double want, double rel) {
    return std::abs(got - want) <= std::max(rel * std::abs(want), 1e-3);
  };
  CHECK(report.duty == Duty::LightDuty);
  CHECK(close(fit.v_c, truth.v_c, 0.02));
  CHECK(close(fit.beta, truth.beta, 0.005));
  CHECK(close(fit.c0, truth.c0, 0.005));
  CHECK(close(fit.c1, truth.c1, 0.005));
  CHECK(close(fit.c3, truth.c3, 0.005));
  CHECK(close(fit.z0, truth.z0, 0.01));
  CHECK(close(fit.z1, truth.z1, 0.01));
  CHECK(close(fit.z2, truth.z2, 0.01));
  // The grade shift of the ceiling is visible inside the dump's ranges.
  CHECK(close(fit.b4, truth.b4, 0.02));
  CHECK(close(fit.b5, truth.b5, 0.02));
  // The flat ceiling branch b1 = 3.34 m/s^2 lies above the dump's
  // acceleration range and is knowingly unrecoverable from this dump; the
  // curved branch is recovered where it is visible.
  CHECK(close(fit.b2, truth.b2, 0.02));
}

TEST_CASE("oracle caching is transparent and effective") {
  int calls = 0;
  ModelOracle counting = [&calls](double v, double, double) {
    ++calls;
    return OracleSample{v + 1.0, true};
  };
  CachingOracle cache(counting);
  auto o = cache.as_oracle();
  CHECK(o(1.0, 2.0, 3.0).fuel == 2.0);
  CHECK(o(1.0, 2.0, 3.0).fuel == 2.0);
  CHECK(o(1.0, 2.0, 3.0001).fuel == 2.0);
  CHECK(calls == 2);
  CHECK(cache.cached() == 2);
}
