#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vem/semi_principled.hpp"
#include "vem/simplified_model.hpp"

namespace vem {

/// One oracle response: instantaneous fuel rate plus a feasibility verdict.
struct OracleSample {
  double fuel = 0;
  bool feasible = true;
};

/// The black-box contract every fit consumes: any pure (repeatable) mapping
/// (v, a, theta) -> {fuel, feasible}.
using ModelOracle = std::function<OracleSample(double v, double a, double theta)>;

ModelOracle make_oracle(const SimplifiedParams& params);
ModelOracle make_oracle(const SemiPrincipledVehicle& vehicle);

/// Memoizes oracle responses keyed on the exact input triplet, so repeated
/// grid nodes across fit steps query the model once.
class CachingOracle {
 public:
  explicit CachingOracle(ModelOracle inner) : inner_(std::move(inner)) {}

  OracleSample operator()(double v, double a, double theta) const;
  std::size_t cached() const { return cache_.size(); }
  ModelOracle as_oracle() const;

 private:
  struct Key {
    double v, a, theta;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  ModelOracle inner_;
  mutable std::unordered_map<Key, OracleSample, KeyHash> cache_;
};

struct StepReport {
  std::string step;
  double rms = 0;                       ///< g/s (or m/s^2 for boundary steps)
  std::vector<int> active_constraints;  ///< coefficient indices pinned at zero
  std::size_t grid_points = 0;
  std::size_t used_points = 0;
  std::size_t excluded_infeasible = 0;
  std::size_t excluded_fuel_cut = 0;
};

struct FitReport {
  Duty duty = Duty::LightDuty;
  double v_c = 35.0;
  std::vector<StepReport> steps;
};

struct DutyDetection {
  Duty duty = Duty::LightDuty;
  double v_c = 35.0;  ///< 35 m/s means "no fuel cut found": medium/heavy duty
};

/// Duty-class probe: bisection for the fuel-cut speed on f(v, -3, 0) sampled
/// over 100 equispaced speeds in [0, 35]. No positive-to-zero transition
/// classifies the oracle as medium/heavy duty.
DutyDetection detect_duty(const ModelOracle& oracle);

/// Five-step constrained fit of the closed-form fuel model to an oracle. The
/// returned parameters carry the fuel surface and (for light duty) fuel-cut
/// description; feasibility coefficients are left to fit_feasible_region.
SimplifiedParams fit_simplified(const ModelOracle& oracle,
                                std::optional<DutyDetection> duty = std::nullopt,
                                FitReport* report = nullptr);

struct FeasibleRegionFit {
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
};

/// Two-step fit of the feasibility ceiling min(b1, b2/v - b3 v^2)
/// - min(b4, b5 + b6 v) theta against the oracle's feasibility flag.
FeasibleRegionFit fit_feasible_region(const ModelOracle& oracle,
                                      FitReport* report = nullptr);

/// Full reduction: duty detection, five-step fuel fit, feasible-region fit;
/// returns a validated parameter set ready to serialize.
SimplifiedParams fit_model(const ModelOracle& oracle, FitReport* report = nullptr,
                           const std::string& name = "fitted");

}  // namespace vem
