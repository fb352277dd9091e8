#pragma once

#include <functional>
#include <optional>

namespace vem {

/// Bisection for a sign change of f on [lo, hi]. Returns the bracket midpoint
/// once |hi - lo| <= tol, or nullopt when f does not change sign across the
/// bracket (the absence marker that drives duty-class detection).
std::optional<double> bisect_root(const std::function<double(double)>& f, double lo,
                                  double hi, double tol = 1e-4);

/// Bisection for the transition point of a predicate that is true at lo and
/// false at hi. Returns nullopt when there is no transition across the
/// bracket (pred(lo) == pred(hi)).
std::optional<double> bisect_transition(const std::function<bool(double)>& pred,
                                        double lo, double hi, double tol = 1e-4);

}  // namespace vem
