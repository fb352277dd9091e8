#include "vem/bisect.hpp"

#include <cmath>

#include "vem/errors.hpp"

namespace vem {

std::optional<double> bisect_root(const std::function<double(double)>& f, double lo,
                                  double hi, double tol) {
  if (!(hi > lo) || !(tol > 0)) throw InputError("bisect_root: bad bracket or tolerance");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) return std::nullopt;

  for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> bisect_transition(const std::function<bool(double)>& pred,
                                        double lo, double hi, double tol) {
  if (!(hi > lo) || !(tol > 0))
    throw InputError("bisect_transition: bad bracket or tolerance");
  if (!pred(lo) || pred(hi)) return std::nullopt;

  for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace vem
