#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "halfmap/params.hpp"

namespace halfmap {

struct SolverOptions {
  double tol = 1e-12;   // absolute tolerance on the unknown
  int max_iters = 200;  // iteration cap (HALFMAP_MAX_ITERS env overrides the default)
};

// Default options; the iteration cap honors the HALFMAP_MAX_ITERS environment
// variable (read once).
inline const SolverOptions& default_solver_options() {
  static const SolverOptions opts = [] {
    SolverOptions o;
    if (const char* env = std::getenv("HALFMAP_MAX_ITERS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0 && v < 1000000) o.max_iters = static_cast<int>(v);
    }
    return o;
  }();
  return opts;
}

// Root of a continuous f on a bracketing interval [lo, hi] (f(lo)*f(hi) <= 0),
// bisection with secant refinement. Terminates when the bracket width drops
// below tol or the floating-point floor.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, double flo, double fhi,
                           const SolverOptions& opt = default_solver_options()) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoConvergence("find_root_bracketed: endpoints do not bracket a sign change");
  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int it = 0; it < opt.max_iters; ++it) {
    const double width = b - a;
    if (width <= opt.tol || width <= 8.0 * std::numeric_limits<double>::epsilon() *
                                          (std::fabs(a) + std::fabs(b)))
      break;
    // secant candidate, demoted to bisection when it leaves the bracket
    double m = a - fa * (b - a) / (fb - fa);
    const double guard = 0.01 * width;
    if (!(m > a + guard) || !(m < b - guard)) m = a + 0.5 * width;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  // endpoint with the smaller residual; the loop always collapses the bracket
  // to the fp floor well inside the default iteration budget
  const double width = b - a;
  if (width > opt.tol &&
      width > 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(a) + std::fabs(b)) &&
      width > 1e3 * opt.tol)
    throw NoConvergence("find_root_bracketed: iteration budget exhausted");
  return std::fabs(fa) <= std::fabs(fb) ? a : b;
}

}  // namespace halfmap
