#pragma once

// Shared internals: one-sided integrals of -y/W from/to the section and the
// bracketed endpoint solves they feed. Used by the domain classification and
// the half-map evaluators; not installed.

#include <cmath>
#include <limits>

#include "halfmap/integral.hpp"
#include "halfmap/params.hpp"
#include "halfmap/quadratic.hpp"
#include "halfmap/solve.hpp"

namespace halfmap::internal {

// Valid for a != 0 only (W(0) = a^2 > 0).
struct Characteristic {
  LienardParams p;
  QuadraticW w;
  double h0;  // antiderivative at 0

  // integral_{y1}^{0} -y/W dy: decreasing in y1, 0 at 0, +inf at the negative
  // edge of the component of {W>0} containing 0.
  double F(double y1) const { return h0 - antiderivative_h(p, y1); }
  // integral_{0}^{y0} -y/W dy: decreasing in y0, 0 at 0, -inf at the positive
  // edge.
  double G(double y0) const { return antiderivative_h(p, y0) - h0; }
};

inline Characteristic make_characteristic(const LienardParams& p) {
  Characteristic ch{p, make_w(p), 0.0};
  ch.h0 = antiderivative_h(p, 0.0);
  return ch;
}

// Solve F(y1) = rhs (rhs >= 0) for y1 <= 0.
inline double solve_negative_endpoint(const Characteristic& ch, double rhs,
                                      const SolverOptions& opt) {
  if (rhs == 0.0) return 0.0;
  const auto f = [&](double y1) { return ch.F(y1) - rhs; };
  const double edge = nearest_negative_root(ch.w);
  double lo = 0.0, flo = 0.0;
  if (std::isfinite(edge)) {
    // approach the open endpoint geometrically until the divergence of F
    // brackets the target
    double frac = 0.5;
    for (int k = 0; k < 200; ++k, frac *= 0.5) {
      const double cand = edge * (1.0 - frac);
      if (cand == edge || cand == lo) break;
      if (eval_w(ch.p, cand) <= 0.0) break;  // ulp-collision with the root
      const double fc = f(cand);
      if (fc >= 0.0) {
        lo = cand;
        flo = fc;
        break;
      }
    }
    if (lo == 0.0) {
      // even the last point where W is evaluable leaves F below rhs: the
      // solution sits within an ulp of the edge, so the closest evaluable
      // point is the correctly rounded endpoint
      double cand = std::nextafter(edge, 0.0);
      while (cand < 0.0 && eval_w(ch.p, cand) <= 0.0) cand = std::nextafter(cand, 0.0);
      if (cand < 0.0) {
        const double fc = f(cand);
        if (fc < 0.0) return cand;
        lo = cand;
        flo = fc;
      }
    }
  } else {
    double cand = -std::max({1.0, std::fabs(ch.p.a)});
    for (int k = 0; k < 2100 && std::fabs(cand) < 1e290; ++k, cand *= 2.0) {
      const double fc = f(cand);
      if (fc >= 0.0) {
        lo = cand;
        flo = fc;
        break;
      }
    }
  }
  if (lo == 0.0) throw NoConvergence("failed to bracket the negative endpoint");
  return find_root_bracketed(f, lo, 0.0, flo, -rhs, opt);
}

// Solve G(y0) = rhs (rhs <= 0) for y0 >= 0.
inline double solve_positive_endpoint(const Characteristic& ch, double rhs,
                                      const SolverOptions& opt) {
  if (rhs == 0.0) return 0.0;
  const auto f = [&](double y0) { return ch.G(y0) - rhs; };
  const double edge = nearest_positive_root(ch.w);
  double hi = 0.0, fhi = 0.0;
  if (std::isfinite(edge)) {
    double frac = 0.5;
    for (int k = 0; k < 200; ++k, frac *= 0.5) {
      const double cand = edge * (1.0 - frac);
      if (cand == edge || cand == hi) break;
      if (eval_w(ch.p, cand) <= 0.0) break;  // ulp-collision with the root
      const double fc = f(cand);
      if (fc <= 0.0) {
        hi = cand;
        fhi = fc;
        break;
      }
    }
    if (hi == 0.0) {
      // mirrored edge clamp: G cannot reach rhs before the fp edge
      double cand = std::nextafter(edge, 0.0);
      while (cand > 0.0 && eval_w(ch.p, cand) <= 0.0) cand = std::nextafter(cand, 0.0);
      if (cand > 0.0) {
        const double fc = f(cand);
        if (fc > 0.0) return cand;
        hi = cand;
        fhi = fc;
      }
    }
  } else {
    double cand = std::max({1.0, std::fabs(ch.p.a)});
    for (int k = 0; k < 2100 && cand < 1e290; ++k, cand *= 2.0) {
      const double fc = f(cand);
      if (fc <= 0.0) {
        hi = cand;
        fhi = fc;
        break;
      }
    }
  }
  if (hi == 0.0) throw NoConvergence("failed to bracket the positive endpoint");
  return find_root_bracketed(f, 0.0, hi, -rhs, fhi, opt);
}

}  // namespace halfmap::internal
