#include "halfmap/half_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "characteristic.hpp"
#include "halfmap/integral.hpp"
#include "halfmap/quadratic.hpp"
#include "halfmap/series.hpp"

namespace halfmap {

namespace {

constexpr int kJetOrder = 12;

double ensure_delta(const LienardParams& p) {
  const double delta = 4.0 * p.D - p.T * p.T;
  if (delta <= 0.0)
    throw NonexistentHalfMap("no left half-map for a <= 0: requires 4*D - T^2 > 0");
  return delta;
}

// Radius below which the origin jet converges fast: a small fraction of the
// distance from 0 to the nearest (possibly complex) root of W.
double tangency_threshold(const LienardParams& p) {
  const double scale = std::max({1.0, std::fabs(p.T), std::sqrt(std::fabs(p.D))});
  return 1e-4 * std::fabs(p.a) / scale;
}

// min(|root|) over real roots of W, +inf when W has none.
double nearest_root_distance(const QuadraticW& w) {
  return std::min(nearest_positive_root(w), -nearest_negative_root(w));
}

double forward_solve(const LienardParams& p, double y0, const SolverOptions& opt) {
  if (!std::isfinite(y0)) throw OutOfDomain("y0 is not finite");
  if (p.a == 0.0) {
    const double delta = ensure_delta(p);
    return -y0 * std::exp(std::numbers::pi * p.T / std::sqrt(delta));
  }
  if (p.a < 0.0) ensure_delta(p);
  const auto ch = internal::make_characteristic(p);
  if (p.a > 0.0) {
    if (y0 >= nearest_positive_root(ch.w) || eval_w(p, y0) <= 0.0)
      throw OutOfDomain("y0 is at or beyond the positive root of W");
    if (p.T == 0.0) return -y0;
    if (y0 == 0.0) return 0.0;
    if (y0 < tangency_threshold(p) && y0 <= 1e-3 * nearest_root_distance(ch.w))
      return series_eval(taylor_origin(p, kJetOrder), y0);
    return internal::solve_negative_endpoint(ch, -ch.G(y0), opt);
  }
  // a < 0 with 4D - T^2 > 0: W > 0 everywhere, I is decided by the sign of
  // cT - G(y0).
  if (p.T == 0.0) return -y0;
  const double rhs = c_constant(p).c * p.T - ch.G(y0);
  if (rhs < 0.0) throw OutOfDomain("y0 is below the left endpoint of the domain");
  if (rhs == 0.0) return 0.0;
  return internal::solve_negative_endpoint(ch, rhs, opt);
}

double inverse_solve(const LienardParams& p, double y1, const SolverOptions& opt) {
  if (!std::isfinite(y1)) throw OutOfDomain("y1 is not finite");
  if (p.a == 0.0) {
    const double delta = ensure_delta(p);
    return -y1 * std::exp(-std::numbers::pi * p.T / std::sqrt(delta));
  }
  if (p.a < 0.0) ensure_delta(p);
  const auto ch = internal::make_characteristic(p);
  if (p.a > 0.0) {
    if (y1 <= nearest_negative_root(ch.w) || eval_w(p, y1) <= 0.0)
      throw OutOfDomain("y1 is at or beyond the negative root of W");
    if (p.T == 0.0) return -y1;
    if (y1 == 0.0) return 0.0;
    if (-y1 < tangency_threshold(p) && -y1 <= 1e-3 * nearest_root_distance(ch.w))
      return series_eval(series_invert(taylor_origin(p, kJetOrder), kJetOrder), y1);
    return internal::solve_positive_endpoint(ch, -ch.F(y1), opt);
  }
  if (p.T == 0.0) return -y1;
  const double rhs = c_constant(p).c * p.T - ch.F(y1);
  if (rhs > 0.0) throw OutOfDomain("y1 is above the right endpoint of the image");
  if (rhs == 0.0) return 0.0;
  return internal::solve_positive_endpoint(ch, rhs, opt);
}

}  // namespace

double half_map(const LienardParams& p, double y0, const SolverOptions& opt) {
  validate(p);
  if (y0 < 0.0) return inverse_solve(p, y0, opt);
  return forward_solve(p, y0, opt);
}

double half_map_inverse(const LienardParams& p, double y1, const SolverOptions& opt) {
  validate(p);
  if (y1 > 0.0) return forward_solve(p, y1, opt);
  return inverse_solve(p, y1, opt);
}

double derivative1(const LienardParams& p, double y0, const SolverOptions& opt) {
  validate(p);
  if (!(y0 >= 0.0)) throw OutOfDomain("derivative requires y0 >= 0");
  const double pv = forward_solve(p, y0, opt);
  if (pv == 0.0) throw TangencyPoint("P(y0) = 0: the derivative formula is singular");
  return y0 * eval_w(p, pv) / (pv * eval_w(p, y0));
}

double derivative2(const LienardParams& p, double y0, const SolverOptions& opt) {
  validate(p);
  if (!(y0 >= 0.0)) throw OutOfDomain("derivative requires y0 >= 0");
  const double pv = forward_solve(p, y0, opt);
  if (pv == 0.0) throw TangencyPoint("P(y0) = 0: the derivative formula is singular");
  const double w0 = eval_w(p, y0);
  return -p.a * p.a * (y0 * y0 - pv * pv) * eval_w(p, pv) / (pv * pv * pv * w0 * w0);
}

int bisector_position(const LienardParams& p, double y0, const SolverOptions& opt) {
  validate(p);
  if (!(y0 >= 0.0)) throw OutOfDomain("bisector test requires y0 >= 0");
  if (p.T == 0.0) {
    (void)forward_solve(p, y0, opt);  // existence + domain checks only
    return 0;
  }
  if (p.a > 0.0 && y0 > 0.0) {
    const QuadraticW w = make_w(p);
    if (y0 < tangency_threshold(p) && y0 <= 1e-3 * nearest_root_distance(w)) {
      // tail sum_{k>=2} c_k y0^k of the origin jet: y0 + P(y0) without the
      // cancellation of the two O(y0) terms
      const PowerSeries s = taylor_origin(p, kJetOrder);
      double acc = 0.0;
      for (int i = s.terms() - 1; i >= 1; --i) acc = acc * y0 + s.coefficients[i];
      acc *= y0 * y0;
      return (acc > 0.0) - (acc < 0.0);
    }
  }
  const double pv = forward_solve(p, y0, opt);
  if (pv == 0.0 && y0 == 0.0)
    throw TangencyPoint("sign of y0 + P(y0) is indeterminate at the tangency");
  const double s = y0 + pv;
  return (s > 0.0) - (s < 0.0);
}

}  // namespace halfmap
