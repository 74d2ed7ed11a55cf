#include "halfmap/integral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "halfmap/quadratic.hpp"

namespace halfmap {

PvConstant c_constant(const LienardParams& p) {
  validate(p);
  if (p.a > 0.0) return {0.0};
  const double delta = 4.0 * p.D - p.T * p.T;
  if (!(delta > 0.0))
    throw NonexistentHalfMap("half-map requires 4*D - T^2 > 0 when a <= 0 (got " +
                             std::to_string(delta) + ")");
  const double base = std::numbers::pi / (p.D * std::sqrt(delta));
  return {p.a == 0.0 ? base : 2.0 * base};
}

double antiderivative_h(const LienardParams& p, double y) {
  validate(p);
  const double w = eval_w(p, y);
  if (!(w > 0.0))
    throw DomainError("antiderivative requires W(y) > 0 (W(" + std::to_string(y) +
                      ") = " + std::to_string(w) + ")");
  const double T = p.T, D = p.D, a = p.a;
  if (D == 0.0) {
    // a != 0 here; W = a^2 - a T y
    if (T == 0.0) return -y * y / (2.0 * a * a);  // W constant
    return std::log(w) / (T * T) + y / (a * T);
  }
  const double disc = T * T - 4.0 * D;
  const double lead = -std::log(w) / (2.0 * D);
  if (disc < 0.0) {
    // no real roots (D > 0): log plus arctangent, continuous everywhere
    const double s = std::sqrt(-disc);
    const double denom = std::fabs(a) * s;
    return lead - (T * std::copysign(1.0, a) / (D * s)) * std::atan((2.0 * D * y - a * T) / denom);
  }
  if (disc > 0.0) {
    // two real roots: log partial fractions, branch fixed per component of {W>0}
    const double rt = std::sqrt(disc);
    const double r1 = a * (T + rt) / (2.0 * D);
    const double r2 = a * (T - rt) / (2.0 * D);
    return lead - (T / (2.0 * D * rt)) * std::log(std::fabs((y - r1) / (y - r2)));
  }
  // double root r = aT/(2D): log plus rational part
  const double r = a * T / (2.0 * D);
  return lead + a * T / (2.0 * D * D * (y - r));
}

namespace {

void require_w_positive_between(const LienardParams& p, double y1, double y0) {
  const QuadraticW w = make_w(p);
  if (w_root_in(w, y1, y0))
    throw DomainError("W vanishes on [" + std::to_string(y1) + ", " + std::to_string(y0) + "]");
}

}  // namespace

double integral_value(const LienardParams& p, double y1, double y0) {
  validate(p);
  if (!(y1 <= 0.0) || !(y0 >= 0.0))
    throw PreconditionViolated("integral_value requires y1 <= 0 <= y0");
  if (p.a == 0.0) {
    // W = D y^2: double pole at the origin, principal value
    if (y1 == 0.0 && y0 == 0.0) return 0.0;
    if (!(p.D > 0.0)) throw DomainError("a = 0 requires D > 0 for W > 0 off the section");
    if (y1 == 0.0 || y0 == 0.0)
      throw PvUndefined("principal value needs both endpoints at 0 or both away from it");
    return std::log(-y1 / y0) / p.D;
  }
  require_w_positive_between(p, y1, y0);
  if (y1 == y0) return 0.0;
  return antiderivative_h(p, y0) - antiderivative_h(p, y1);
}

}  // namespace halfmap
