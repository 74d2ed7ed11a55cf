#include "halfmap/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halfmap {

QuadraticW make_w(const LienardParams& p) {
  validate(p);
  QuadraticW w;
  w.c2 = p.D;
  w.c1 = -p.a * p.T;
  w.c0 = p.a * p.a;
  if (w.c2 == 0.0) {
    if (w.c1 != 0.0) w.roots.push_back({-w.c0 / w.c1, 1});
    // c1 == 0: W is the positive constant a^2, no roots
    return w;
  }
  if (p.a == 0.0) {
    w.roots.push_back({0.0, 2});  // W = D y^2
    return w;
  }
  const double disc = p.T * p.T - 4.0 * p.D;  // discriminant / a^2
  if (disc < 0.0) return w;
  if (disc == 0.0) {
    w.roots.push_back({p.a * p.T / (2.0 * p.D), 2});
    return w;
  }
  // stable quadratic roots: q = -(c1 + sign(c1) sqrt(c1^2 - 4 c2 c0)) / 2
  const double s = std::fabs(p.a) * std::sqrt(disc);
  const double q = -0.5 * (w.c1 + std::copysign(s, w.c1));
  double r1, r2;
  if (q != 0.0) {
    r1 = q / w.c2;
    r2 = w.c0 / q;
  } else {  // c1 == 0, disc > 0: symmetric pair
    r1 = std::sqrt(-w.c0 / w.c2);
    r2 = -r1;
  }
  if (r1 > r2) std::swap(r1, r2);
  w.roots.push_back({r1, 1});
  w.roots.push_back({r2, 1});
  return w;
}

double nearest_positive_root(const QuadraticW& w) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : w.roots)
    if (r.value > 0.0) best = std::min(best, r.value);
  return best;
}

double nearest_negative_root(const QuadraticW& w) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : w.roots)
    if (r.value < 0.0) best = std::max(best, r.value);
  return best;
}

bool w_root_in(const QuadraticW& w, double lo, double hi) {
  for (const auto& r : w.roots)
    if (r.value >= lo && r.value <= hi) return true;
  return false;
}

}  // namespace halfmap
