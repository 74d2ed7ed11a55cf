#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

// In-test numerics kept independent of the library's own machinery: adaptive
// Simpson quadrature and central finite differences.
namespace testsupport {

namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fb, double fm, double whole, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double quad(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-13) {
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fb, fm, whole, tol, 48);
}

// five-point central differences, O(h^4)
template <class F>
double fd1(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

template <class F>
double fd2(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2 * h)) /
         (12.0 * h * h);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int pick(std::mt19937_64& g, int n) {
  return static_cast<int>(g() % static_cast<std::uint64_t>(n));
}

}  // namespace testsupport
