#include "halfmap/series.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "characteristic.hpp"
#include "halfmap/detail/jet_engine.hpp"
#include "halfmap/integral.hpp"
#include "halfmap/quadratic.hpp"

namespace halfmap {

namespace {

void check_terms(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi)
    throw PreconditionViolated(std::string(what) + ": term count must be in [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double require_delta(const LienardParams& p, const char* what) {
  const double delta = 4.0 * p.D - p.T * p.T;
  if (delta <= 0.0)
    throw PreconditionViolated(std::string(what) + " requires 4*D - T^2 > 0");
  return delta;
}

std::vector<double> run_jet(const detail::JetRelation<long double>& rel,
                            std::vector<long double> seed, int pin, int last) {
  const auto c = detail::solve_jet(rel, std::move(seed), pin, last);
  std::vector<double> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = static_cast<double>(c[i]);
  return out;
}

// dense coefficient-by-power view of an integer-step jet anchored at 0
std::vector<double> dense_taylor(const PowerSeries& s, int n, const char* what) {
  if (s.anchor == SeriesAnchor::Infinity || s.anchor == SeriesAnchor::Puiseux ||
      s.expansion_point != 0.0 || s.exponent_step != 1.0)
    throw PreconditionViolated(std::string(what) +
                               " requires integer-step Taylor jets anchored at 0");
  std::vector<double> d(static_cast<size_t>(n) + 1, 0.0);
  const int lead = static_cast<int>(std::lround(s.first_exponent));
  for (int i = 0; i < s.terms(); ++i) {
    const int k = lead + i;
    if (k >= 0 && k <= n) d[static_cast<size_t>(k)] = s.coefficients[static_cast<size_t>(i)];
  }
  return d;
}

// inverse of an ordinary jet f(x) = sum_{k>=1} c[k] x^k with c[1] != 0:
// returns d with x = sum_{k>=1} d[k] f^k (dense, d[0] = 0)
std::vector<double> invert_ordinary(const std::vector<double>& c, int n) {
  std::vector<std::vector<double>> pw(static_cast<size_t>(n) + 1);
  pw[0].assign(1, 1.0);
  for (int j = 1; j <= n; ++j)
    pw[static_cast<size_t>(j)] = detail::conv_trunc(pw[static_cast<size_t>(j - 1)], c, n);
  std::vector<double> d(static_cast<size_t>(n) + 1, 0.0);
  d[1] = 1.0 / c[1];
  for (int k = 2; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j)
      acc += d[static_cast<size_t>(j)] * pw[static_cast<size_t>(j)][static_cast<size_t>(k)];
    d[static_cast<size_t>(k)] = -acc / pw[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return d;
}

}  // namespace

PowerSeries taylor_origin(const LienardParams& p, int order) {
  validate(p);
  check_terms(order, 1, kMaxTaylorOrder, "origin jet");
  if (!(p.a > 0.0 || (p.a < 0.0 && p.T == 0.0 && 4.0 * p.D > 0.0)))
    throw PreconditionViolated(
        "origin jet requires P(0) = 0: a > 0, or a < 0 with T = 0 and 4*D - T^2 > 0");
  const auto rel = detail::halfmap_relation<long double>(p.T, p.D, p.a);
  const auto c = run_jet(rel, {0.0L, -1.0L}, 0, order);
  PowerSeries s{SeriesAnchor::Origin, 0.0, 1.0, 1.0, {}};
  s.coefficients.assign(c.begin() + 1, c.end());
  return s;
}

PowerSeries taylor_origin_shifted(const LienardParams& p, int order, const SolverOptions& opt) {
  validate(p);
  if (!(p.a < 0.0 && p.T > 0.0))
    throw PreconditionViolated("shifted origin jet requires a < 0 and T > 0");
  require_delta(p, "shifted origin jet");
  const auto ch = internal::make_characteristic(p);
  const double y1hat =
      internal::solve_negative_endpoint(ch, c_constant(p).c * p.T, opt);
  return taylor_origin_shifted_at(p, y1hat, order);
}

PowerSeries taylor_origin_shifted_at(const LienardParams& p, double c0, int order) {
  validate(p);
  check_terms(order, 1, kMaxTaylorOrder, "shifted origin jet");
  if (p.a == 0.0 || !(c0 < 0.0))
    throw PreconditionViolated("shifted origin jet requires a != 0 and a constant term < 0");
  const auto rel = detail::halfmap_relation<long double>(p.T, p.D, p.a);
  PowerSeries s{SeriesAnchor::OriginShifted, 0.0, 0.0, 1.0, {}};
  s.coefficients = run_jet(rel, {static_cast<long double>(c0)}, -1, order);
  return s;
}

PowerSeries puiseux_at_hat_y0(const LienardParams& p, int terms, const SolverOptions& opt) {
  validate(p);
  check_terms(terms, 1, kMaxPuiseuxTerms, "half-integer jet");
  if (!(p.a < 0.0 && p.T < 0.0))
    throw PreconditionViolated("half-integer jet requires a < 0 and T < 0");
  require_delta(p, "half-integer jet");
  const auto ch = internal::make_characteristic(p);
  const double y0hat =
      internal::solve_positive_endpoint(ch, c_constant(p).c * p.T, opt);
  const long double T = p.T, D = p.D, a = p.a, yh = y0hat;
  const long double w0 = (D * yh - a * T) * yh + a * a;
  const long double q1 = a * std::sqrt(2.0L * yh / w0);  // Q <= 0 branch: a < 0
  const auto rel = detail::puiseux_relation<long double>(T, D, a, yh);
  const auto c = run_jet(rel, {0.0L, q1}, 0, terms);
  PowerSeries s{SeriesAnchor::Puiseux, y0hat, 0.5, 0.5, {}};
  s.coefficients.assign(c.begin() + 1, c.end());
  return s;
}

InfinityJet infinity_jet(const LienardParams& p) {
  validate(p);
  const double delta = require_delta(p, "expansion at infinity");
  const double T = p.T, D = p.D, a = p.a;
  const double E = std::exp(std::numbers::pi * T / std::sqrt(delta));
  InfinityJet j{};
  j.alpha1 = -1.0 / E;
  j.alpha2 = -(2.0 * a * T / D) * (E + 1.0) / (E * E);
  j.alpha3 = (3.0 * a * a / (D * D)) * (E + 1.0) *
             ((D - 2.0 * T * T) * E - (D + 2.0 * T * T)) / (E * E * E);
  j.alpha4 = (4.0 * a * a * a * T / (D * D * D)) * (1.0 + E) * (1.0 + E) *
             (7.0 * D * E - 8.0 * D - 6.0 * T * T * (1.0 + E)) / (E * E * E * E);
  return j;
}

PowerSeries taylor_infinity(const LienardParams& p) {
  const InfinityJet j = infinity_jet(p);
  const double a1 = j.alpha1, a2 = j.alpha2, a3 = j.alpha3, a4 = j.alpha4;
  PowerSeries s{SeriesAnchor::Infinity, 0.0, 1.0, -1.0, {}};
  s.coefficients = {
      1.0 / a1,
      -a2 / (2.0 * a1 * a1),
      (3.0 * a2 * a2 - 2.0 * a1 * a3) / (12.0 * a1 * a1 * a1),
      -(3.0 * a2 * a2 * a2 - 4.0 * a1 * a2 * a3 + a1 * a1 * a4) /
          (24.0 * a1 * a1 * a1 * a1),
  };
  return s;
}

std::vector<double> reciprocal_jet(const LienardParams& p, int order) {
  validate(p);
  check_terms(order, 1, kMaxTaylorOrder, "reciprocal jet");
  const long double delta = 4.0L * p.D - static_cast<long double>(p.T) * p.T;
  if (delta <= 0.0L)
    throw PreconditionViolated("reciprocal jet requires 4*D - T^2 > 0");
  const long double alpha1 =
      -std::exp(-std::numbers::pi_v<long double> * p.T / std::sqrt(delta));
  const auto rel = detail::reciprocal_relation<long double>(
      static_cast<long double>(p.T), static_cast<long double>(p.D),
      static_cast<long double>(p.a));
  return run_jet(rel, {0.0L, alpha1}, 0, order);
}

double series_eval(const PowerSeries& s, double y0) {
  if (s.terms() == 0) return 0.0;
  if (s.anchor == SeriesAnchor::Infinity) {
    if (y0 <= 0.0) throw WrongSide("expansion at infinity requires y0 > 0");
    const double u = 1.0 / y0;
    double acc = 0.0;
    for (int i = s.terms() - 1; i >= 0; --i) acc = acc * u + s.coefficients[static_cast<size_t>(i)];
    return acc * y0;  // leading exponent 1
  }
  const double x = y0 - s.expansion_point;
  double base = x;
  if (s.anchor == SeriesAnchor::Puiseux) {
    if (x < 0.0) throw WrongSide("half-integer expansion requires y0 >= the expansion point");
    base = std::sqrt(x);
  }
  double acc = 0.0;
  for (int i = s.terms() - 1; i >= 0; --i) acc = acc * base + s.coefficients[static_cast<size_t>(i)];
  const int lead = static_cast<int>(std::lround(s.first_exponent / s.exponent_step));
  for (int k = 0; k < lead; ++k) acc *= base;
  return acc;
}

PowerSeries series_invert(const PowerSeries& s, int terms) {
  check_terms(terms, 1, 64, "inversion");
  if (s.anchor == SeriesAnchor::Infinity || s.anchor == SeriesAnchor::Puiseux)
    throw NotInvertible("only integer-step Taylor jets can be inverted");
  const int n = std::max(terms, s.terms() + 1);
  const auto c = dense_taylor(s, n, "inversion");
  const double c0 = c[0];
  if (c[1] != 0.0) {
    // ordinary branch: x = sum d_k (v - c0)^k, plus the anchor offset
    std::vector<double> f(c);
    f[0] = 0.0;
    const auto d = invert_ordinary(f, terms);
    PowerSeries out{SeriesAnchor::OriginShifted, c0, 0.0, 1.0, {}};
    out.coefficients.assign(static_cast<size_t>(terms) + 1, 0.0);
    out.coefficients[0] = s.expansion_point;
    for (int k = 1; k <= terms; ++k)
      out.coefficients[static_cast<size_t>(k)] = d[static_cast<size_t>(k)];
    return out;
  }
  if (c[2] == 0.0)
    throw NotInvertible("jet has neither a linear nor a quadratic leading term");
  if (c[2] < 0.0)
    throw NotInvertible(
        "quadratic-branch inversion needs a positive quadratic coefficient; negate the jet first");
  if (s.expansion_point != 0.0)
    throw NotInvertible("quadratic-branch inversion requires an expansion point of 0");
  // v = c0 + z^2 g(z) with z = -x >= 0 and g(0) = c[2] > 0; write
  // sqrt(v - c0) = z sqrt(g(z)) =: phi(z) and invert phi.
  std::vector<double> g(static_cast<size_t>(terms) + 1, 0.0);
  for (int jj = 0; jj <= terms; ++jj) {
    const size_t src = static_cast<size_t>(jj) + 2;
    if (src < c.size()) g[static_cast<size_t>(jj)] = (jj % 2 ? -1.0 : 1.0) * c[src];
  }
  std::vector<double> h(static_cast<size_t>(terms) + 1, 0.0);
  h[0] = std::sqrt(g[0]);
  for (int k = 1; k <= terms; ++k) {
    double acc = g[static_cast<size_t>(k)];
    for (int i = 1; i < k; ++i) acc -= h[static_cast<size_t>(i)] * h[static_cast<size_t>(k - i)];
    h[static_cast<size_t>(k)] = acc / (2.0 * h[0]);
  }
  std::vector<double> phi(static_cast<size_t>(terms) + 1, 0.0);
  for (int k = 1; k <= terms; ++k) phi[static_cast<size_t>(k)] = h[static_cast<size_t>(k - 1)];
  const auto e = invert_ordinary(phi, terms);
  PowerSeries out{SeriesAnchor::Puiseux, c0, 0.5, 0.5, {}};
  out.coefficients.assign(static_cast<size_t>(terms), 0.0);
  for (int k = 1; k <= terms; ++k)
    out.coefficients[static_cast<size_t>(k - 1)] = -e[static_cast<size_t>(k)];
  return out;
}

PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner, int order) {
  check_terms(order, 0, 64, "composition");
  const auto a = dense_taylor(outer, order, "composition");
  const auto b = dense_taylor(inner, order, "composition");
  if (b[0] != 0.0)
    throw PreconditionViolated("composition requires the inner jet to vanish at 0");
  std::vector<double> r{a[static_cast<size_t>(order)]};
  for (int k = order - 1; k >= 0; --k) {
    r = detail::conv_trunc(r, b, order);
    r[0] += a[static_cast<size_t>(k)];
  }
  r.resize(static_cast<size_t>(order) + 1, 0.0);
  return PowerSeries{SeriesAnchor::OriginShifted, 0.0, 0.0, 1.0, std::move(r)};
}

}  // namespace halfmap
