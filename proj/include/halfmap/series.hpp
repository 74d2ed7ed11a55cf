#pragma once

#include <vector>

#include "halfmap/params.hpp"
#include "halfmap/solve.hpp"

namespace halfmap {

enum class SeriesAnchor {
  Origin,         // P(y0) = sum c_k y0^k, k = 1..n        (P(0) = 0, a != 0)
  OriginShifted,  // P(y0) = hat_y1 + sum c_k y0^k, k = 2..n  (a < 0, T > 0)
  Puiseux,        // P(y0) = sum q_k (y0 - hat_y0)^{k/2}    (a < 0, T < 0)
  Infinity,       // P(y0) = s1 y0 + s0 + s_{-1}/y0 + s_{-2}/y0^2
};

// Truncated expansion of the half-map about one of the admissible anchors.
// Term i has exponent first_exponent + i*exponent_step in
// (y0 - expansion_point); the Infinity anchor holds descending powers of y0
// itself (exponents 1, 0, -1, -2).
struct PowerSeries {
  SeriesAnchor anchor = SeriesAnchor::Origin;
  double expansion_point = 0.0;
  double first_exponent = 1.0;
  double exponent_step = 1.0;
  std::vector<double> coefficients;

  double exponent(int i) const { return first_exponent + i * exponent_step; }
  int terms() const { return static_cast<int>(coefficients.size()); }
};

inline constexpr int kMaxTaylorOrder = 20;
inline constexpr int kMaxPuiseuxTerms = 24;  // half-integer steps, exponent up to 12

// Jet of P at the origin (requires a zone with 0 in I and P(0) = 0, i.e.
// a > 0, or a < 0 with T = 0 and 4D > T^2). Coefficients solve the
// characteristic relation y1 W(y0) dy1 = y0 W(y1) dy0 by undetermined
// coefficients with seed P'(0) = -1; order <= 20, terms for y0^1..y0^order.
PowerSeries taylor_origin(const LienardParams& p, int order);

// Jet at the origin when P(0) = hat_y1 < 0 (a < 0, T > 0, 4D - T^2 > 0);
// hat_y1 is resolved internally. Terms for y0^0..y0^order.
PowerSeries taylor_origin_shifted(const LienardParams& p, int order,
                                  const SolverOptions& opt = default_solver_options());

// Same recurrence anchored at an explicit constant term c0 < 0: the jet of
// the characteristic-relation orbit through (0, c0). Exposed for testing and
// exact-arithmetic runs where the true hat_y1 is supplied externally.
PowerSeries taylor_origin_shifted_at(const LienardParams& p, double c0, int order);

// Half-integer expansion at the right domain endpoint hat_y0 (a < 0, T < 0,
// 4D - T^2 > 0), the nonpositive branch: P(hat_y0 + z^2) expanded in z and
// read as powers of (y0 - hat_y0)^{1/2}. `terms` counts half-step terms
// (exponents 1/2, 1, ..., terms/2); terms <= 24.
PowerSeries puiseux_at_hat_y0(const LienardParams& p, int terms,
                              const SolverOptions& opt = default_solver_options());

// One-sided derivatives at 0+ of the reciprocal map Y -> 1/P(1/Y)
// (requires 4D - T^2 > 0). Closed forms in E = exp(pi*T/sqrt(4D-T^2)).
struct InfinityJet {
  double alpha1, alpha2, alpha3, alpha4;
};
InfinityJet infinity_jet(const LienardParams& p);

// Four-term expansion of P at +infinity obtained by inverting the reciprocal
// jet: P(y0) = y0/alpha1 - alpha2/(2 alpha1^2) + ... (exponents 1,0,-1,-2).
PowerSeries taylor_infinity(const LienardParams& p);

// Taylor coefficients (orders 0..order) of the reciprocal map 1/P(1/Y) at
// 0+, computed independently from its own characteristic relation
// Y W~(Y) dY1 = Y1 W~(Y1) dY with W~(Y) = a^2 Y^2 - a T Y + D, seeded with
// alpha1. Cross-checks infinity_jet: coefficient k equals alpha_k / k!.
std::vector<double> reciprocal_jet(const LienardParams& p, int order);

// Evaluate a series at y0. Puiseux anchors require y0 >= expansion_point
// (WrongSide otherwise).
double series_eval(const PowerSeries& s, double y0);

// Compositional inverse. A jet with nonzero linear term inverts to an
// ordinary Taylor jet; a jet c0 + c2 x^2 + ... with c2 > 0 inverts to the
// nonpositive Puiseux branch anchored at c0. NotInvertible otherwise.
PowerSeries series_invert(const PowerSeries& s, int terms);

// Truncated composition outer(inner(x)) of two origin-anchored Taylor jets
// (inner constant term must vanish); used e.g. to verify the involution
// property of the origin jet.
PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner, int order);

}  // namespace halfmap
