#pragma once

#include "halfmap/params.hpp"

namespace halfmap {

// Constant c in the characterizing relation
//   pv integral_{P(y0)}^{y0} -y/W(y) dy = c*T,
// by the sign of a. Requires 4D - T^2 > 0 when a <= 0 (otherwise the forward
// half-map does not exist and NonexistentHalfMap is thrown).
struct PvConstant {
  double c;
};
PvConstant c_constant(const LienardParams& p);

// Closed-form antiderivative H of -y/W(y), valid on each connected component
// of {W > 0} (the integration constant is free per component, so only
// differences within one component are meaningful). Throws DomainError when
// W(y) <= 0.
double antiderivative_h(const LienardParams& p, double y);

// pv integral_{y1}^{y0} -y/W(y) dy for y1 <= 0 <= y0.
// For a != 0 this is an ordinary integral, H(y0) - H(y1), and requires W > 0
// on [y1, y0]. For a = 0 the integrand has a double pole at 0 and the
// principal value equals log(|y1|/y0)/D; it requires D > 0 and either both
// endpoints zero (value 0) or both nonzero (PvUndefined otherwise).
double integral_value(const LienardParams& p, double y1, double y0);

}  // namespace halfmap
