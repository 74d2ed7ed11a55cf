#include "halfmap/domain.hpp"

#include <cmath>
#include <limits>

#include "characteristic.hpp"
#include "halfmap/integral.hpp"
#include "halfmap/quadratic.hpp"

namespace halfmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Endpoint closed_at(double v) { return {v, EndpointKind::ClosedAtValue}; }

Endpoint open_or_unbounded(double root) {
  if (std::isfinite(root)) return {root, EndpointKind::OpenAtRootOfW};
  return {root, EndpointKind::Unbounded};
}

}  // namespace

DomainInfo domain_interval(const LienardParams& p, const SolverOptions& opt) {
  validate(p);
  DomainInfo d;
  if (p.a > 0.0) {
    // Tangency at the origin seen from the right: P(0) = 0 and the domain
    // runs to the nearest positive root of W (the integral diverges there).
    const QuadraticW w = make_w(p);
    d.exists = true;
    d.lower = closed_at(0.0);
    d.upper = open_or_unbounded(nearest_positive_root(w));
    d.image_lower = open_or_unbounded(nearest_negative_root(w));
    d.image_upper = closed_at(0.0);
    return d;
  }

  const double delta = 4.0 * p.D - p.T * p.T;
  if (delta <= 0.0) return d;  // exists = false

  // delta > 0 forces D > 0; for a != 0 then W has no real roots, and for
  // a = 0 the only root is the origin itself. Everything is unbounded.
  d.exists = true;
  d.lower = closed_at(0.0);
  d.upper = {kInf, EndpointKind::Unbounded};
  d.image_lower = {-kInf, EndpointKind::Unbounded};
  d.image_upper = closed_at(0.0);
  if (p.a == 0.0 || p.T == 0.0) return d;

  const double ct = c_constant(p).c * p.T;
  const auto ch = internal::make_characteristic(p);
  if (p.T > 0.0) {
    // P(0) = hat_y1 < 0 solves F(hat_y1) = cT; the image stops there.
    const double hy1 = internal::solve_negative_endpoint(ch, ct, opt);
    d.hat_y1 = hy1;
    d.image_upper = closed_at(hy1);
  } else {
    // P(hat_y0) = 0 with G(hat_y0) = cT; the domain starts there.
    const double hy0 = internal::solve_positive_endpoint(ch, ct, opt);
    d.hat_y0 = hy0;
    d.lower = closed_at(hy0);
  }
  return d;
}

bool in_domain(const DomainInfo& d, double y0) {
  if (!d.exists || !std::isfinite(y0)) return false;
  if (y0 < d.lower.value) return false;
  if (d.upper.kind == EndpointKind::Unbounded) return true;
  return y0 < d.upper.value;
}

bool in_image(const DomainInfo& d, double y1) {
  if (!d.exists || !std::isfinite(y1)) return false;
  if (y1 > d.image_upper.value) return false;
  if (d.image_lower.kind == EndpointKind::Unbounded) return true;
  return y1 > d.image_lower.value;
}

}  // namespace halfmap
