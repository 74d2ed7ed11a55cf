#pragma once

#include <optional>

#include "halfmap/params.hpp"
#include "halfmap/solve.hpp"

namespace halfmap {

enum class EndpointKind {
  ClosedAtValue,  // finite, attained
  OpenAtRootOfW,  // finite, excluded: the endpoint is a real root of W
  Unbounded,      // +/- infinity
};

struct Endpoint {
  double value = 0.0;  // +/-inf when Unbounded
  EndpointKind kind = EndpointKind::Unbounded;
};

// Existence and shape of the forward half-map domain I subset [0, +inf) and
// image P(I) subset (-inf, 0].
struct DomainInfo {
  bool exists = false;
  Endpoint lower;        // left end of I
  Endpoint upper;        // right end of I
  Endpoint image_lower;  // left end of P(I)
  Endpoint image_upper;  // right end of P(I)
  std::optional<double> hat_y0;  // right boundary solving P(hat_y0) = 0 (a<0, T<0)
  std::optional<double> hat_y1;  // image bound P(0) = hat_y1 < 0 (a<0, T>0)
};

// Classification:
//   a > 0          : always exists; I = [0, r+) with r+ the nearest positive
//                    root of W (unbounded if none); P(I) = (r-, 0] likewise.
//   a = 0          : exists iff 4D - T^2 > 0; I = [0, inf), P(I) = (-inf, 0].
//   a < 0, T > 0   : exists iff 4D - T^2 > 0; I = [0, inf),
//                    P(I) = (-inf, hat_y1] with hat_y1 = P(0) < 0.
//   a < 0, T = 0   : exists iff 4D > 0; P = -identity on [0, inf).
//   a < 0, T < 0   : exists iff 4D - T^2 > 0; I = [hat_y0, inf) with
//                    P(hat_y0) = 0; P(I) = (-inf, 0].
DomainInfo domain_interval(const LienardParams& p,
                           const SolverOptions& opt = default_solver_options());

// y0 admissible for the forward map (closed/open endpoints respected).
bool in_domain(const DomainInfo& d, double y0);
// y1 admissible for the inverse map.
bool in_image(const DomainInfo& d, double y1);

}  // namespace halfmap
