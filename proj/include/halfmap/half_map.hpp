#pragma once

#include "halfmap/domain.hpp"
#include "halfmap/params.hpp"
#include "halfmap/solve.hpp"

namespace halfmap {

// Forward half-map P(y0) <= 0 of the left half-plane dynamics, evaluated from
// the characterizing relation
//   pv integral_{P(y0)}^{y0} -y/W(y) dy = c*T
// by bracketed root finding (no trajectory integration). Fast paths: T = 0
// gives -y0 exactly; a = 0 gives -exp(pi*T/sqrt(4D-T^2))*y0; near the origin
// tangency (a > 0) a high-order jet of the map is used instead of root
// finding. A negative argument evaluates the involutive extension, i.e. the
// unique partner on the other side of the relation (the inverse map), so that
// half_map(half_map(y0)) == y0 on the zones with P(0) = 0.
double half_map(const LienardParams& p, double y0,
                const SolverOptions& opt = default_solver_options());

// Inverse map P^{-1}(y1) >= 0 for y1 in P(I); same mechanics with the roles
// of the endpoints swapped. A positive argument evaluates the involutive
// extension (the forward partner).
double half_map_inverse(const LienardParams& p, double y1,
                        const SolverOptions& opt = default_solver_options());

// P'(y0) = y0 W(P(y0)) / (P(y0) W(y0)); strictly negative on the interior of
// I. Throws TangencyPoint when P(y0) = 0 (origin tangency has limit -1; at
// hat_y0 the one-sided derivative diverges).
double derivative1(const LienardParams& p, double y0,
                   const SolverOptions& opt = default_solver_options());

// P''(y0) = -a^2 (y0^2 - P^2) W(P) / (P^3 W(y0)^2); sign is -sign(a^2 T).
double derivative2(const LienardParams& p, double y0,
                   const SolverOptions& opt = default_solver_options());

// Sign of y0 + P(y0) as -1/0/+1; equals -sign(T) away from the tangency.
// Uses a cancellation-free jet tail in the near-tangency regime.
int bisector_position(const LienardParams& p, double y0,
                      const SolverOptions& opt = default_solver_options());

}  // namespace halfmap
