#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace halfmap {

// Planar linear system in Lienard canonical form:
//   x' = T*x - y,  y' = D*x - a
// restricted to the closed left half-plane for the forward half-map.
// The section is the y-axis; W(y) = D*y^2 - a*T*y + a^2 drives everything.
struct LienardParams {
  double T = 0.0;  // trace
  double D = 0.0;  // determinant
  double a = 0.0;  // tangency datum: y' = -a on the section axis. a^2 + D^2 != 0 required.
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct NonexistentHalfMap : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct PvUndefined : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct TangencyPoint : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct WrongSide : Error { using Error::Error; };
struct NoReturn : Error { using Error::Error; };
struct SearchBudgetExceeded : Error { using Error::Error; };

inline void validate(const LienardParams& p) {
  if (!std::isfinite(p.T) || !std::isfinite(p.D) || !std::isfinite(p.a))
    throw InvalidParams("parameters must be finite");
  if (p.a == 0.0 && p.D == 0.0)
    throw InvalidParams("degenerate system: requires a^2 + D^2 != 0");
}

// W(y) = D y^2 - a T y + a^2; positive at y=0 whenever a != 0.
inline double eval_w(const LienardParams& p, double y) {
  return (p.D * y - p.a * p.T) * y + p.a * p.a;
}

}  // namespace halfmap
