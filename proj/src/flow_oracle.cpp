#include "halfmap/flow_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfmap/solve.hpp"

namespace halfmap {

namespace {

// (e^z - 1)/z and (e^z - 1 - z)/z^2 with series fallbacks near 0.
double phi1(double z) {
  if (std::fabs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::fabs(z) < 1e-4)
    return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0));
  return (std::expm1(z) - z) / (z * z);
}

Eigen::Vector2d rhs(const LienardParams& p, const Eigen::Vector2d& z) {
  return {p.T * z.x() - z.y(), p.D * z.x() - p.a};
}

}  // namespace

Eigen::Vector2d flow_at(const LienardParams& p, const Eigen::Vector2d& state, double t) {
  validate(p);
  if (p.D == 0.0) {
    // y decouples: y = y0 - a t, and x solves x' = T x - y(t).
    const double y = state.y() - p.a * t;
    const double zt = p.T * t;
    const double x = std::exp(zt) * state.x() - state.y() * t * phi1(zt) +
                     p.a * t * t * phi2(zt);
    return {x, y};
  }
  const double mu = 0.5 * p.T;
  const double disc = mu * mu - p.D;
  double c, s;  // exp(t(A - mu I)) = c I + s (A - mu I)
  if (disc > 0.0) {
    const double w = std::sqrt(disc);
    c = std::cosh(w * t);
    s = w * t == 0.0 ? t : std::sinh(w * t) / w;
  } else if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else {
    c = 1.0;
    s = t;
  }
  const Eigen::Vector2d eq(p.a / p.D, p.T * p.a / p.D);
  const Eigen::Vector2d u = state - eq;
  Eigen::Matrix2d m;
  m << c + s * (p.T - mu), -s, s * p.D, c - s * mu;
  return eq + std::exp(mu * t) * (m * u);
}

Eigen::Vector2d flow_at_rk(const LienardParams& p, const Eigen::Vector2d& state, double t,
                           double tol) {
  validate(p);
  // Cash-Karp embedded 4(5) pair with step-doubling style adaptivity.
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                      b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
  static const double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                      d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336, d6 = c6 - 1.0 / 4;

  const double dir = t >= 0.0 ? 1.0 : -1.0;
  double remaining = std::fabs(t);
  double h = std::min(remaining, 0.1 / std::max({1.0, std::fabs(p.T), std::sqrt(std::fabs(p.D))}));
  Eigen::Vector2d z = state;
  int guard = 0;
  while (remaining > 0.0 && ++guard < 2000000) {
    h = std::min(h, remaining);
    const double hd = dir * h;
    const Eigen::Vector2d k1 = rhs(p, z);
    const Eigen::Vector2d k2 = rhs(p, z + hd * (b21 * k1));
    const Eigen::Vector2d k3 = rhs(p, z + hd * (b31 * k1 + b32 * k2));
    const Eigen::Vector2d k4 = rhs(p, z + hd * (b41 * k1 + b42 * k2 + b43 * k3));
    const Eigen::Vector2d k5 = rhs(p, z + hd * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
    const Eigen::Vector2d k6 =
        rhs(p, z + hd * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));
    const Eigen::Vector2d inc = hd * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    const Eigen::Vector2d err = hd * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    const double scale = tol * (1.0 + z.norm());
    const double e = err.norm() / scale;
    if (e <= 1.0) {
      z += inc;
      remaining -= h;
      h *= std::min(5.0, 0.9 * std::pow(std::max(e, 1e-16), -0.2));
    } else {
      h *= std::max(0.1, 0.9 * std::pow(e, -0.25));
    }
  }
  if (remaining > 0.0) throw NoConvergence("adaptive integrator exhausted its step budget");
  return z;
}

namespace {

struct SectionWalk {
  const LienardParams& p;
  Eigen::Vector2d z0;
  double sgn;  // xi = sgn * x; the tracked half-plane is xi <= 0

  double xi(double t) const { return sgn * flow_at(p, z0, t).x(); }
  double dxi(double t) const {
    const Eigen::Vector2d z = flow_at(p, z0, t);
    return sgn * (p.T * z.x() - z.y());
  }
};

FlowCrossing resolve_crossing(const SectionWalk& walk, double tl, double th, double fl,
                              double fh, double scale, const FlowOptions& opt) {
  SolverOptions sopt;
  sopt.tol = 0.0;  // collapse to the floating-point floor in time
  sopt.max_iters = 220;
  double tstar = find_root_bracketed([&](double t) { return walk.xi(t); }, tl, th, fl, fh, sopt);
  // Newton polish on x(t) = 0
  for (int it = 0; it < 4; ++it) {
    const double x = walk.xi(tstar);
    const double dx = walk.dxi(tstar);
    if (dx == 0.0) break;
    const double next = tstar - x / dx;
    if (!(next > tl && next < th)) break;
    tstar = next;
  }
  const Eigen::Vector2d exit = flow_at(walk.p, walk.z0, tstar);
  FlowCrossing out;
  out.flight_time = tstar;
  out.exit_y = exit.y();
  out.grazing = std::fabs(exit.y()) <= opt.grazing_band * scale;
  return out;
}

}  // namespace

FlowCrossing first_return(const LienardParams& p, double y0, Side side,
                          const FlowOptions& opt) {
  validate(p);
  if (!std::isfinite(y0)) throw OutOfDomain("y0 is not finite");
  const double sgn = side == Side::Left ? 1.0 : -1.0;
  if (sgn * y0 < 0.0)
    throw WrongSide(side == Side::Left ? "left first return needs y0 >= 0"
                                       : "right first return needs y0 <= 0");
  SectionWalk walk{p, Eigen::Vector2d(0.0, y0), sgn};

  if (y0 == 0.0 && sgn * p.a >= 0.0) {
    // The orbit through the origin curves away from (or fixes) this
    // half-plane; the return degenerates to the tangency itself.
    return FlowCrossing{0.0, 0.0, true};
  }

  const double L = std::max({1.0, std::fabs(y0), std::fabs(p.a)});
  const double rate =
      std::max({std::fabs(p.T), std::sqrt(std::fabs(p.D)), std::sqrt(std::fabs(p.a) / L), 1e-8});
  const double tau = 1.0 / rate;
  const double disc = 0.25 * p.T * p.T - p.D;
  const bool spiral = disc < 0.0;
  const double period = spiral ? 2.0 * std::numbers::pi / std::sqrt(-disc) : 0.0;

  // step off the section far enough that xi is strictly negative
  double t_prev = 1e-9 * tau;
  double f_prev = walk.xi(t_prev);
  for (int k = 0; k < 6 && f_prev >= 0.0; ++k) {
    t_prev *= 1e-3;
    f_prev = walk.xi(t_prev);
  }
  if (f_prev >= 0.0) return FlowCrossing{0.0, 0.0, true};

  double h = spiral ? period / 64.0 : 1e-3 * tau;
  double arc = 0.0;
  Eigen::Vector2d z_prev = flow_at(p, walk.z0, t_prev);
  double d_prev = walk.dxi(t_prev);
  int quiet = 0;

  for (int step = 0; step < opt.max_steps; ++step) {
    const double t_next = t_prev + h;
    const double f_next = walk.xi(t_next);
    const double d_next = walk.dxi(t_next);

    // Between consecutive zeros of x there is a zero of x'; x' changes sign
    // at most once per step (once-per-half-period in the spiral case, at most
    // once globally otherwise), so checking the x'-zero closes every gap.
    if (std::isfinite(f_next) && ((d_prev < 0.0) != (d_next < 0.0))) {
      SolverOptions sopt;
      sopt.tol = 0.0;
      sopt.max_iters = 220;
      const double t_ext = find_root_bracketed([&](double t) { return walk.dxi(t); }, t_prev,
                                               t_next, d_prev, d_next, sopt);
      const double f_ext = walk.xi(t_ext);
      if (f_ext >= 0.0)
        return resolve_crossing(walk, t_prev, t_ext, f_prev, f_ext, L, opt);
    }
    if (std::isfinite(f_next) && f_next >= 0.0)
      return resolve_crossing(walk, t_prev, t_next, f_prev, f_next, L, opt);

    const Eigen::Vector2d z_next = flow_at(p, walk.z0, t_next);
    if (!z_next.allFinite()) throw NoReturn("orbit escaped to infinity without returning");
    const double ds = (z_next - z_prev).norm();
    arc += ds;
    quiet = ds < 1e-15 * L ? quiet + 1 : 0;
    if (quiet > 64) throw NoReturn("orbit settled onto an equilibrium without returning");
    if (spiral) {
      if (t_next > opt.periods_budget * period)
        throw NoReturn("orbit exceeded the rotation budget without returning");
    } else {
      if (arc > opt.arc_budget * L)
        throw NoReturn("orbit exceeded the arc-length budget without returning");
      h *= 1.25;
    }
    t_prev = t_next;
    f_prev = f_next;
    d_prev = d_next;
    z_prev = z_next;
  }
  throw NoReturn("step budget exhausted without a section crossing");
}

double oracle_half_map(const LienardParams& p, double y0, const FlowOptions& opt) {
  return first_return(p, y0, Side::Left, opt).exit_y;
}

OrbitSample sample_orbit(const LienardParams& p, const Eigen::Vector2d& start, double t_end,
                         int n) {
  validate(p);
  if (n < 1) throw PreconditionViolated("orbit sampling needs n >= 1");
  OrbitSample out;
  out.times.reserve(static_cast<size_t>(n) + 1);
  out.states.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(n);
    out.times.push_back(t);
    out.states.push_back(flow_at(p, start, t));
  }
  return out;
}

}  // namespace halfmap
