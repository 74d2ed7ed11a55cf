#pragma once

#include <Eigen/Dense>
#include <vector>

#include "halfmap/params.hpp"

namespace halfmap {

// Trajectory-based ground truth for the half-map, kept entirely independent
// of the integral characterization: closed-form matrix flow plus event
// detection on the section x = 0.

// State (x, y) advanced by time t under x' = T x - y, y' = D x - a, using the
// eigenstructure of [[T, -1], [D, 0]] with the affine particular solution;
// when D = 0 the equilibrium may not exist and the affine drift form is used.
Eigen::Vector2d flow_at(const LienardParams& p, const Eigen::Vector2d& state, double t);

// Same endpoint via an adaptive embedded Runge-Kutta integrator; only a
// cross-check of the closed form.
Eigen::Vector2d flow_at_rk(const LienardParams& p, const Eigen::Vector2d& state, double t,
                           double tol = 1e-12);

enum class Side { Left, Right };

struct FlowCrossing {
  double flight_time = 0.0;
  double exit_y = 0.0;
  bool grazing = false;  // |exit_y| at the section within the grazing band
};

struct FlowOptions {
  double periods_budget = 10.0;    // spiral spectra: multiples of the rotation period
  double arc_budget = 1e6;         // other spectra: arc length in scaled units
  double section_tol = 1e-13;      // |x| target at the detected crossing (scaled)
  double grazing_band = 1e-10;     // |exit_y| below this flags a graze
  int max_steps = 20000000;
};

// First crossing back onto the section x = 0 of the orbit through (0, y0)
// that immediately enters the requested half-plane (left needs y0 >= 0 with
// a < 0 allowed at the tangency, right needs y0 <= 0). Throws NoReturn when
// the budget is exhausted without a crossing.
FlowCrossing first_return(const LienardParams& p, double y0, Side side = Side::Left,
                          const FlowOptions& opt = FlowOptions{});

// Trajectory-derived half-map value: exit_y of the left first return.
double oracle_half_map(const LienardParams& p, double y0, const FlowOptions& opt = FlowOptions{});

struct OrbitSample {
  std::vector<double> times;
  std::vector<Eigen::Vector2d> states;
};

// n+1 uniformly spaced states on [0, t_end] (CSV export through the CLI).
OrbitSample sample_orbit(const LienardParams& p, const Eigen::Vector2d& start, double t_end,
                         int n);

}  // namespace halfmap
