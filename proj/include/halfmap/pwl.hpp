#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfmap/domain.hpp"
#include "halfmap/params.hpp"

namespace halfmap {

// Two-zone piecewise linear system split by the y-axis: the left zone acts in
// x <= 0 in Lienard form, the right zone in x >= 0 with its tangency shifted
// to (0, b). Crossing periodic orbits correspond to intersections of the left
// forward map with the right backward map on the section.
struct PwlSystem {
  LienardParams left;
  LienardParams right;
  double b = 0.0;
};

// Right-zone data reduced to left-form machinery: (x, y, t) -> (-x, -y, t)
// turns the right zone into a left zone with (T, D, a) = (-T_R, D_R, -a_R).
LienardParams reflected_right(const PwlSystem& sys);

// y_L(y0): left forward map.
double forward_map(const PwlSystem& sys, double y0,
                   const SolverOptions& opt = default_solver_options());
// y_R(y0) = P_reflected(y0 - b) + b: right backward map.
double backward_map(const PwlSystem& sys, double y0,
                    const SolverOptions& opt = default_solver_options());
// y_L(y0) - y_R(y0); its zeros are the crossing periodic orbits.
double displacement(const PwlSystem& sys, double y0,
                    const SolverOptions& opt = default_solver_options());

// Segment of the section between the two tangencies (0,0) and (0,b); points
// of a genuine crossing orbit must avoid its closure.
struct SlidingSegment {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;  // b = 0: the segment collapses to the origin
};
SlidingSegment sliding_segment(const PwlSystem& sys);

enum class Stability { Stable, Unstable, Nonhyperbolic };

struct CrossingOrbit {
  double y0 = 0.0;          // upper section point
  double y1 = 0.0;          // lower section point
  double multiplier = 0.0;  // return-map derivative at the fixed point
  Stability stability = Stability::Nonhyperbolic;
  bool tangential = false;  // even-multiplicity zero of the displacement
};

enum class OrbitClassification { None, Continuum, Finite };

struct CrossingOrbitReport {
  OrbitClassification classification = OrbitClassification::None;
  std::vector<CrossingOrbit> orbits;
  std::string certificate;  // analytic shortcut that decided, empty if numeric
  bool budget_exhausted = false;
};

enum class CertificateKind {
  ZeroTracesContinuum,        // T_L = T_R = 0, b = 0, overlapping domains
  ZeroTracesNone,             // T_L = T_R = 0, b != 0
  AlignedTracesNone,          // T_L*T_R >= 0, nonzero trace with trace*b >= 0
  AtMostTwoLimitCycles,       // T_L*T_R > 0
  NoLimitCycles,              // no isolated orbit: zero traces, or the
                              // aligned-traces nonexistence hypotheses hold
};

struct Certificate {
  CertificateKind kind;
  std::string statement;
};

// Every analytic certificate whose hypotheses hold for this system.
std::vector<Certificate> corollary_certificates(const PwlSystem& sys);

struct SearchConfig {
  int grid_points = 600;          // graded displacement grid over the common domain
  double root_tol = 1e-11;        // bisection tolerance on y0
  double tangential_tol = 1e-9;   // |displacement| at a sign-preserving minimum
  double nonhyperbolic_band = 1e-6;
  double tail_scale = 1e3;        // switch to the infinity expansions past this * scale
  int max_expansions = 60;
  int continuum_samples = 64;
  double continuum_tol = 1e-12;
};

// Certificates first, then a graded displacement scan with bracketed
// refinement; tail behavior past the grid is decided by the infinity
// expansions of both zones. Throws nothing for budget exhaustion; the report
// carries budget_exhausted and partial results instead (the CLI maps that to
// its own exit code).
CrossingOrbitReport find_crossing_orbits(const PwlSystem& sys,
                                         const SearchConfig& cfg = SearchConfig{},
                                         const SolverOptions& opt = default_solver_options());

}  // namespace halfmap
