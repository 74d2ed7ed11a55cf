#include "halfmap/pwl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "halfmap/half_map.hpp"
#include "halfmap/series.hpp"

namespace halfmap {

LienardParams reflected_right(const PwlSystem& sys) {
  return {-sys.right.T, sys.right.D, -sys.right.a};
}

double forward_map(const PwlSystem& sys, double y0, const SolverOptions& opt) {
  if (!(y0 >= 0.0)) throw OutOfDomain("forward map needs y0 >= 0");
  return half_map(sys.left, y0, opt);
}

double backward_map(const PwlSystem& sys, double y0, const SolverOptions& opt) {
  const double shifted = y0 - sys.b;
  if (!(shifted >= 0.0)) throw OutOfDomain("backward map needs y0 >= b");
  return half_map(reflected_right(sys), shifted, opt) + sys.b;
}

double displacement(const PwlSystem& sys, double y0, const SolverOptions& opt) {
  return forward_map(sys, y0, opt) - backward_map(sys, y0, opt);
}

SlidingSegment sliding_segment(const PwlSystem& sys) {
  return {std::min(0.0, sys.b), std::max(0.0, sys.b), sys.b == 0.0};
}

namespace {

struct Domains {
  DomainInfo left;
  DomainInfo right;  // of the reflected right zone
};

std::optional<Domains> both_domains(const PwlSystem& sys, const SolverOptions& opt) {
  try {
    Domains d{domain_interval(sys.left, opt), domain_interval(reflected_right(sys), opt)};
    if (!d.left.exists || !d.right.exists) return std::nullopt;
    return d;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// common scan interval (lo, up) for y0: both maps defined, strictly above
// both tangencies
std::pair<double, double> common_interval(const PwlSystem& sys, const Domains& d) {
  const double lo = std::max(d.left.lower.value, sys.b + d.right.lower.value);
  const double upl =
      d.left.upper.kind == EndpointKind::Unbounded ? INFINITY : d.left.upper.value;
  const double upr = d.right.upper.kind == EndpointKind::Unbounded
                         ? INFINITY
                         : sys.b + d.right.upper.value;
  return {lo, std::min(upl, upr)};
}

bool domains_overlap(const PwlSystem& sys, const SolverOptions& opt) {
  const auto d = both_domains(sys, opt);
  if (!d) return false;
  const auto [lo, up] = common_interval(sys, *d);
  return lo < up;
}

const char* kind_slug(CertificateKind k) {
  switch (k) {
    case CertificateKind::ZeroTracesContinuum: return "zero-traces-continuum";
    case CertificateKind::ZeroTracesNone: return "zero-traces-none";
    case CertificateKind::AlignedTracesNone: return "aligned-traces-none";
    case CertificateKind::AtMostTwoLimitCycles: return "at-most-two-limit-cycles";
    case CertificateKind::NoLimitCycles: return "no-limit-cycles";
  }
  return "";
}

}  // namespace

std::vector<Certificate> corollary_certificates(const PwlSystem& sys) {
  std::vector<Certificate> out;
  const double TL = sys.left.T, TR = sys.right.T, b = sys.b;
  const bool zero_traces = TL == 0.0 && TR == 0.0;
  bool nonexistence = false;
  if (zero_traces) {
    if (b != 0.0) {
      out.push_back({CertificateKind::ZeroTracesNone,
                     "both traces vanish and the tangencies are separated (b != 0): "
                     "no crossing periodic orbits"});
      nonexistence = true;
    } else if (domains_overlap(sys, default_solver_options())) {
      out.push_back({CertificateKind::ZeroTracesContinuum,
                     "both traces vanish, the tangencies coincide (b = 0) and the "
                     "half-map domains overlap: a continuum of crossing periodic orbits"});
    }
  }
  if (TL * TR >= 0.0 &&
      ((TL != 0.0 && TL * b >= 0.0) || (TR != 0.0 && TR * b >= 0.0))) {
    out.push_back({CertificateKind::AlignedTracesNone,
                   "aligned traces (T_L*T_R >= 0) with a nonzero trace satisfying "
                   "trace*b >= 0: no crossing periodic orbits"});
    nonexistence = true;
  }
  if (TL * TR > 0.0)
    out.push_back({CertificateKind::AtMostTwoLimitCycles,
                   "strictly aligned traces (T_L*T_R > 0): at most two crossing "
                   "limit cycles"});
  if (zero_traces || nonexistence)
    out.push_back({CertificateKind::NoLimitCycles,
                   "no isolated crossing periodic orbits: either both traces vanish "
                   "or the aligned-trace nonexistence hypotheses hold"});
  return out;
}

namespace {

// interior grid over (lo, up), cosine-graded toward both ends; an unbounded
// upper end is charted projectively with the given span
std::vector<double> graded_points(double lo, double up, double span, int n) {
  std::vector<double> ys;
  ys.reserve(static_cast<size_t>(n));
  const bool finite = std::isfinite(up);
  for (int i = 1; i <= n; ++i) {
    const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (n + 1)));
    ys.push_back(finite ? lo + (up - lo) * s : lo + span * s / (1.0 - s));
  }
  return ys;
}

double eval_disp(const PwlSystem& sys, double y, const SolverOptions& opt) {
  try {
    return displacement(sys, y, opt);
  } catch (const Error&) {
    return NAN;
  }
}

struct Scan {
  std::vector<double> y;
  std::vector<double> d;
};

Scan scan_points(const PwlSystem& sys, const std::vector<double>& ys,
                 const SolverOptions& opt) {
  Scan s;
  s.y = ys;
  s.d.reserve(ys.size());
  for (double y : ys) s.d.push_back(eval_disp(sys, y, opt));
  return s;
}

// asymptotic coefficients (slope, intercept, 1/y, 1/y^2) of a half-map whose
// domain and image are both unbounded; nullopt when no expansion applies
std::optional<std::array<double, 4>> tail_coeffs(const LienardParams& p) {
  if (4.0 * p.D - p.T * p.T > 0.0) {
    const PowerSeries s = taylor_infinity(p);
    return std::array<double, 4>{s.coefficients[0], s.coefficients[1],
                                 s.coefficients[2], s.coefficients[3]};
  }
  if (p.T == 0.0) return std::array<double, 4>{-1.0, 0.0, 0.0, 0.0};
  return std::nullopt;
}

// tail coefficients of y_R(y) = P_refl(y - b) + b re-centered on powers of y
std::optional<std::array<double, 4>> right_tail_coeffs(const PwlSystem& sys) {
  const auto t = tail_coeffs(reflected_right(sys));
  if (!t) return std::nullopt;
  const auto [s1, s0, sm1, sm2] = *t;
  return std::array<double, 4>{s1, s0 + sys.b * (1.0 - s1), sm1, sm2 + sm1 * sys.b};
}

std::optional<int> expansion_tail_sign(const PwlSystem& sys) {
  const auto tl = tail_coeffs(sys.left);
  const auto tr = right_tail_coeffs(sys);
  if (!tl || !tr) return std::nullopt;
  for (int k = 0; k < 4; ++k) {
    const double diff = (*tl)[static_cast<size_t>(k)] - (*tr)[static_cast<size_t>(k)];
    const double mag = std::fabs((*tl)[static_cast<size_t>(k)]) +
                       std::fabs((*tr)[static_cast<size_t>(k)]) + 1.0;
    if (std::fabs(diff) > 1e-9 * mag) return diff > 0.0 ? 1 : -1;
  }
  return std::nullopt;
}

double refine_min_abs(const PwlSystem& sys, double a, double b, const SolverOptions& opt) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = std::fabs(eval_disp(sys, c, opt)), fd = std::fabs(eval_disp(sys, d, opt));
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = std::fabs(eval_disp(sys, c, opt));
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = std::fabs(eval_disp(sys, d, opt));
    }
  }
  return 0.5 * (a + b);
}

void classify_orbit(const PwlSystem& sys, double y0, bool tangential,
                    const SearchConfig& cfg, const SolverOptions& opt,
                    std::vector<CrossingOrbit>& orbits) {
  CrossingOrbit orb;
  orb.y0 = y0;
  orb.tangential = tangential;
  try {
    orb.y1 = forward_map(sys, y0, opt);
    const double dl = derivative1(sys.left, y0, opt);
    const double dr = derivative1(reflected_right(sys), y0 - sys.b, opt);
    orb.multiplier = dl / dr;
  } catch (const Error&) {
    orb.y1 = NAN;
    orb.multiplier = NAN;
  }
  if (tangential || !std::isfinite(orb.multiplier) ||
      std::fabs(std::fabs(orb.multiplier) - 1.0) <= cfg.nonhyperbolic_band) {
    orb.stability = Stability::Nonhyperbolic;
  } else {
    orb.stability =
        std::fabs(orb.multiplier) < 1.0 ? Stability::Stable : Stability::Unstable;
  }
  for (const CrossingOrbit& other : orbits) {
    if (std::fabs(other.y0 - y0) <= 1e-8 * (1.0 + std::fabs(y0))) return;  // duplicate
  }
  orbits.push_back(orb);
}

void scan_for_orbits(const PwlSystem& sys, const Scan& sc, const SearchConfig& cfg,
                     const SolverOptions& opt, std::vector<CrossingOrbit>& orbits) {
  SolverOptions ropt;
  ropt.tol = cfg.root_tol;
  ropt.max_iters = 300;
  const auto f = [&](double y) { return displacement(sys, y, opt); };
  const size_t n = sc.y.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    const double da = sc.d[i], db = sc.d[i + 1];
    if (std::isnan(da) || std::isnan(db)) continue;
    if (da == 0.0) {
      classify_orbit(sys, sc.y[i], false, cfg, opt, orbits);
      continue;
    }
    if ((da > 0.0) != (db > 0.0)) {
      const double y0 = find_root_bracketed(f, sc.y[i], sc.y[i + 1], da, db, ropt);
      classify_orbit(sys, y0, false, cfg, opt, orbits);
    }
  }
  if (!sc.d.empty() && sc.d.back() == 0.0)
    classify_orbit(sys, sc.y.back(), false, cfg, opt, orbits);
  // sign-preserving dips: even-multiplicity (tangential) zeros
  for (size_t i = 1; i + 1 < n; ++i) {
    const double dm = sc.d[i - 1], dc = sc.d[i], dp = sc.d[i + 1];
    if (std::isnan(dm) || std::isnan(dc) || std::isnan(dp) || dc == 0.0) continue;
    if ((dm > 0.0) != (dc > 0.0) || (dp > 0.0) != (dc > 0.0)) continue;  // handled above
    if (std::fabs(dc) >= std::fabs(dm) || std::fabs(dc) >= std::fabs(dp)) continue;
    if (std::fabs(dc) > cfg.tangential_tol * (1.0 + std::fabs(sc.y[i]))) continue;
    const double ym = refine_min_abs(sys, sc.y[i - 1], sc.y[i + 1], opt);
    const double dmv = eval_disp(sys, ym, opt);
    if (std::fabs(dmv) <= cfg.tangential_tol * (1.0 + std::fabs(ym)))
      classify_orbit(sys, ym, true, cfg, opt, orbits);
  }
}

}  // namespace

CrossingOrbitReport find_crossing_orbits(const PwlSystem& sys, const SearchConfig& cfg,
                                         const SolverOptions& opt) {
  CrossingOrbitReport rep;
  for (const Certificate& cert : corollary_certificates(sys)) {
    switch (cert.kind) {
      case CertificateKind::ZeroTracesNone:
      case CertificateKind::AlignedTracesNone:
        rep.classification = OrbitClassification::None;
        rep.certificate = kind_slug(cert.kind);
        return rep;
      case CertificateKind::ZeroTracesContinuum:
        rep.classification = OrbitClassification::Continuum;
        rep.certificate = kind_slug(cert.kind);
        return rep;
      default:
        break;
    }
  }

  const auto doms = both_domains(sys, opt);
  if (!doms) return rep;  // a half-map is missing: no crossing orbits
  const auto [lo, up] = common_interval(sys, *doms);
  if (!(lo < up)) return rep;

  const double span = std::max({1.0, std::fabs(sys.b), std::fabs(sys.left.a),
                                std::fabs(sys.right.a), std::fabs(lo)});

  // continuum probe: a displacement that vanishes identically on a graded
  // sample is a continuum, never a finite list of roots
  {
    const Scan probe =
        scan_points(sys, graded_points(lo, up, span, cfg.continuum_samples), opt);
    bool all_zero = true;
    for (size_t i = 0; i < probe.y.size() && all_zero; ++i) {
      if (std::isnan(probe.d[i]) ||
          std::fabs(probe.d[i]) > cfg.continuum_tol * (1.0 + std::fabs(probe.y[i])))
        all_zero = false;
    }
    if (all_zero && !probe.y.empty()) {
      rep.classification = OrbitClassification::Continuum;
      return rep;
    }
  }

  Scan sc = scan_points(sys, graded_points(lo, up, span, cfg.grid_points), opt);
  scan_for_orbits(sys, sc, cfg, opt, rep.orbits);

  if (!std::isfinite(up)) {
    // decide the tail beyond the last grid point; extend while unresolved
    double yend = sc.y.back();
    double dend = sc.d.back();
    const double im_left = doms->left.image_lower.kind == EndpointKind::Unbounded
                               ? -INFINITY
                               : doms->left.image_lower.value;
    const double im_right = doms->right.image_lower.kind == EndpointKind::Unbounded
                                ? -INFINITY
                                : sys.b + doms->right.image_lower.value;
    bool resolved = false;
    for (int e = 0; e <= cfg.max_expansions && !resolved; ++e) {
      // monotone bounds: y_L decreases to im_left, y_R decreases to im_right,
      // so past yend the displacement is pinched by these constants
      try {
        if (std::isfinite(im_left) && im_left - backward_map(sys, yend, opt) > 0.0) {
          resolved = true;  // displacement certified positive past yend
          break;
        }
        if (std::isfinite(im_right) && forward_map(sys, yend, opt) - im_right < 0.0) {
          resolved = true;  // certified negative past yend
          break;
        }
      } catch (const Error&) {
      }
      if (const auto ts = expansion_tail_sign(sys);
          ts && !std::isnan(dend) && dend != 0.0 && (dend > 0.0) == (*ts > 0)) {
        resolved = true;  // asymptotic sign already attained
        break;
      }
      if (e == cfg.max_expansions) break;
      const double ynew = yend * 2.0;
      std::vector<double> ext;
      for (int i = 1; i <= 32; ++i)
        ext.push_back(yend * std::pow(2.0, static_cast<double>(i) / 32.0));
      const Scan tail = scan_points(sys, ext, opt);
      Scan seg;
      seg.y.push_back(yend);
      seg.d.push_back(dend);
      seg.y.insert(seg.y.end(), tail.y.begin(), tail.y.end());
      seg.d.insert(seg.d.end(), tail.d.begin(), tail.d.end());
      scan_for_orbits(sys, seg, cfg, opt, rep.orbits);
      yend = ynew;
      dend = seg.d.back();
    }
    if (!resolved) rep.budget_exhausted = true;
  }

  rep.classification =
      rep.orbits.empty() ? OrbitClassification::None : OrbitClassification::Finite;
  std::sort(rep.orbits.begin(), rep.orbits.end(),
            [](const CrossingOrbit& a, const CrossingOrbit& b) { return a.y0 < b.y0; });
  return rep;
}

}  // namespace halfmap
