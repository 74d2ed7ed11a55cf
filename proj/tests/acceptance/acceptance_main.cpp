// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every numeric bound is stated next to its check; randomness is seeded, so
// reruns are bit-identical.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "../support.hpp"
#include "halfmap/domain.hpp"
#include "halfmap/flow_oracle.hpp"
#include "halfmap/half_map.hpp"
#include "halfmap/params.hpp"
#include "halfmap/pwl.hpp"
#include "halfmap/series.hpp"

using namespace halfmap;

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

std::string zstr(const LienardParams& p) {
  char b[128];
  std::snprintf(b, sizeof(b), "(T=%.12g, D=%.12g, a=%.12g)", p.T, p.D, p.a);
  return b;
}

// violation counter with a sticky first example for the failure line
struct Check {
  long total = 0;
  long bad = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok && bad++ == 0) first = what;
  }
};

// ---------------------------------------------------------------------------
// printed closed forms (the conformance targets)

std::array<double, 7> origin_closed(const LienardParams& p) {
  const double T = p.T, D = p.D, a = p.a;
  std::array<double, 7> c{};
  c[1] = -1.0;
  c[2] = -2.0 * T / (3.0 * a);
  c[3] = -4.0 * T * T / (9.0 * a * a);
  c[4] = 2.0 * (9.0 * D * T - 22.0 * T * T * T) / (135.0 * a * a * a);
  c[5] = 4.0 * (27.0 * D * T * T - 26.0 * std::pow(T, 4)) / (405.0 * std::pow(a, 4));
  c[6] = -2.0 * (27.0 * D * D * T - 176.0 * D * T * T * T + 100.0 * std::pow(T, 5)) /
         (945.0 * std::pow(a, 5));
  return c;
}

std::array<double, 7> shifted_closed(const LienardParams& p, double y1) {
  const double T = p.T, D = p.D, a = p.a;
  const double w = eval_w(p, y1);
  std::array<double, 7> c{};
  c[0] = y1;
  c[1] = 0.0;
  c[2] = w / (2.0 * a * a * y1);
  c[3] = T * w / (3.0 * std::pow(a, 3) * y1);
  c[4] = -(a * a + (D - 2.0 * T * T) * y1 * y1) * w /
         (8.0 * std::pow(a, 4) * std::pow(y1, 3));
  c[5] = -T * (5.0 * a * a + (7.0 * D - 6.0 * T * T) * y1 * y1) * w /
         (30.0 * std::pow(a, 5) * std::pow(y1, 3));
  c[6] = (9.0 * std::pow(a, 4) - 6.0 * std::pow(a, 3) * T * y1 +
          2.0 * a * a * (9.0 * D - 13.0 * T * T) * y1 * y1 +
          (9.0 * D * D - 46.0 * D * T * T + 24.0 * std::pow(T, 4)) * std::pow(y1, 4)) *
         w / (144.0 * std::pow(a, 6) * std::pow(y1, 5));
  return c;
}

std::array<double, 4> puiseux_closed(const LienardParams& p, double y0h) {
  const double T = p.T, D = p.D, a = p.a;
  const double r = 2.0 * y0h / eval_w(p, y0h);
  std::array<double, 4> q{};
  q[1] = a * std::sqrt(r);
  q[2] = -a * T * r / 3.0;
  q[3] = (std::pow(a, 3) / 72.0) *
         ((9.0 * D + 2.0 * T * T) / (a * a) + 9.0 / (y0h * y0h)) *
         std::pow(std::sqrt(r), 3);
  return q;
}

std::array<double, 5> alphas_closed(const LienardParams& p) {
  const double T = p.T, D = p.D, a = p.a;
  const double E = std::exp(std::numbers::pi * T / std::sqrt(4.0 * D - T * T));
  std::array<double, 5> al{};
  al[1] = -1.0 / E;
  al[2] = -(2.0 * a * T / D) * (E + 1.0) / (E * E);
  al[3] = (3.0 * a * a / (D * D)) * (E + 1.0) *
          ((D - 2.0 * T * T) * E - (D + 2.0 * T * T)) / std::pow(E, 3);
  al[4] = (4.0 * std::pow(a, 3) * T / std::pow(D, 3)) * std::pow(1.0 + E, 2) *
          (7.0 * D * E - 8.0 * D - 6.0 * T * T * (1.0 + E)) / std::pow(E, 4);
  return al;
}

bool close_rel(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
}

// ---------------------------------------------------------------------------
// criterion 1: printed-series conformance

bool crit1(std::string& detail) {
  auto g = testsupport::make_rng(101);
  Check ck;
  const double rel = 1e-10;
  for (int i = 0; i < 100; ++i) {
    switch (i % 4) {
      case 0: {  // origin jet, a > 0
        const LienardParams p{testsupport::uniform(g, -2.0, 2.0) +
                                  std::copysign(0.1, testsupport::uniform(g, -1.0, 1.0)),
                              testsupport::uniform(g, -2.0, 2.0),
                              testsupport::uniform(g, 0.2, 2.0)};
        const auto c = origin_closed(p);
        const auto s = taylor_origin(p, 6);
        for (int k = 1; k <= 6; ++k)
          ck.expect(close_rel(s.coefficients[static_cast<size_t>(k - 1)],
                              c[static_cast<size_t>(k)], rel),
                    "origin jet order " + std::to_string(k) + " at " + zstr(p));
        break;
      }
      case 1: {  // shifted jet, a < 0, T > 0
        const double T = testsupport::uniform(g, 0.2, 2.0);
        const LienardParams p{T, T * T / 4.0 + testsupport::uniform(g, 0.1, 2.0),
                              -testsupport::uniform(g, 0.2, 2.0)};
        const auto s = taylor_origin_shifted(p, 6);
        const double c0 = s.coefficients[0];
        const auto c = shifted_closed(p, c0);
        ck.expect(c0 < 0.0, "shifted jet anchor sign at " + zstr(p));
        ck.expect(std::fabs(s.coefficients[1]) <= rel * std::fabs(c0),
                  "shifted jet order 1 at " + zstr(p));
        for (int k = 2; k <= 6; ++k)
          ck.expect(close_rel(s.coefficients[static_cast<size_t>(k)],
                              c[static_cast<size_t>(k)], rel),
                    "shifted jet order " + std::to_string(k) + " at " + zstr(p));
        break;
      }
      case 2: {  // half-integer jet, a < 0, T < 0
        const double T = -testsupport::uniform(g, 0.2, 1.5);
        const LienardParams p{T, T * T / 4.0 + testsupport::uniform(g, 0.3, 2.0),
                              -testsupport::uniform(g, 0.2, 2.0)};
        const auto s = puiseux_at_hat_y0(p, 3);
        const auto q = puiseux_closed(p, s.expansion_point);
        ck.expect(s.expansion_point > 0.0, "half-integer anchor sign at " + zstr(p));
        for (int k = 1; k <= 3; ++k)
          ck.expect(close_rel(s.coefficients[static_cast<size_t>(k - 1)],
                              q[static_cast<size_t>(k)], rel),
                    "half-integer term " + std::to_string(k) + " at " + zstr(p));
        break;
      }
      default: {  // reciprocal derivatives at infinity vs their own recurrence
        const double T = testsupport::uniform(g, -1.5, 1.5);
        const LienardParams p{T, T * T / 4.0 + testsupport::uniform(g, 0.2, 2.0),
                              testsupport::uniform(g, -2.0, 2.0)};
        const auto al = alphas_closed(p);
        const auto r = reciprocal_jet(p, 4);
        double fact = 1.0;
        for (int k = 1; k <= 4; ++k) {
          fact *= k;
          ck.expect(close_rel(r[static_cast<size_t>(k)] * fact,
                              al[static_cast<size_t>(k)], rel),
                    "reciprocal derivative " + std::to_string(k) + " at " + zstr(p));
        }
        const auto s = taylor_infinity(p);
        ck.expect(close_rel(s.coefficients[0], 1.0 / al[1], rel),
                  "leading term at infinity at " + zstr(p));
        break;
      }
    }
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "100 seeded draws over all four anchors, %ld coefficient checks, rel tol 1e-10%s%s",
                ck.total, ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0;
}

// ---------------------------------------------------------------------------
// criterion 2: trajectory-oracle equivalence on a stratified parameter sweep

struct ZoneSamples {
  LienardParams p;
  DomainInfo dom;
  std::vector<double> y0;
  std::vector<double> P;
};

std::vector<ZoneSamples> g_zones;  // filled by crit2, reused by 4/5/6

bool crit2(std::string& detail) {
  auto g = testsupport::make_rng(202);
  Check ck;
  long zones = 0, skipped = 0;
  for (int sa : {1, 0, -1}) {
    for (int st : {1, 0, -1}) {
      for (int dc = 0; dc < 4; ++dc) {
        if (st == 0 && dc == 2) continue;  // D > 0 with T^2 > 4D needs T != 0
        for (int rep = 0; rep < 30; ++rep) {
          const double T = st == 0 ? 0.0 : st * testsupport::uniform(g, 0.2, 2.0);
          double D = 0.0;
          switch (dc) {
            case 0: D = T * T / 4.0 + testsupport::uniform(g, 0.1, 2.0); break;
            case 1: D = -testsupport::uniform(g, 0.1, 2.0); break;
            case 2: D = testsupport::uniform(g, 0.2, 0.9) * (T * T / 4.0); break;
            default: D = 0.0; break;
          }
          const double a = sa == 0 ? 0.0 : sa * testsupport::uniform(g, 0.2, 2.0);
          if (sa == 0 && dc == 3) continue;  // a = D = 0: W degenerates to 0
          const LienardParams p{T, D, a};
          ++zones;
          const auto dom = domain_interval(p);
          const bool should_exist = a > 0.0 || 4.0 * D - T * T > 0.0;
          ck.expect(dom.exists == should_exist, "existence classification at " + zstr(p));
          if (!dom.exists) {
            bool threw = false;
            try {
              (void)half_map(p, 1.0);
            } catch (const NonexistentHalfMap&) {
              threw = true;
            }
            ck.expect(threw, "missing NonexistentHalfMap at " + zstr(p));
            ++skipped;
            continue;
          }
          ZoneSamples zs;
          zs.p = p;
          zs.dom = dom;
          const double lo = dom.lower.value;
          const bool bounded = dom.upper.kind != EndpointKind::Unbounded;
          const double span = bounded ? dom.upper.value - lo : 0.0;
          const double s = std::max(1.0, std::fabs(a));
          for (int i = 0; i < 20; ++i) {
            const double u = (i + 0.5) / 20.0;
            const double y0 =
                bounded ? lo + 0.96 * u * span : lo + (std::pow(10.0, 2.0 * u) - 1.0) * s;
            if (!in_domain(dom, y0)) continue;
            double pv = 0.0, ov = 0.0;
            try {
              pv = half_map(p, y0);
              ov = oracle_half_map(p, y0);
            } catch (const Error& e) {
              ck.expect(false, std::string("unexpected ") + e.what() + " at " + zstr(p));
              continue;
            }
            ck.expect(std::fabs(pv - ov) <= 1e-8 * (1.0 + std::fabs(pv)),
                      "oracle gap at " + zstr(p) + " y0=" + std::to_string(y0));
            zs.y0.push_back(y0);
            zs.P.push_back(pv);
          }
          if (!zs.y0.empty()) g_zones.push_back(std::move(zs));
        }
      }
    }
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "%ld stratified zones (%ld admissible), %ld checks, gap tol 1e-8*(1+|P|)%s%s",
                zones, zones - skipped, ck.total, ck.bad ? "; first violation: " : "",
                ck.first.c_str());
  detail = b;
  return ck.bad == 0 && zones - skipped >= 500;
}

// ---------------------------------------------------------------------------
// criterion 3: exact closed forms for a = 0 and T = 0

bool crit3(std::string& detail) {
  auto g = testsupport::make_rng(303);
  Check ck;
  for (int i = 0; i < 50; ++i) {
    const double T = testsupport::uniform(g, -1.8, 1.8);
    const double D = T * T / 4.0 + testsupport::uniform(g, 0.1, 2.0);
    const LienardParams p{T, D, 0.0};
    const double E = std::exp(std::numbers::pi * T / std::sqrt(4.0 * D - T * T));
    for (double y0 : {0.1, 1.0, 7.5}) {
      const double pv = half_map(p, y0);
      ck.expect(std::fabs(pv + E * y0) <= 1e-12 * E * y0,
                "linear zone factor at " + zstr(p));
    }
  }
  for (int i = 0; i < 50; ++i) {
    LienardParams p{0.0, 0.0, 0.0};
    switch (i % 3) {
      case 0:
        p = {0.0, testsupport::uniform(g, -2.0, 2.0), testsupport::uniform(g, 0.2, 2.0)};
        break;
      case 1:
        p = {0.0, testsupport::uniform(g, 0.1, 2.0), -testsupport::uniform(g, 0.2, 2.0)};
        break;
      default:
        p = {0.0, testsupport::uniform(g, 0.1, 2.0), 0.0};
        break;
    }
    const auto dom = domain_interval(p);
    for (double u : {0.05, 0.35, 0.8}) {
      const double y0 = dom.upper.kind == EndpointKind::Unbounded
                            ? 10.0 * u
                            : u * dom.upper.value;
      if (!in_domain(dom, y0)) continue;
      ck.expect(std::fabs(half_map(p, y0) + y0) <= 1e-12, "reflection at " + zstr(p));
    }
  }
  const double pinned = half_map({2, 2, 0}, 1.0);
  ck.expect(std::fabs(pinned + std::exp(std::numbers::pi)) <=
                1e-10 * std::exp(std::numbers::pi),
            "pinned critically-damped value");
  char b[256];
  std::snprintf(b, sizeof(b),
                "%ld checks: a=0 factor rel 1e-12, T=0 reflection abs 1e-12, pinned P(1)=-e^pi%s%s",
                ck.total, ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0;
}

// ---------------------------------------------------------------------------
// criterion 4: sign laws on every stored sample

bool crit4(std::string& detail) {
  Check ck;
  for (const auto& zs : g_zones) {
    for (size_t i = 0; i < zs.y0.size(); ++i) {
      const double y0 = zs.y0[i];
      try {
        const int pos = bisector_position(zs.p, y0);
        ck.expect(pos == -sgn(zs.p.T), "bisector sign at " + zstr(zs.p));
        const double d1 = derivative1(zs.p, y0);
        ck.expect(d1 < 0.0, "first derivative sign at " + zstr(zs.p));
        const double d2 = derivative2(zs.p, y0);
        const int want = zs.p.a == 0.0 ? 0 : -sgn(zs.p.T);
        ck.expect(sgn(d2) == want, "second derivative sign at " + zstr(zs.p));
      } catch (const Error& e) {
        ck.expect(false, std::string("unexpected ") + e.what() + " at " + zstr(zs.p));
      }
    }
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "%ld sign checks (bisector = -sign(T), P'' sign = -sign(a^2 T), P' < 0)%s%s",
                ck.total, ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0 && ck.total > 0;
}

// ---------------------------------------------------------------------------
// criterion 5: derivative formulas vs central finite differences

bool crit5(std::string& detail) {
  Check ck;
  for (const auto& zs : g_zones) {
    int used = 0;
    for (size_t i = 0; i < zs.y0.size() && used < 10; ++i) {
      const double y0 = zs.y0[i];
      const double lo = zs.dom.lower.value;
      // near a domain edge the higher derivatives carry a power-law
      // singularity, so the stencil must stay deep inside: truncation of the
      // five-point rules scales like (h/dist)^4
      double h = 1e-3 * (1.0 + std::fabs(y0));
      if (y0 > lo) h = std::min(h, 0.025 * (y0 - lo));
      if (zs.dom.upper.kind != EndpointKind::Unbounded)
        h = std::min(h, 0.025 * (zs.dom.upper.value - y0));
      if (!(h > 1e-5)) continue;
      ++used;
      const auto f = [&](double y) { return half_map(zs.p, y); };
      const double d1 = derivative1(zs.p, y0);
      const double d2 = derivative2(zs.p, y0);
      const double f1 = testsupport::fd1(f, y0, h);
      const double f2 = testsupport::fd2(f, y0, h);
      ck.expect(std::fabs(f1 - d1) <= 1e-6 * std::max(1.0, std::fabs(d1)),
                "P' vs finite difference at " + zstr(zs.p) + " y0=" + std::to_string(y0));
      ck.expect(std::fabs(f2 - d2) <= 1e-4 * std::max(1.0, std::fabs(d2)),
                "P'' vs finite difference at " + zstr(zs.p) + " y0=" + std::to_string(y0));
    }
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "%ld comparisons, rel tol 1e-6 (P') / 1e-4 (P'')%s%s", ck.total,
                ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0 && ck.total >= 2000;
}

// ---------------------------------------------------------------------------
// criterion 6: involution wherever P fixes the tangency

bool crit6(std::string& detail) {
  Check ck;
  long zones = 0, skipped = 0;
  // the back map divides the forward root error by P'(y0); both legs run at
  // the floating-point floor, and samples squashed beyond what doubles can
  // resolve (|P'| < 1e-5 near a compressing edge) are not certifiable
  const SolverOptions tight{1e-15, 200};
  for (const auto& zs : g_zones) {
    const bool fixes_origin = zs.p.a > 0.0 || (zs.p.a < 0.0 && zs.p.T == 0.0);
    if (!fixes_origin || zs.p.a == 0.0) continue;
    ++zones;
    for (size_t i = 0; i < zs.y0.size(); ++i) {
      if (std::fabs(derivative1(zs.p, zs.y0[i])) < 1e-5) {
        ++skipped;
        continue;
      }
      const double fwd = half_map(zs.p, zs.y0[i], tight);
      const double back = half_map(zs.p, fwd, tight);
      ck.expect(std::fabs(back - zs.y0[i]) <= 1e-8 * (1.0 + zs.y0[i]),
                "involution residual at " + zstr(zs.p) +
                    " y0=" + std::to_string(zs.y0[i]));
    }
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "%ld zones, %ld round trips (%ld unresolvable skipped), tol 1e-8*(1+y0)%s%s",
                zones, ck.total, skipped, ck.bad ? "; first violation: " : "",
                ck.first.c_str());
  detail = b;
  return ck.bad == 0 && ck.total > 0;
}

// ---------------------------------------------------------------------------
// criterion 7: truncation residual scaling per anchor

bool crit7(std::string& detail) {
  auto g = testsupport::make_rng(707);
  Check ck;
  // origin jet: order-6 residual at y0 = 1e-2 |a| below 1e-9 |a|
  for (int i = 0; i < 40; ++i) {
    const LienardParams p{testsupport::uniform(g, -2.0, 2.0),
                          testsupport::uniform(g, -2.0, 2.0),
                          testsupport::uniform(g, 0.3, 3.0)};
    const double y0 = 1e-2 * p.a;
    const double resid = std::fabs(series_eval(taylor_origin(p, 6), y0) - half_map(p, y0));
    ck.expect(resid <= 1e-9 * p.a, "origin jet residual at " + zstr(p));
  }
  // infinity expansion: residual decays like y0^-3 between y0 = 1e2 and 1e3.
  // Negative traces keep the omitted-term coefficient well above the
  // evaluation noise of the map itself; zones where the residual at 1e3 sits
  // at the noise floor carry no slope information and are skipped.
  int ratio_zones = 0;
  for (int i = 0; i < 24 && ratio_zones < 12; ++i) {
    const double T = -testsupport::uniform(g, 0.5, 1.3);
    const LienardParams p{T, T * T / 4.0 + testsupport::uniform(g, 0.8, 1.6),
                          std::copysign(testsupport::uniform(g, 0.8, 2.5),
                                        testsupport::uniform(g, -1.0, 1.0))};
    const auto s = taylor_infinity(p);
    const double p3 = half_map(p, 1e3);
    const double r2 = std::fabs(half_map(p, 1e2) - series_eval(s, 1e2));
    const double r3 = std::fabs(p3 - series_eval(s, 1e3));
    if (r3 < 1e-12 * (1.0 + std::fabs(p3))) continue;  // below noise floor
    ++ratio_zones;
    const double ratio = r2 / r3;
    ck.expect(ratio >= 500.0 && ratio <= 2000.0,
              "infinity residual ratio " + std::to_string(ratio) + " at " + zstr(p));
  }
  // half-integer branch: log-log slope 1/2 near the domain edge
  for (int i = 0; i < 10; ++i) {
    const double T = -testsupport::uniform(g, 0.3, 1.2);
    const LienardParams p{T, T * T / 4.0 + testsupport::uniform(g, 0.5, 2.0),
                          -testsupport::uniform(g, 0.3, 1.5)};
    const double hy0 = domain_interval(p).lower.value;
    const double s = std::max(1.0, hy0);
    const double h1 = 1e-4 * s, h2 = 1e-6 * s;
    const double p1 = std::fabs(half_map(p, hy0 + h1));
    const double p2 = std::fabs(half_map(p, hy0 + h2));
    const double slope = (std::log(p1) - std::log(p2)) / (std::log(h1) - std::log(h2));
    ck.expect(std::fabs(slope - 0.5) <= 0.05,
              "edge slope " + std::to_string(slope) + " at " + zstr(p));
  }
  char b[256];
  std::snprintf(b, sizeof(b),
                "origin 40 zones <= 1e-9|a|; infinity ratio in [500,2000] on %d zones; "
                "edge slope 0.5 +- 0.05 on 10 zones%s%s",
                ratio_zones, ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0 && ratio_zones >= 8;
}

// ---------------------------------------------------------------------------
// criteria 8 and 9: certificate soundness, oracle-counted cycles, closure

std::optional<double> oracle_displacement(const PwlSystem& sys, double y0) {
  try {
    const double yl = first_return(sys.left, y0, Side::Left).exit_y;
    const double yr =
        first_return(reflected_right(sys), y0 - sys.b, Side::Left).exit_y + sys.b;
    return yl - yr;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<double> circuit_closure(const PwlSystem& sys, double y0) {
  try {
    const auto left = first_return(sys.left, y0, Side::Left);
    const auto right = first_return(sys.right, left.exit_y - sys.b, Side::Right);
    return std::fabs(right.exit_y + sys.b - y0);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct OrbitRecord {
  PwlSystem sys;
  double y0;
};

std::vector<OrbitRecord> g_orbits;

bool crit8(std::string& detail) {
  auto g = testsupport::make_rng(808);
  Check ck;
  long finite = 0, scans = 0;
  const auto draw_zone = [&]() -> LienardParams {
    const double tcoin = testsupport::uniform(g, 0.0, 1.0);
    const double T = tcoin < 0.25 ? 0.0 : testsupport::uniform(g, -1.5, 1.5);
    const double D = testsupport::uniform(g, 0.4, 2.0);
    const double a = std::copysign(testsupport::uniform(g, 0.3, 2.0),
                                   testsupport::uniform(g, -1.0, 1.0));
    return {T, D, a};
  };
  for (int i = 0; i < 200; ++i) {
    PwlSystem sys{draw_zone(), draw_zone(),
                  testsupport::uniform(g, 0.0, 1.0) < 0.4
                      ? 0.0
                      : testsupport::uniform(g, -1.5, 1.5)};
    const auto certs = corollary_certificates(sys);
    const auto rep = find_crossing_orbits(sys);
    ck.expect(!rep.budget_exhausted, "budget exhausted at " + zstr(sys.left));

    for (const auto& c : certs) {
      switch (c.kind) {
        case CertificateKind::ZeroTracesNone:
        case CertificateKind::AlignedTracesNone:
          ck.expect(rep.classification == OrbitClassification::None && rep.orbits.empty(),
                    "nonexistence certificate contradicted at " + zstr(sys.left) + "/" +
                        zstr(sys.right));
          break;
        case CertificateKind::ZeroTracesContinuum:
          ck.expect(rep.classification == OrbitClassification::Continuum,
                    "continuum certificate contradicted at " + zstr(sys.left));
          break;
        case CertificateKind::AtMostTwoLimitCycles:
          ck.expect(rep.orbits.size() <= 2,
                    "two-cycle bound violated at " + zstr(sys.left));
          break;
        case CertificateKind::NoLimitCycles:
          ck.expect(rep.orbits.empty(),
                    "no-isolated-orbit certificate contradicted at " + zstr(sys.left));
          break;
      }
    }

    if (rep.classification == OrbitClassification::Finite) {
      ++finite;
      ck.expect(!rep.orbits.empty(), "finite classification with no orbits");
      const auto seg = sliding_segment(sys);
      for (const auto& orb : rep.orbits) {
        ck.expect(orb.y0 >= seg.hi, "orbit inside the sliding closure");
        g_orbits.push_back({sys, orb.y0});
      }
    }
    if (rep.classification == OrbitClassification::Continuum) {
      // ground truth: the trajectory displacement vanishes along the section
      int tested = 0;
      for (double y0 : {0.4, 1.1, 2.7}) {
        const auto d = oracle_displacement(sys, sys.b + y0);
        if (!d) continue;
        ++tested;
        ck.expect(std::fabs(*d) <= 1e-7, "continuum has nonzero oracle displacement");
      }
      ck.expect(tested > 0, "continuum could not be probed");
    }

    // independent count: sign changes of the trajectory displacement
    if (sys.left.T * sys.right.T > 0.0) {
      ck.expect(rep.orbits.size() <= 2, "aligned traces with more than two orbits");
      const auto dl = domain_interval(sys.left);
      const auto dr = domain_interval(reflected_right(sys));
      if (dl.exists && dr.exists) {
        double lo = std::max(dl.lower.value, sys.b + dr.lower.value);
        lo += 1e-4 * (1.0 + std::fabs(lo));
        double hi = lo + 12.0 * std::max({1.0, std::fabs(sys.b), std::fabs(lo)});
        for (const auto& orb : rep.orbits) hi = std::max(hi, 1.6 * orb.y0);
        if (dl.upper.kind != EndpointKind::Unbounded)
          hi = std::min(hi, dl.upper.value - 1e-6 * (1.0 + std::fabs(dl.upper.value)));
        if (dr.upper.kind != EndpointKind::Unbounded)
          hi = std::min(hi, sys.b + dr.upper.value -
                                1e-6 * (1.0 + std::fabs(dr.upper.value)));
        // near-degenerate roots (multiplier ~ 1 or a close pair) cannot be
        // resolved by a coarse sign scan, so only clean configurations are
        // cross-counted
        bool resolvable = hi > lo;
        for (const auto& orb : rep.orbits)
          if (std::fabs(orb.multiplier - 1.0) < 1e-3) resolvable = false;
        if (rep.orbits.size() == 2 &&
            std::fabs(rep.orbits[0].y0 - rep.orbits[1].y0) < 4.0 * (hi - lo) / 500.0)
          resolvable = false;
        if (resolvable) {
          ++scans;
          const int n = 500;
          int count = 0;
          double prev = 0.0;
          bool have_prev = false;
          for (int k = 0; k <= n; ++k) {
            const double y = lo + (hi - lo) * static_cast<double>(k) / n;
            const auto d = oracle_displacement(sys, y);
            if (!d) {
              have_prev = false;
              continue;
            }
            if (have_prev && prev * *d < 0.0) ++count;
            prev = *d;
            have_prev = true;
          }
          long reported = 0;
          for (const auto& orb : rep.orbits)
            if (!orb.tangential && orb.y0 > lo && orb.y0 < hi) ++reported;
          ck.expect(count == reported,
                    "scan count " + std::to_string(count) + " vs reported " +
                        std::to_string(reported) + " at " + zstr(sys.left) + "/" +
                        zstr(sys.right) + " b=" + std::to_string(sys.b));
        }
      }
    }
  }
  char b[320];
  std::snprintf(b, sizeof(b),
                "200 seeded systems, %ld checks; %ld finite reports, %ld aligned-trace "
                "oracle scans%s%s",
                ck.total, finite, scans, ck.bad ? "; first violation: " : "",
                ck.first.c_str());
  detail = b;
  return ck.bad == 0 && scans >= 10 && finite >= 5;
}

bool crit9(std::string& detail) {
  Check ck;
  // the pinned two-focus cycle plus everything criterion 8 reported
  const PwlSystem pinned{{0.4, 1, 1}, {-0.2, 1, 1}, 0.0};
  const auto rep = find_crossing_orbits(pinned);
  for (const auto& orb : rep.orbits) g_orbits.push_back({pinned, orb.y0});
  ck.expect(rep.orbits.size() == 1, "pinned system must carry one cycle");

  for (const auto& rec : g_orbits) {
    const auto gap = circuit_closure(rec.sys, rec.y0);
    ck.expect(gap.has_value() && *gap <= 1e-7,
              "orbit failed to close at " + zstr(rec.sys.left) + "/" +
                  zstr(rec.sys.right) + " y0=" + std::to_string(rec.y0));
  }
  char b[256];
  std::snprintf(b, sizeof(b), "%zu reported orbits re-flown, closure tol 1e-7 in y%s%s",
                g_orbits.size(), ck.bad ? "; first violation: " : "", ck.first.c_str());
  detail = b;
  return ck.bad == 0 && !g_orbits.empty();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::string&);
  };
  const Criterion table[] = {
      {"printed-series conformance", crit1},
      {"trajectory-oracle equivalence", crit2},
      {"exact closed forms (a=0, T=0)", crit3},
      {"sign laws", crit4},
      {"derivatives vs finite differences", crit5},
      {"involution", crit6},
      {"truncation residual scaling", crit7},
      {"certificate soundness and cycle counts", crit8},
      {"orbit closure under the flow", crit9},
  };
  int failures = 0;
  int id = 0;
  for (const auto& c : table) {
    ++id;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("unhandled exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d. %s — %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, c.name,
                detail.c_str(), secs);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %d acceptance criteria passed\n", id);
  else
    std::printf("%d of %d acceptance criteria FAILED\n", failures, id);
  return failures == 0 ? 0 : 1;
}
