// Command-line front end: parse a JSON system spec, run the requested
// computation, emit deterministic CSV/JSON.
//
// Exit codes: 0 success, 2 invalid spec or argument, 3 nonexistent half-map,
// 4 search budget exceeded.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfmap/domain.hpp"
#include "halfmap/flow_oracle.hpp"
#include "halfmap/half_map.hpp"
#include "halfmap/params.hpp"
#include "halfmap/pwl.hpp"
#include "halfmap/rational.hpp"
#include "halfmap/series.hpp"

using nlohmann::json;

namespace {

constexpr int kExitInvalidSpec = 2;
constexpr int kExitNonexistent = 3;
constexpr int kExitBudget = 4;

// Shortest round-trip decimal form (same renderer the JSON dump uses).
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// spec input

struct NumberIn {
  double value = 0.0;
  bool exact = false;  // integer literal or "p/q" / decimal string
  halfmap::Rational rat;
};

NumberIn read_number(const json& j, const std::string& what) {
  NumberIn n;
  if (j.is_string()) {
    n.rat = halfmap::parse_rational(j.get<std::string>());
    n.exact = true;
    n.value = n.rat.convert_to<double>();
  } else if (j.is_number_integer()) {
    n.rat = halfmap::Rational(j.get<std::int64_t>());
    n.exact = true;
    n.value = n.rat.convert_to<double>();
  } else if (j.is_number()) {
    n.value = j.get<double>();
  } else {
    throw halfmap::InvalidParams(what + ": expected a number or a \"p/q\" string");
  }
  return n;
}

struct ZoneIn {
  halfmap::LienardParams p;
  bool exact = false;
  halfmap::Rational T, D, a;
};

ZoneIn read_zone(const json& j, const std::string& what) {
  if (!j.is_object()) throw halfmap::InvalidParams(what + ": expected an object {T, D, a}");
  for (const char* key : {"T", "D", "a"})
    if (!j.contains(key))
      throw halfmap::InvalidParams(what + ": missing field \"" + key + "\"");
  const NumberIn t = read_number(j.at("T"), what + ".T");
  const NumberIn d = read_number(j.at("D"), what + ".D");
  const NumberIn a = read_number(j.at("a"), what + ".a");
  ZoneIn z;
  z.p = {t.value, d.value, a.value};
  z.exact = t.exact && d.exact && a.exact;
  z.T = t.rat;
  z.D = d.rat;
  z.a = a.rat;
  halfmap::validate(z.p);
  return z;
}

// Raw 2x2 system x' = A x + b reduced to Lienard form (T, D, a) =
// (tr A, det A, a12*b2 - a22*b1); needs a12 != 0 so the section sees the
// second state.
ZoneIn reduce_system(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("b"))
    throw halfmap::InvalidParams("system: expected an object {A: 2x2, b: [b1, b2]}");
  const json& A = j.at("A");
  const json& b = j.at("b");
  if (!A.is_array() || A.size() != 2 || !A[0].is_array() || A[0].size() != 2 ||
      !A[1].is_array() || A[1].size() != 2)
    throw halfmap::InvalidParams("system.A: expected a 2x2 array");
  if (!b.is_array() || b.size() != 2)
    throw halfmap::InvalidParams("system.b: expected a 2-vector");
  const NumberIn a11 = read_number(A[0][0], "A[0][0]");
  const NumberIn a12 = read_number(A[0][1], "A[0][1]");
  const NumberIn a21 = read_number(A[1][0], "A[1][0]");
  const NumberIn a22 = read_number(A[1][1], "A[1][1]");
  const NumberIn b1 = read_number(b[0], "b[0]");
  const NumberIn b2 = read_number(b[1], "b[1]");
  if (a12.value == 0.0)
    throw halfmap::InvalidParams("reduction requires a12 != 0 (the section must see y)");
  ZoneIn z;
  z.p.T = a11.value + a22.value;
  z.p.D = a11.value * a22.value - a12.value * a21.value;
  z.p.a = a12.value * b2.value - a22.value * b1.value;
  z.exact = a11.exact && a12.exact && a21.exact && a22.exact && b1.exact && b2.exact;
  if (z.exact) {
    z.T = a11.rat + a22.rat;
    z.D = a11.rat * a22.rat - a12.rat * a21.rat;
    z.a = a12.rat * b2.rat - a22.rat * b1.rat;
  }
  halfmap::validate(z.p);
  return z;
}

json load_spec(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw halfmap::InvalidParams("cannot open spec file: " + path);
  return json::parse(in);
}

ZoneIn zone_from_spec(const json& spec) {
  if (spec.contains("zone")) return read_zone(spec.at("zone"), "zone");
  if (spec.contains("system")) return reduce_system(spec.at("system"));
  throw halfmap::InvalidParams("spec needs a \"zone\" or \"system\" entry");
}

halfmap::PwlSystem pwl_from_spec(const json& spec) {
  if (!spec.contains("pwl"))
    throw halfmap::InvalidParams("spec needs a \"pwl\" entry {left, right, b}");
  const json& j = spec.at("pwl");
  for (const char* key : {"left", "right", "b"})
    if (!j.contains(key))
      throw halfmap::InvalidParams(std::string("pwl: missing field \"") + key + "\"");
  halfmap::PwlSystem sys;
  sys.left = read_zone(j.at("left"), "pwl.left").p;
  sys.right = read_zone(j.at("right"), "pwl.right").p;
  sys.b = read_number(j.at("b"), "pwl.b").value;
  return sys;
}

// ---------------------------------------------------------------------------
// output plumbing

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw halfmap::InvalidParams("cannot open output file: " + out_path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::vector<double> range_points(const std::string& range) {
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw halfmap::InvalidParams("--range expects LO:HI:STEPS");
  double lo = 0.0, hi = 0.0;
  long steps = 0;
  try {
    lo = std::stod(range.substr(0, c1));
    hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    steps = std::stol(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw halfmap::InvalidParams("--range expects LO:HI:STEPS with numeric fields");
  }
  if (steps < 1 || steps > 100000000)
    throw halfmap::InvalidParams("--range: STEPS must be in [1, 1e8]");
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i)
    pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps));
  return pts;
}

// ---------------------------------------------------------------------------
// eval

struct EvalRow {
  double y0 = 0.0;
  std::optional<double> P, d1, d2;
  std::optional<int> sign;
  std::optional<double> oracle, gap;
  std::string status = "ok";
};

EvalRow eval_point(const halfmap::LienardParams& p, double y0, bool with_oracle,
                   const halfmap::SolverOptions& opt) {
  EvalRow row;
  row.y0 = y0;
  try {
    row.P = halfmap::half_map(p, y0, opt);
  } catch (const halfmap::OutOfDomain&) {
    row.status = "out-of-domain";
    return row;
  }
  try {
    row.d1 = halfmap::derivative1(p, y0, opt);
    row.d2 = halfmap::derivative2(p, y0, opt);
    row.sign = halfmap::bisector_position(p, y0, opt);
  } catch (const halfmap::TangencyPoint&) {
    row.status = "tangency";
  }
  if (with_oracle) {
    try {
      row.oracle = halfmap::oracle_half_map(p, y0);
      row.gap = std::fabs(*row.P - *row.oracle);
    } catch (const halfmap::Error&) {
      // leave the cross-check cells empty (e.g. grazing start at y0 = 0)
    }
  }
  return row;
}

std::string eval_csv(const std::vector<EvalRow>& rows, bool with_oracle) {
  std::string out = "y0,P,P1,P2,sign";
  if (with_oracle) out += ",oracle,gap";
  out += ",status\n";
  for (const auto& r : rows) {
    out += fmt(r.y0);
    out += ',';
    if (r.P) out += fmt(*r.P);
    out += ',';
    if (r.d1) out += fmt(*r.d1);
    out += ',';
    if (r.d2) out += fmt(*r.d2);
    out += ',';
    if (r.sign) out += std::to_string(*r.sign);
    if (with_oracle) {
      out += ',';
      if (r.oracle) out += fmt(*r.oracle);
      out += ',';
      if (r.gap) out += fmt(*r.gap);
    }
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

json eval_json(const std::vector<EvalRow>& rows, bool with_oracle) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o;
    o["y0"] = r.y0;
    o["P"] = r.P ? json(*r.P) : json(nullptr);
    o["P1"] = r.d1 ? json(*r.d1) : json(nullptr);
    o["P2"] = r.d2 ? json(*r.d2) : json(nullptr);
    o["sign"] = r.sign ? json(*r.sign) : json(nullptr);
    if (with_oracle) {
      o["oracle"] = r.oracle ? json(*r.oracle) : json(nullptr);
      o["gap"] = r.gap ? json(*r.gap) : json(nullptr);
    }
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// series

json series_json(const halfmap::PowerSeries& s, const std::vector<std::string>& exact) {
  const char* name = "origin";
  switch (s.anchor) {
    case halfmap::SeriesAnchor::Origin: name = "origin"; break;
    case halfmap::SeriesAnchor::OriginShifted: name = "shifted"; break;
    case halfmap::SeriesAnchor::Puiseux: name = "puiseux"; break;
    case halfmap::SeriesAnchor::Infinity: name = "infinity"; break;
  }
  json terms = json::array();
  for (int i = 0; i < s.terms(); ++i) {
    json t;
    t["exponent"] = s.exponent(i);
    t["coefficient"] = s.coefficients[static_cast<size_t>(i)];
    if (!exact.empty()) t["exact"] = exact[static_cast<size_t>(i)];
    terms.push_back(std::move(t));
  }
  json o;
  o["anchor"] = name;
  o["expansion_point"] = s.expansion_point;
  o["terms"] = std::move(terms);
  return o;
}

// ---------------------------------------------------------------------------
// orbits

const char* classification_name(halfmap::OrbitClassification c) {
  switch (c) {
    case halfmap::OrbitClassification::None: return "none";
    case halfmap::OrbitClassification::Continuum: return "continuum";
    case halfmap::OrbitClassification::Finite: return "finite";
  }
  return "none";
}

const char* stability_name(halfmap::Stability s) {
  switch (s) {
    case halfmap::Stability::Stable: return "stable";
    case halfmap::Stability::Unstable: return "unstable";
    case halfmap::Stability::Nonhyperbolic: return "nonhyperbolic";
  }
  return "nonhyperbolic";
}

const char* certificate_name(halfmap::CertificateKind k) {
  switch (k) {
    case halfmap::CertificateKind::ZeroTracesContinuum: return "zero-traces-continuum";
    case halfmap::CertificateKind::ZeroTracesNone: return "zero-traces-none";
    case halfmap::CertificateKind::AlignedTracesNone: return "aligned-traces-none";
    case halfmap::CertificateKind::AtMostTwoLimitCycles: return "at-most-two-limit-cycles";
    case halfmap::CertificateKind::NoLimitCycles: return "no-limit-cycles";
  }
  return "";
}

// One full circuit under the trajectory oracle: left pass from y0, then the
// right zone forward from the lower point (shifted coordinates, right side).
std::optional<double> oracle_closure(const halfmap::PwlSystem& sys, double y0) {
  try {
    const auto left = halfmap::first_return(sys.left, y0, halfmap::Side::Left);
    const auto right =
        halfmap::first_return(sys.right, left.exit_y - sys.b, halfmap::Side::Right);
    return std::fabs(right.exit_y + sys.b - y0);
  } catch (const halfmap::Error&) {
    return std::nullopt;
  }
}

std::string displacement_csv(const halfmap::PwlSystem& sys, int n,
                             const halfmap::SolverOptions& opt) {
  // plot-ready displacement samples over (a window of) the common domain
  const auto dl = halfmap::domain_interval(sys.left, opt);
  const auto dr = halfmap::domain_interval(halfmap::reflected_right(sys), opt);
  std::string out = "y0,displacement\n";
  if (!dl.exists || !dr.exists) return out;
  double lo = dl.lower.value;
  if (dr.lower.kind != halfmap::EndpointKind::Unbounded)
    lo = std::max(lo, sys.b + dr.lower.value);
  double hi = lo + 10.0 * std::max({1.0, std::fabs(sys.b), std::fabs(lo)});
  if (dl.upper.kind != halfmap::EndpointKind::Unbounded) hi = std::min(hi, dl.upper.value);
  if (dr.upper.kind != halfmap::EndpointKind::Unbounded)
    hi = std::min(hi, sys.b + dr.upper.value);
  if (!(hi > lo)) return out;
  for (int i = 0; i <= n; ++i) {
    const double y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    out += fmt(y);
    out += ',';
    try {
      out += fmt(halfmap::displacement(sys, y, opt));
    } catch (const halfmap::Error&) {
      // out-of-domain endpoint: leave the cell empty
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// commands

struct CommonArgs {
  std::string spec_path;
  std::string out_path;
  std::string format = "json";
  double tol = 1e-12;
  bool oracle = false;
};

int cmd_eval(const CommonArgs& args, const std::vector<double>& y0_flags,
             const std::string& range) {
  const json spec = load_spec(args.spec_path);
  const ZoneIn zone = zone_from_spec(spec);
  halfmap::SolverOptions opt = halfmap::default_solver_options();
  opt.tol = args.tol;

  const auto dom = halfmap::domain_interval(zone.p, opt);
  if (!dom.exists)
    throw halfmap::NonexistentHalfMap(
        "no left half-map for a <= 0: requires 4*D - T^2 > 0");

  std::vector<double> points = y0_flags;
  if (!range.empty()) {
    const auto more = range_points(range);
    points.insert(points.end(), more.begin(), more.end());
  }
  if (points.empty())
    throw halfmap::InvalidParams("eval: provide --y0 values or --range LO:HI:STEPS");

  std::vector<EvalRow> rows;
  rows.reserve(points.size());
  for (double y0 : points) rows.push_back(eval_point(zone.p, y0, args.oracle, opt));

  if (args.format == "csv")
    emit(args.out_path, eval_csv(rows, args.oracle));
  else
    emit(args.out_path, eval_json(rows, args.oracle).dump(2) + "\n");
  return 0;
}

int cmd_series(const CommonArgs& args, const std::string& anchor, int order,
               const std::string& at) {
  const json spec = load_spec(args.spec_path);
  const ZoneIn zone = zone_from_spec(spec);
  halfmap::SolverOptions opt = halfmap::default_solver_options();
  opt.tol = args.tol;

  halfmap::PowerSeries s;
  std::vector<std::string> exact;
  if (anchor == "origin") {
    s = halfmap::taylor_origin(zone.p, order);
    if (zone.exact) {
      const auto c = halfmap::taylor_origin_exact(zone.T, zone.D, zone.a, order);
      for (int k = 1; k <= order; ++k)
        exact.push_back(halfmap::to_fraction_string(c[static_cast<size_t>(k)]));
    }
  } else if (anchor == "shifted") {
    if (!at.empty()) {
      const halfmap::Rational c0 = halfmap::parse_rational(at);
      const double c0d = c0.convert_to<double>();
      s = halfmap::taylor_origin_shifted_at(zone.p, c0d, order);
      if (zone.exact) {
        const auto c =
            halfmap::taylor_origin_shifted_exact(zone.T, zone.D, zone.a, c0, order);
        for (int k = 0; k <= order; ++k)
          exact.push_back(halfmap::to_fraction_string(c[static_cast<size_t>(k)]));
      }
    } else {
      s = halfmap::taylor_origin_shifted(zone.p, order, opt);
    }
  } else if (anchor == "puiseux") {
    s = halfmap::puiseux_at_hat_y0(zone.p, order, opt);
  } else if (anchor == "infinity") {
    s = halfmap::taylor_infinity(zone.p);
  } else {
    throw halfmap::InvalidParams(
        "--anchor must be one of origin | shifted | puiseux | infinity");
  }

  if (args.format == "csv") {
    std::string out = "exponent,coefficient";
    if (!exact.empty()) out += ",exact";
    out += '\n';
    for (int i = 0; i < s.terms(); ++i) {
      out += fmt(s.exponent(i));
      out += ',';
      out += fmt(s.coefficients[static_cast<size_t>(i)]);
      if (!exact.empty()) {
        out += ',';
        out += exact[static_cast<size_t>(i)];
      }
      out += '\n';
    }
    emit(args.out_path, out);
  } else {
    emit(args.out_path, series_json(s, exact).dump(2) + "\n");
  }
  return 0;
}

int cmd_orbits(const CommonArgs& args, int grid, const std::string& samples_out) {
  const json spec = load_spec(args.spec_path);
  const halfmap::PwlSystem sys = pwl_from_spec(spec);
  halfmap::SolverOptions opt = halfmap::default_solver_options();
  opt.tol = args.tol;
  halfmap::SearchConfig cfg;
  if (grid > 0) cfg.grid_points = grid;
  if (args.tol < cfg.root_tol) cfg.root_tol = args.tol;

  const auto report = halfmap::find_crossing_orbits(sys, cfg, opt);

  json orbits = json::array();
  for (const auto& orb : report.orbits) {
    json o;
    o["y0"] = orb.y0;
    o["y1"] = orb.y1;
    o["multiplier"] = orb.multiplier;
    o["stability"] = stability_name(orb.stability);
    o["tangential"] = orb.tangential;
    if (args.oracle) {
      const auto gap = oracle_closure(sys, orb.y0);
      o["oracle_closure"] = gap ? json(*gap) : json(nullptr);
    }
    orbits.push_back(std::move(o));
  }
  json certs = json::array();
  for (const auto& c : halfmap::corollary_certificates(sys)) {
    json o;
    o["kind"] = certificate_name(c.kind);
    o["statement"] = c.statement;
    certs.push_back(std::move(o));
  }
  const auto seg = halfmap::sliding_segment(sys);
  json out;
  out["classification"] = classification_name(report.classification);
  out["certificate"] = report.certificate;
  out["budget_exhausted"] = report.budget_exhausted;
  out["orbit_count"] = report.orbits.size();
  out["orbits"] = std::move(orbits);
  out["certificates"] = std::move(certs);
  out["sliding_segment"] = {{"lo", seg.lo}, {"hi", seg.hi}, {"degenerate", seg.degenerate}};

  if (!samples_out.empty())
    emit(samples_out, displacement_csv(sys, cfg.grid_points, opt));
  emit(args.out_path, out.dump(2) + "\n");
  return report.budget_exhausted ? kExitBudget : 0;
}

int cmd_sample(const CommonArgs& args, const std::string& range, double orbit_from,
               bool orbit_set, const std::string& orbit_out, int orbit_points) {
  const json spec = load_spec(args.spec_path);
  const ZoneIn zone = zone_from_spec(spec);
  halfmap::SolverOptions opt = halfmap::default_solver_options();
  opt.tol = args.tol;

  const auto dom = halfmap::domain_interval(zone.p, opt);
  if (!dom.exists)
    throw halfmap::NonexistentHalfMap(
        "no left half-map for a <= 0: requires 4*D - T^2 > 0");

  if (range.empty()) throw halfmap::InvalidParams("sample: requires --range LO:HI:STEPS");
  const auto points = range_points(range);

  if (args.format == "csv") {
    std::string out = "y0,P\n";
    for (double y0 : points) {
      out += fmt(y0);
      out += ',';
      try {
        out += fmt(halfmap::half_map(zone.p, y0, opt));
      } catch (const halfmap::OutOfDomain&) {
        // outside I: empty cell, the row stays (plot gap)
      }
      out += '\n';
    }
    emit(args.out_path, out);
  } else {
    json arr = json::array();
    for (double y0 : points) {
      json o;
      o["y0"] = y0;
      try {
        o["P"] = halfmap::half_map(zone.p, y0, opt);
      } catch (const halfmap::OutOfDomain&) {
        o["P"] = nullptr;
      }
      arr.push_back(std::move(o));
    }
    emit(args.out_path, arr.dump(2) + "\n");
  }

  if (orbit_set) {
    const auto ret = halfmap::first_return(zone.p, orbit_from, halfmap::Side::Left);
    const auto orbit = halfmap::sample_orbit(zone.p, Eigen::Vector2d(0.0, orbit_from),
                                             ret.flight_time, orbit_points);
    std::string out = "t,x,y\n";
    for (size_t i = 0; i < orbit.times.size(); ++i) {
      out += fmt(orbit.times[i]);
      out += ',';
      out += fmt(orbit.states[i].x());
      out += ',';
      out += fmt(orbit.states[i].y());
      out += '\n';
    }
    emit(orbit_out.empty() ? std::string("orbit.csv") : orbit_out, out);
  }
  return 0;
}

int cmd_reduce(const CommonArgs& args) {
  const json spec = load_spec(args.spec_path);
  if (!spec.contains("system"))
    throw halfmap::InvalidParams("reduce: spec needs a \"system\" entry {A, b}");
  const ZoneIn zone = reduce_system(spec.at("system"));
  if (args.format == "csv") {
    std::string out = "T,D,a\n";
    out += fmt(zone.p.T);
    out += ',';
    out += fmt(zone.p.D);
    out += ',';
    out += fmt(zone.p.a);
    out += '\n';
    emit(args.out_path, out);
  } else {
    json o;
    o["T"] = zone.p.T;
    o["D"] = zone.p.D;
    o["a"] = zone.p.a;
    if (zone.exact) {
      o["exact"] = {{"T", halfmap::to_fraction_string(zone.T)},
                    {"D", halfmap::to_fraction_string(zone.D)},
                    {"a", halfmap::to_fraction_string(zone.a)}};
    }
    emit(args.out_path, o.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Poincare half-maps of planar linear systems from their integral "
      "characterization"};
  app.require_subcommand(1);

  CommonArgs eval_args, series_args, orbits_args, sample_args, reduce_args;
  auto add_common = [](CLI::App* sub, CommonArgs& a, bool with_oracle) {
    sub->add_option("spec", a.spec_path,
                    "JSON spec file ('-' for stdin): {\"zone\":{T,D,a}} | "
                    "{\"system\":{A,b}} | {\"pwl\":{left,right,b}}; numbers may be "
                    "\"p/q\" strings")
        ->required();
    sub->add_option("--out", a.out_path, "write output to this file instead of stdout");
    sub->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", a.tol, "solver tolerance on the unknown");
    if (with_oracle)
      sub->add_flag("--oracle", a.oracle, "cross-check against the trajectory oracle");
  };

  auto* eval = app.add_subcommand("eval", "evaluate P, P', P'', sign(y0+P) at points");
  add_common(eval, eval_args, true);
  std::vector<double> y0_flags;
  std::string eval_range;
  eval->add_option("--y0", y0_flags, "evaluation points (repeatable)");
  eval->add_option("--range", eval_range, "LO:HI:STEPS uniform grid (STEPS intervals)");
  eval_args.format = "csv";

  auto* series = app.add_subcommand("series", "expansion coefficients at an anchor");
  add_common(series, series_args, false);
  std::string anchor, at;
  int order = 6;
  series->add_option("--anchor", anchor, "origin | shifted | puiseux | infinity")
      ->required();
  series->add_option("--order", order,
                     "highest exponent (Taylor anchors) or half-step term count "
                     "(puiseux); infinity is fixed at 4 terms");
  series->add_option("--at", at, "expansion constant term c0 < 0 (shifted anchor only)");

  auto* orbits = app.add_subcommand("orbits", "crossing periodic orbits of a pwl system");
  add_common(orbits, orbits_args, true);
  int grid = 0;
  std::string samples_out;
  orbits->add_option("--grid", grid, "displacement scan grid points");
  orbits->add_option("--samples-out", samples_out, "write displacement samples CSV here");

  auto* sample = app.add_subcommand("sample", "plot-ready (y0, P) samples over a range");
  add_common(sample, sample_args, false);
  std::string sample_range, orbit_out;
  double orbit_from = 0.0;
  int orbit_points = 256;
  sample->add_option("--range", sample_range, "LO:HI:STEPS uniform grid (STEPS intervals)");
  auto* orbit_opt =
      sample->add_option("--orbit-from", orbit_from, "also trace the left-zone orbit of this y0");
  sample->add_option("--orbit-out", orbit_out, "orbit trace CSV path (default orbit.csv)");
  sample->add_option("--orbit-points", orbit_points, "orbit trace sample count");
  sample_args.format = "csv";

  auto* reduce = app.add_subcommand("reduce", "reduce a raw 2x2 system to (T, D, a)");
  add_common(reduce, reduce_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidSpec;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_args, y0_flags, eval_range);
    if (series->parsed()) return cmd_series(series_args, anchor, order, at);
    if (orbits->parsed()) return cmd_orbits(orbits_args, grid, samples_out);
    if (sample->parsed())
      return cmd_sample(sample_args, sample_range, orbit_from, !orbit_opt->empty(),
                        orbit_out, orbit_points);
    if (reduce->parsed()) return cmd_reduce(reduce_args);
  } catch (const halfmap::NonexistentHalfMap& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNonexistent;
  } catch (const halfmap::SearchBudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const halfmap::NoConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const halfmap::NoReturn& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const halfmap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidSpec;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: spec is not valid JSON: %s\n", e.what());
    return kExitInvalidSpec;
  }
  return 0;
}
