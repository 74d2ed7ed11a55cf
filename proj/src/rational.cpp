#include "halfmap/rational.hpp"

#include <cctype>

#include "halfmap/detail/jet_engine.hpp"
#include "halfmap/params.hpp"

namespace halfmap {

namespace {

using Int = boost::multiprecision::cpp_int;

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Int parse_int(const std::string& s) {
  if (!all_digits(s)) throw InvalidParams("malformed rational: '" + s + "'");
  return Int(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) throw InvalidParams("empty rational literal");
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Int num = parse_int(s.substr(0, slash));
    const Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InvalidParams("rational with zero denominator: '" + text + "'");
    r = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string head = dot == 0 ? "0" : s.substr(0, dot);
    const std::string tail = s.substr(dot + 1);
    Int den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    r = Rational(parse_int(head) * den + (tail.empty() ? Int(0) : parse_int(tail)), den);
  } else {
    r = Rational(parse_int(s));
  }
  return negative ? Rational(-r) : r;
}

std::string to_fraction_string(const Rational& r) {
  const Int num = numerator(r);
  const Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::vector<Rational> taylor_origin_exact(const Rational& T, const Rational& D,
                                          const Rational& a, int order) {
  if (a == 0) throw PreconditionViolated("exact origin jet requires a != 0");
  if (order < 1) throw PreconditionViolated("exact origin jet needs order >= 1");
  const auto rel = detail::halfmap_relation<Rational>(T, D, a);
  return detail::solve_jet(rel, std::vector<Rational>{Rational(0), Rational(-1)}, 0, order);
}

std::vector<Rational> taylor_origin_shifted_exact(const Rational& T, const Rational& D,
                                                  const Rational& a, const Rational& c0,
                                                  int order) {
  if (a == 0 || c0 == 0)
    throw PreconditionViolated("exact shifted jet requires a != 0 and c0 != 0");
  if (order < 1) throw PreconditionViolated("exact shifted jet needs order >= 1");
  const auto rel = detail::halfmap_relation<Rational>(T, D, a);
  return detail::solve_jet(rel, std::vector<Rational>{c0}, -1, order);
}

}  // namespace halfmap
