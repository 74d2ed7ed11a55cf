#pragma once

// Undetermined-coefficients engine shared by every series anchor. All the
// expansions in this library solve a first-order relation of the shape
//
//   L(x) * Q(x)^e * Q'(x) = B(x) * (v0 + v1 Q + v2 Q^2 + v3 Q^3),
//
// where L, B are short fixed polynomials (different per anchor / variable
// substitution). With a partial coefficient vector the defect
//   E(x) = L Q^e Q' - B (v0 + v1 Q + v2 Q^2 + v3 Q^3)
// has its first nonvanishing coefficient affine in the next unknown, so each
// order is pinned by probing that coefficient at two candidate values.
// Instantiated with long double (numeric anchors) and an exact rational type.

#include <array>
#include <vector>

#include "halfmap/params.hpp"

namespace halfmap::detail {

template <class S>
std::vector<S> conv_trunc(const std::vector<S>& p, const std::vector<S>& q, int n) {
  std::vector<S> r(static_cast<size_t>(n) + 1, S(0));
  for (size_t i = 0; i < p.size() && i <= static_cast<size_t>(n); ++i) {
    if (p[i] == S(0)) continue;
    const size_t jmax = std::min(q.size(), static_cast<size_t>(n) + 1 - i);
    for (size_t j = 0; j < jmax; ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

template <class S>
struct JetRelation {
  std::vector<S> L;     // multiplies Q^e Q'
  std::vector<S> B;     // multiplies the polynomial in Q
  std::array<S, 4> v;   // v0..v3
  int e = 1;            // 0 or 1
};

// Defect coefficient at index m for the candidate coefficient vector c.
template <class S>
S defect_coeff(const JetRelation<S>& rel, const std::vector<S>& c, int m) {
  std::vector<S> dq(c.size() > 1 ? c.size() - 1 : 1, S(0));
  for (size_t i = 1; i < c.size(); ++i) dq[i - 1] = S(static_cast<long>(i)) * c[i];
  std::vector<S> lhs = conv_trunc(rel.L, dq, m);
  if (rel.e == 1) lhs = conv_trunc(lhs, c, m);
  // v0 + v1 Q + v2 Q^2 + v3 Q^3 by Horner: ((v3 Q + v2) Q + v1) Q + v0
  std::vector<S> poly{rel.v[3]};
  for (int i = 2; i >= 0; --i) {
    poly = conv_trunc(poly, c, m);
    if (poly.empty()) poly.assign(1, S(0));
    poly[0] += rel.v[static_cast<size_t>(i)];
  }
  std::vector<S> rhs = conv_trunc(rel.B, poly, m);
  S out = S(0);
  if (m < static_cast<int>(lhs.size())) out = lhs[static_cast<size_t>(m)];
  if (m < static_cast<int>(rhs.size())) out -= rhs[static_cast<size_t>(m)];
  return out;
}

// Extend the seeded coefficients up to index `last`, pinning coefficient k at
// defect index k + pin.
template <class S>
std::vector<S> solve_jet(const JetRelation<S>& rel, std::vector<S> c, int pin, int last) {
  while (static_cast<int>(c.size()) <= last) {
    const int k = static_cast<int>(c.size());
    const int m = k + pin;
    c.push_back(S(0));
    const S b0 = defect_coeff(rel, c, m);
    c.back() = S(1);
    const S b1 = defect_coeff(rel, c, m);
    const S slope = b1 - b0;
    if (slope == S(0)) throw NoConvergence("series recurrence lost its pivot");
    c.back() = -b0 / slope;
  }
  return c;
}

// Relation for the half-map itself: y1 W(y0) dy1 = y0 W(y1) dy0.
template <class S>
JetRelation<S> halfmap_relation(S T, S D, S a) {
  JetRelation<S> rel;
  rel.L = {a * a, -a * T, D};
  rel.B = {S(0), S(1)};
  rel.v = {a * a, -a * T, D, S(0)};
  rel.e = 1;
  return rel;
}

// Same relation after y0 = hat_y0 + z^2 (Puiseux side): the dy0 factor turns
// B into 2 z (hat_y0 + z^2) and L into W(hat_y0 + z^2).
template <class S>
JetRelation<S> puiseux_relation(S T, S D, S a, S y0hat) {
  JetRelation<S> rel;
  const S w0 = (D * y0hat - a * T) * y0hat + a * a;
  const S w1 = S(2) * D * y0hat - a * T;  // dW/dy at hat_y0
  rel.L = {w0, S(0), w1, S(0), D};        // W(hat_y0 + z^2)
  rel.B = {S(0), S(2) * y0hat, S(0), S(2)};
  rel.v = {a * a, -a * T, D, S(0)};
  rel.e = 1;
  return rel;
}

// Reciprocal-variable relation for the map at infinity:
// Y W~(Y) dY1 = Y1 W~(Y1) dY, W~(Y) = a^2 Y^2 - a T Y + D.
template <class S>
JetRelation<S> reciprocal_relation(S T, S D, S a) {
  JetRelation<S> rel;
  rel.L = {S(0), D, -a * T, a * a};
  rel.B = {S(1)};
  rel.v = {S(0), D, -a * T, a * a};
  rel.e = 0;
  return rel;
}

}  // namespace halfmap::detail
