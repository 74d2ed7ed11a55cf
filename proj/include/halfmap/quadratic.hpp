#pragma once

#include <vector>

#include "halfmap/params.hpp"

namespace halfmap {

struct WRoot {
  double value;
  int multiplicity;  // 1 or 2
};

// W(y) = c2 y^2 + c1 y + c0 with real roots sorted ascending (a double root
// is stored once with multiplicity 2).
struct QuadraticW {
  double c2, c1, c0;
  std::vector<WRoot> roots;
};

QuadraticW make_w(const LienardParams& p);

// Smallest root > 0, +inf if none.
double nearest_positive_root(const QuadraticW& w);
// Largest root < 0, -inf if none.
double nearest_negative_root(const QuadraticW& w);

// True iff some root of W lands in [lo, hi].
bool w_root_in(const QuadraticW& w, double lo, double hi);

}  // namespace halfmap
