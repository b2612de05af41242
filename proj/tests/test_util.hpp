#pragma once

#include "doctest.h"

// Strict relative comparison: |lhs - rhs| < eps * max(|lhs|, |rhs|).
// doctest's Approx defaults scale to 1.0, which silently turns checks on
// small-magnitude values into absolute ones; zeroing the scale keeps every
// tolerance in this suite genuinely relative. Exact zeros must be compared
// with plain equality instead.
inline doctest::Approx rel(double value, double eps) {
  return doctest::Approx(value).epsilon(eps).scale(0.0);
}
