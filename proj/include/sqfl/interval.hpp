#pragma once

#include <cmath>
#include <limits>

namespace sqfl {

// Closed interval [lo, hi] with outward rounding: every operation computes the
// round-to-nearest result and then steps one ulp outward, which contains the
// exact result for +, -, *, /. Transcendentals step `ulps` outward to absorb
// libm error.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static double down(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
    return v;
  }
  static double up(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return v;
  }

  static Interval exact(double v) { return {v, v}; }
  // Decimal literal rounded once at compile time.
  static Interval around(double v) { return {down(v), up(v)}; }

  static Interval quotient(double a, double b) {
    double q = a / b;
    return {down(q), up(q)};
  }

  static Interval log(double v) {
    double l = std::log(v);
    return {down(l, 4), up(l, 4)};
  }

  bool contains(double v) const { return lo <= v && v <= hi; }
};

inline Interval operator+(Interval a, Interval b) {
  return {Interval::down(a.lo + b.lo), Interval::up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) {
  return {Interval::down(a.lo - b.hi), Interval::up(a.hi - b.lo)};
}

inline Interval operator*(Interval a, Interval b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  double lo = c[0], hi = c[0];
  for (double v : c) {
    lo = std::fmin(lo, v);
    hi = std::fmax(hi, v);
  }
  return {Interval::down(lo), Interval::up(hi)};
}

// Divisor must not contain zero.
inline Interval operator/(Interval a, Interval b) {
  double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  double lo = c[0], hi = c[0];
  for (double v : c) {
    lo = std::fmin(lo, v);
    hi = std::fmax(hi, v);
  }
  return {Interval::down(lo), Interval::up(hi)};
}

} // namespace sqfl
