#pragma once

#include <cmath>

namespace bd {

// Double-double value (~31 significant digits). Only the operations the
// Airy series accumulation needs; hi holds the leading double, lo the tail.
struct dd {
  double hi = 0.0, lo = 0.0;

  dd() = default;
  dd(double h) : hi(h), lo(0.0) {}
  dd(double h, double l) : hi(h), lo(l) {}

  static dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
  }
  static dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }
  static dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
  }
  friend dd operator-(dd a, dd b) { return a + dd{-b.hi, -b.lo}; }
  friend dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
  }
  friend dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd{q1};
    double q2 = r.hi / b.hi;
    r = r - b * dd{q2};
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd{q3};
  }
  dd operator-() const { return {-hi, -lo}; }

  double to_double() const { return hi + lo; }
};

inline dd dd_mul_pow_int(dd base, int k) {  // base^k, k >= 0
  dd r{1.0};
  dd b = base;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

}  // namespace bd
