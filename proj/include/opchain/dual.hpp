// Forward-mode second-order dual numbers over Real.
//
// A Dual2 carries (value, d1, d2) where d1/d2 are first and second
// derivatives with respect to one seed variable.  Product and chain rules
// are exact, so evaluating a closed-form expression on seeded inputs gives
// its derivatives with no differencing.
#pragma once

#include "opchain/real.hpp"

namespace opchain {

struct Dual2 {
  Real v, d1, d2;

  Dual2() : v(0L), d1(0L), d2(0L) {}
  Dual2(const Real& value) : v(value), d1(0L), d2(0L) {}
  Dual2(long value) : v(value), d1(0L), d2(0L) {}
  Dual2(const Real& value, const Real& first, const Real& second)
      : v(value), d1(first), d2(second) {}

  static Dual2 variable(const Real& x) { return Dual2(x, Real(1L), Real(0L)); }
  static Dual2 constant(const Real& x) { return Dual2(x); }

  friend Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2}; }

  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
  }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
  }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2 * (a.d1 * b.d1) + a.v * b.d2};
  }
  friend Dual2 operator/(const Dual2& a, const Dual2& b) {
    Real q = a.v / b.v;
    Real q1 = (a.d1 - q * b.d1) / b.v;
    Real q2 = (a.d2 - 2 * (q1 * b.d1) - q * b.d2) / b.v;
    return {q, q1, q2};
  }

  friend Dual2 operator+(const Dual2& a, const Real& b) { return {a.v + b, a.d1, a.d2}; }
  friend Dual2 operator+(const Real& a, const Dual2& b) { return b + a; }
  friend Dual2 operator-(const Dual2& a, const Real& b) { return {a.v - b, a.d1, a.d2}; }
  friend Dual2 operator-(const Real& a, const Dual2& b) { return {a - b.v, -b.d1, -b.d2}; }
  friend Dual2 operator*(const Dual2& a, const Real& b) { return {a.v * b, a.d1 * b, a.d2 * b}; }
  friend Dual2 operator*(const Real& a, const Dual2& b) { return b * a; }
  friend Dual2 operator/(const Dual2& a, const Real& b) { return {a.v / b, a.d1 / b, a.d2 / b}; }
  friend Dual2 operator/(const Real& a, const Dual2& b) { return Dual2(a) / b; }
  friend Dual2 operator+(const Dual2& a, long b) { return {a.v + b, a.d1, a.d2}; }
  friend Dual2 operator+(long a, const Dual2& b) { return b + a; }
  friend Dual2 operator-(const Dual2& a, long b) { return {a.v - b, a.d1, a.d2}; }
  friend Dual2 operator*(const Dual2& a, long b) { return {a.v * b, a.d1 * b, a.d2 * b}; }
  friend Dual2 operator*(long a, const Dual2& b) { return b * a; }
  friend Dual2 operator/(const Dual2& a, long b) { return {a.v / b, a.d1 / b, a.d2 / b}; }
  friend Dual2 operator-(long a, const Dual2& b) { return {a - b.v, -b.d1, -b.d2}; }

  // chain rule for f with derivatives (f, fp, fpp) at a.v
  static Dual2 lift(const Dual2& a, const Real& f, const Real& fp, const Real& fpp) {
    return {f, fp * a.d1, fpp * a.d1 * a.d1 + fp * a.d2};
  }

  friend Dual2 sqrt(const Dual2& a) {
    Real s = sqrt(a.v);
    Real fp = Real(1L) / (2 * s);
    Real fpp = -fp / (2 * a.v);
    return lift(a, s, fp, fpp);
  }
  friend Dual2 exp(const Dual2& a) {
    Real e = exp(a.v);
    return lift(a, e, e, e);
  }
  friend Dual2 log(const Dual2& a) {
    Real inv = Real(1L) / a.v;
    return lift(a, log(a.v), inv, -inv * inv);
  }
  friend Dual2 pow(const Dual2& a, const Real& p) {
    Real f = pow(a.v, p);
    Real fp = p * pow(a.v, p - 1);
    Real fpp = p * (p - 1) * pow(a.v, p - 2);
    return lift(a, f, fp, fpp);
  }
  friend Dual2 pow(const Dual2& a, long p) {
    Real f = pow(a.v, p);
    Real fp = Real(p) * pow(a.v, p - 1);
    Real fpp = Real(p) * Real(p - 1) * pow(a.v, p - 2);
    return lift(a, f, fp, fpp);
  }
  friend Dual2 cosh(const Dual2& a) { return lift(a, cosh(a.v), sinh(a.v), cosh(a.v)); }
  friend Dual2 sinh(const Dual2& a) { return lift(a, sinh(a.v), cosh(a.v), sinh(a.v)); }
};

}  // namespace opchain
