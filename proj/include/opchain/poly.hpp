// Dense polynomials and rational functions over Real, stored fully expanded
// with exact high-precision coefficients (no symbolic simplification).
#pragma once

#include <stdexcept>
#include <vector>

#include "opchain/dual.hpp"
#include "opchain/real.hpp"

namespace opchain::linode {

class Poly {
 public:
  std::vector<Real> c;  // low -> high degree

  Poly() : c{Real(0L)} {}
  explicit Poly(std::vector<Real> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) c.push_back(Real(0L));
  }
  static Poly constant(const Real& v) { return Poly({v}); }
  static Poly x() { return Poly({Real(0L), Real(1L)}); }
  // c0 + c1 x + ... given as initializer
  static Poly of(std::initializer_list<Real> coeffs) {
    return Poly(std::vector<Real>(coeffs));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  Real eval(const Real& x) const {
    Real p(0L);
    for (int j = degree(); j >= 0; --j) p = p * x + c[j];
    return p;
  }
  Dual2 eval(const Dual2& x) const {
    Dual2 p;
    for (int j = degree(); j >= 0; --j) p = p * x + Dual2(c[j]);
    return p;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Real> d(c.size() - 1, Real(0L));
    for (size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<long>(j);
    return Poly(std::move(d));
  }

  Real maxAbsCoeff() const {
    Real m(0L);
    for (const auto& v : c) m = max(m, abs(v));
    return m;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Real> r(std::max(a.c.size(), b.c.size()), Real(0L));
    for (size_t j = 0; j < a.c.size(); ++j) r[j] += a.c[j];
    for (size_t j = 0; j < b.c.size(); ++j) r[j] += b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Real> r(std::max(a.c.size(), b.c.size()), Real(0L));
    for (size_t j = 0; j < a.c.size(); ++j) r[j] += a.c[j];
    for (size_t j = 0; j < b.c.size(); ++j) r[j] -= b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Real> r = a.c;
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<Real> r(a.c.size() + b.c.size() - 1, Real(0L));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Real& s) {
    std::vector<Real> r = a.c;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Real& s, const Poly& a) { return a * s; }
};

class PoleProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rational function num/den; evaluation rejects x near a zero of den.
class Rat {
 public:
  Poly num, den;

  Rat() : num(), den(Poly::constant(Real(1L))) {}
  Rat(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}
  static Rat fromPoly(Poly p) { return Rat(std::move(p), Poly::constant(Real(1L))); }

  template <typename T>
  T evalUnchecked(const T& x) const {
    return num.eval(x) / den.eval(x);
  }

  Real eval(const Real& x) const {
    guard(x);
    return num.eval(x) / den.eval(x);
  }
  Dual2 eval(const Dual2& x) const {
    guard(x.v);
    return num.eval(x) / den.eval(x);
  }

  void guard(const Real& x) const {
    Real dv = abs(den.eval(x));
    Real scale = den.maxAbsCoeff() * pow(max(Real(1L), abs(x)), den.degree());
    Real thresh = Real::pow10(-(workingDigits() / 4)) * scale;
    if (dv <= thresh)
      throw PoleProximityError("rational evaluation too close to a pole at x = " + x.str(20));
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a) { return Rat(-a.num, a.den); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den, a.den * b.num);
  }
  friend Rat operator*(const Rat& a, const Real& s) { return Rat(a.num * s, a.den); }
  friend Rat operator*(const Real& s, const Rat& a) { return a * s; }
};

}  // namespace opchain::linode
