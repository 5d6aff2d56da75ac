// Arbitrary-precision real arithmetic on top of MPFR.
//
// All operations round to the thread-local working precision, which is set
// with a PrecisionScope.  Given the same (digits, guard) pair every result is
// reproducible bit for bit.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace opchain {

struct PrecisionContext {
  int digits = 250;  // decimal digits of working precision (>= 50)
  int guard = 30;    // extra guard digits

  PrecisionContext() = default;
  PrecisionContext(int d, int g) : digits(d), guard(g) {
    if (d < 50) throw std::invalid_argument("PrecisionContext: digits must be >= 50");
    if (g < 0) throw std::invalid_argument("PrecisionContext: guard must be >= 0");
  }

  mpfr_prec_t bits() const {
    // 1 decimal digit = log2(10) bits, rounded up, plus a small slack.
    return static_cast<mpfr_prec_t>((digits + guard) * 3.3219280948873623 + 16);
  }

  // Precision policy for n-indexed computations: Hankel determinants lose
  // O(n) digits, so raise the working precision with n.
  static PrecisionContext forIndex(int n, int baseDigits = 250, int guard = 30) {
    int d = 12 * n + 100;
    if (d < baseDigits) d = baseDigits;
    return PrecisionContext(d, guard);
  }
};

namespace detail {
mpfr_prec_t& tlsPrec();
}

inline mpfr_prec_t workingPrec() { return detail::tlsPrec(); }
inline int workingDigits() {
  return static_cast<int>(static_cast<double>(workingPrec()) / 3.3219280948873623);
}

// RAII guard that sets the thread-local working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx) : saved_(detail::tlsPrec()) {
    detail::tlsPrec() = ctx.bits();
  }
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(detail::tlsPrec()) {
    detail::tlsPrec() = bits;
  }
  ~PrecisionScope() { detail::tlsPrec() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() { mpfr_init2(v_, workingPrec()); mpfr_set_zero(v_, 1); }
  Real(long x) { mpfr_init2(v_, workingPrec()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(unsigned long x) { mpfr_init2(v_, workingPrec()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  Real(double x) { mpfr_init2(v_, workingPrec()); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const std::string& dec) {
    mpfr_init2(v_, workingPrec());
    if (mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: cannot parse '" + dec + "'");
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  static Real ratio(long num, long den) {
    Real r;
    mpfr_set_si(r.v_, num, MPFR_RNDN);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }
  static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
  static Real eulerGamma() { Real r; mpfr_const_euler(r.v_, MPFR_RNDN); return r; }
  static Real ln2() { Real r; mpfr_const_log2(r.v_, MPFR_RNDN); return r; }
  static Real inf(int sign = 1) { Real r; mpfr_set_inf(r.v_, sign); return r; }
  // 10^e at working precision
  static Real pow10(long e) {
    Real r(10L); mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN); return r;
  }
  static Real epsilonFor(int digits) { return pow10(-digits); }

  bool isFinite() const { return mpfr_number_p(v_) != 0; }
  bool isNan() const { return mpfr_nan_p(v_) != 0; }
  bool isZero() const { return mpfr_zero_p(v_) != 0; }
  bool isInteger() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double toDouble() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long toLong() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Full-precision decimal string (round-trippable); digits10 == 0 means full.
  std::string str(size_t digits10 = 0) const;

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  friend Real operator-(const Real& a) {
    Real r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r;
  }

#define OPCHAIN_BINOP(op, fn)                                            \
  friend Real operator op(const Real& a, const Real& b) {                \
    Real r; mpfr_##fn(r.v_, a.v_, b.v_, MPFR_RNDN); return r;            \
  }                                                                      \
  friend Real operator op(const Real& a, long b) {                       \
    Real r; mpfr_##fn##_si(r.v_, a.v_, b, MPFR_RNDN); return r;          \
  }                                                                      \
  friend Real operator op(const Real& a, int b) { return a op static_cast<long>(b); }

  OPCHAIN_BINOP(+, add)
  OPCHAIN_BINOP(-, sub)
  OPCHAIN_BINOP(*, mul)
  OPCHAIN_BINOP(/, div)
#undef OPCHAIN_BINOP

  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator+(int a, const Real& b) { return b + static_cast<long>(a); }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
  friend Real operator-(long a, const Real& b) {
    Real r; mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
  friend Real operator/(long a, const Real& b) {
    Real r; mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

#define OPCHAIN_UNFN(name, fn)                              \
  friend Real name(const Real& a) {                         \
    Real r; mpfr_##fn(r.v_, a.v_, MPFR_RNDN); return r;     \
  }

  OPCHAIN_UNFN(abs, abs)
  OPCHAIN_UNFN(sqrt, sqrt)
  OPCHAIN_UNFN(exp, exp)
  OPCHAIN_UNFN(expm1, expm1)
  OPCHAIN_UNFN(log, log)
  OPCHAIN_UNFN(log1p, log1p)
  OPCHAIN_UNFN(sin, sin)
  OPCHAIN_UNFN(cos, cos)
  OPCHAIN_UNFN(atan, atan)
  OPCHAIN_UNFN(sinh, sinh)
  OPCHAIN_UNFN(cosh, cosh)
  OPCHAIN_UNFN(tanh, tanh)
  OPCHAIN_UNFN(tgamma, gamma)
  OPCHAIN_UNFN(erf, erf)
  OPCHAIN_UNFN(erfc, erfc)
#undef OPCHAIN_UNFN

  friend Real floorr(const Real& a) {
    Real r; mpfr_floor(r.v_, a.v_); return r;
  }
  friend Real roundr(const Real& a) {
    Real r; mpfr_round(r.v_, a.v_); return r;
  }

  friend Real lngamma(const Real& a) {
    Real r; int sgn; mpfr_lgamma(r.v_, &sgn, a.v_, MPFR_RNDN);
    if (sgn < 0) throw std::domain_error("lngamma: gamma(x) < 0");
    return r;
  }
  friend Real digamma(const Real& a) {
    Real r; mpfr_digamma(r.v_, a.v_, MPFR_RNDN); return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r; mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real pow(const Real& a, long b) {
    Real r; mpfr_pow_si(r.v_, a.v_, b, MPFR_RNDN); return r;
  }
  friend Real pow(const Real& a, int b) { return pow(a, static_cast<long>(b)); }
  friend Real hypot(const Real& a, const Real& b) {
    Real r; mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
  friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

 private:
  mpfr_t v_;
};

inline Real sqrt2() { return sqrt(Real(2L)); }

}  // namespace opchain
