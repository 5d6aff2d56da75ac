#include "opchain/special.hpp"

#include <cmath>
#include <stdexcept>

namespace opchain::mpcore {

namespace {

// I_nu(x) power series; requires loop termination by factorial decay.
Real besselISeries(const Real& nu, const Real& x) {
  Real q = x * x / 4;
  Real term = pow(x / 2, nu) / tgamma(nu + 1);
  Real sum = term;
  Real eps = Real::pow10(-workingDigits());
  for (long k = 1; k < 100000; ++k) {
    term *= q / (Real(k) * (nu + k));
    sum += term;
    if (abs(term) <= eps * abs(sum)) return sum;
  }
  throw std::runtime_error("besselISeries: no convergence");
}

// K_n(x), integer n >= 0, small-argument log series.
Real besselKIntSeries(long n, const Real& x) {
  Real q = x * x / 4;
  Real lx = log(x / 2);
  Real eps = Real::pow10(-workingDigits());
  Real sum(0L);
  if (n > 0) {
    // (1/2)(x/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
    Real fac = tgamma(Real(n));  // (n-1)!
    Real term = fac;
    Real acc = term;
    for (long k = 1; k < n; ++k) {
      term *= -q / Real(k);
      term /= Real(n - k);  // (n-k-1)!/(n-k-1+1)... reduce factorial stepwise
      acc += term;
    }
    sum = acc * pow(x / 2, -n) / 2;
  }
  // harmonic-number digamma values: psi(1) = -gamma, psi(m+1) = psi(m)+1/m
  Real gamma = Real::eulerGamma();
  Real psiA = -gamma;             // psi(k+1) at k=0
  Real psiB = -gamma;             // psi(n+k+1) at k=0
  for (long m = 1; m <= n; ++m) psiB += Real::ratio(1, m);
  Real kfac(1L), nkfac = tgamma(Real(n + 1));
  Real qpow(1L);
  Real acc2(0L);
  Real term(0L);
  for (long k = 0; k < 100000; ++k) {
    term = (psiA + psiB) / (kfac * nkfac) * qpow;
    acc2 += term;
    if (k > 2 && abs(term) <= eps * abs(acc2)) break;
    qpow *= q;
    kfac *= Real(k + 1);
    nkfac *= Real(n + k + 1);
    psiA += Real::ratio(1, k + 1);
    psiB += Real::ratio(1, n + k + 1);
  }
  Real sgn = (n % 2 == 0) ? Real(1L) : Real(-1L);
  sum += -sgn * lx * besselISeries(Real(n), x);
  sum += sgn * pow(x / 2, n) / 2 * acc2;
  return sum;
}

// K_{m+1/2}(x) closed form, m >= 0 integer.
Real besselKHalfInt(long m, const Real& x) {
  Real pref = sqrt(Real::pi() / (2 * x)) * exp(-x);
  Real sum(0L);
  Real term(1L);  // (m+k)!/(k!(m-k)!(2x)^k) at k=0
  sum = term;
  for (long k = 1; k <= m; ++k) {
    // term_k = term_{k-1} * (m+k)(m-k+1)/(k * 2x)
    term *= Real(m + k) * Real(m - k + 1) / (Real(k) * 2 * x);
    sum += term;
  }
  return pref * sum;
}

}  // namespace

Real besselK(const Real& nu_in, const Real& x, const PrecisionContext& ctx) {
  if (!(x > 0)) throw std::domain_error("besselK: requires x > 0");
  Real nu = abs(nu_in);  // K is even in the order
  PrecisionScope outer(ctx);

  if (x > 10) {
    // integral representation, integrand decays double-exponentially
    auto f = [&](const Real& t) { return exp(-x * cosh(t)) * cosh(nu * t); };
    // the integrand is O(e^{-x}); request enough digits on top of that scale
    int extra = static_cast<int>(x.toDouble() * 0.4343) + 10;
    PrecisionContext qctx(ctx.digits + extra, ctx.guard);
    QuadResult qr = quadTanhSinh(f, Real(0L), Real::inf(), qctx);
    Real val = qr.value;
    return val + Real(0L);  // round into the outer scope
  }

  // small-argument series; dispatch on the arithmetic type of nu
  Real nearest = roundr(nu);
  Real delta = nu - nearest;
  if (delta.isZero()) {
    PrecisionScope boost(PrecisionContext(ctx.digits + 25, ctx.guard));
    Real v = besselKIntSeries(nearest.toLong(), x);
    return v + Real(0L);
  }
  Real half = nu - floorr(nu);
  if (half == Real::ratio(1, 2)) {
    PrecisionScope boost(PrecisionContext(ctx.digits + 25, ctx.guard));
    Real v = besselKHalfInt(floorr(nu).toLong(), x);
    return v + Real(0L);
  }
  // generic order: reflection through I_{+-nu}; the subtraction cancels
  // ~|log10 delta| digits near integer orders, so boost accordingly
  double d = std::fabs(delta.toDouble());
  int cancel = d > 0 ? static_cast<int>(-std::log10(d)) + 1 : 0;
  if (cancel < 0) cancel = 0;
  int extra = cancel + static_cast<int>(2.0 * x.toDouble() * 0.4343) + 25;
  PrecisionScope boost(PrecisionContext(ctx.digits + extra, ctx.guard));
  Real nuB = abs(nu_in) + Real(0L);
  Real im = besselISeries(-nuB, x);
  Real ip = besselISeries(nuB, x);
  // sin(pi nu) via the distance to the nearest integer to avoid cancellation
  Real sinpin = sin(Real::pi() * (nuB - nearest));
  if (nearest.toLong() % 2 != 0) sinpin = -sinpin;
  Real v = Real::pi() / 2 * (im - ip) / sinpin;
  PrecisionScope back(ctx);
  return v + Real(0L);
}

std::vector<Real> besselKSequence(const Real& nu0, int count, const Real& x,
                                  const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::vector<Real> out;
  out.reserve(count);
  if (count <= 0) return out;
  out.push_back(besselK(nu0, x, ctx));
  if (count == 1) return out;
  out.push_back(besselK(nu0 + 1, x, ctx));
  // K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu : stable upward (K grows with order)
  for (int j = 2; j < count; ++j) {
    Real nu = nu0 + (j - 1);
    out.push_back(out[j - 2] + 2 * nu / x * out[j - 1]);
  }
  return out;
}

Real lnBarnesG(const Real& z, const PrecisionContext& ctx) {
  if (!(z > 0)) throw std::domain_error("lnBarnesG: requires z > 0");
  PrecisionScope scope(PrecisionContext(ctx.digits, ctx.guard + 10));
  // shift into base window [1, 2) with ln G(z+1) = ln Gamma(z) + ln G(z)
  Real zz = z;
  Real shift(0L);
  while (zz >= 2) {
    zz -= 1;
    shift += lngamma(zz);
  }
  while (zz < 1) {
    shift -= lngamma(zz);
    zz += 1;
  }
  // Alexeiewsky: int_0^w ln Gamma = w(1-w)/2 + (w/2) ln 2pi + w lnGamma(w) - ln G(1+w)
  Real w = zz - 1;
  Real base(0L);
  if (!w.isZero()) {
    auto f = [&](const Real& u) { return lngamma(u); };
    QuadResult qr = quadTanhSinh(f, Real(0L), w, PrecisionContext(ctx.digits, ctx.guard + 5));
    base = w * (1 - w) / 2 + w / 2 * log(2 * Real::pi()) + w * lngamma(w) - qr.value;
  }
  PrecisionScope back(ctx);
  return base + shift + Real(0L);
}

Real incGammaUpper(const Real& a, const Real& x, const PrecisionContext& ctx) {
  if (x < 0) throw std::domain_error("incGammaUpper: requires x >= 0");
  PrecisionScope scope(PrecisionContext(ctx.digits, ctx.guard + 10));
  const Real eps = Real::pow10(-(ctx.digits + ctx.guard + 5));
  if (x.isZero()) {
    if (!(a > 0)) throw std::domain_error("incGammaUpper: Gamma(a,0) needs a > 0");
    return tgamma(a);
  }
  if (x < a + 1) {
    if (!(a > 0)) throw std::domain_error("incGammaUpper: series branch needs a > 0");
    // lower series gamma(a,x), then subtract
    Real term = Real(1L) / a;
    Real sum = term;
    Real ap = a;
    for (long k = 1; k < 1000000; ++k) {
      ap += 1;
      term *= x / ap;
      sum += term;
      if (abs(term) <= eps * abs(sum)) break;
    }
    Real low = sum * exp(-x + a * log(x));
    PrecisionScope back(ctx);
    return tgamma(a) - low + Real(0L);
  }
  // continued fraction (modified Lentz)
  Real tiny = Real::pow10(-2 * (ctx.digits + ctx.guard + 10));
  Real b = x + 1 - a;
  Real c = Real(1L) / tiny;
  Real d = Real(1L) / b;
  Real h = d;
  for (long i = 1; i < 1000000; ++i) {
    Real an = -Real(i) * (Real(i) - a);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1L) / d;
    Real del = d * c;
    h *= del;
    if (abs(del - 1) <= eps) {
      PrecisionScope back(ctx);
      return exp(-x + a * log(x)) * h + Real(0L);
    }
  }
  throw std::runtime_error("incGammaUpper: continued fraction did not converge");
}

namespace {

// NR-style continued fraction for the incomplete beta.
Real betaCF(const Real& a, const Real& b, const Real& x, const Real& eps) {
  Real tiny = Real::pow10(-2 * workingDigits());
  Real qab = a + b, qap = a + 1, qam = a - 1;
  Real c(1L);
  Real d = 1 - qab * x / qap;
  if (abs(d) < tiny) d = tiny;
  d = Real(1L) / d;
  Real h = d;
  for (long m = 1; m < 1000000; ++m) {
    long m2 = 2 * m;
    Real aa = Real(m) * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1L) / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1L) / d;
    Real del = d * c;
    h *= del;
    if (abs(del - 1) <= eps) return h;
  }
  throw std::runtime_error("incBeta: continued fraction did not converge");
}

}  // namespace

Real incBeta(const Real& a, const Real& b, const Real& x, const PrecisionContext& ctx) {
  if (!(a > 0) || !(b > 0)) throw std::domain_error("incBeta: requires a, b > 0");
  if (x < 0 || x > 1) throw std::domain_error("incBeta: requires 0 <= x <= 1");
  PrecisionScope scope(PrecisionContext(ctx.digits, ctx.guard + 10));
  const Real eps = Real::pow10(-(ctx.digits + ctx.guard + 5));
  auto completeB = [&]() { return exp(lngamma(a) + lngamma(b) - lngamma(a + b)); };
  if (x.isZero()) return Real(0L);
  if (x == Real(1L)) {
    PrecisionScope back(ctx);
    return completeB() + Real(0L);
  }
  Real front = exp(a * log(x) + b * log1p(-x)) / a;
  Real result;
  if (x < (a + 1) / (a + b + 2)) {
    result = front * betaCF(a, b, x, eps);
  } else {
    Real front2 = exp(b * log1p(-x) + a * log(x)) / b;
    result = completeB() - front2 * betaCF(b, a, 1 - x, eps);
  }
  PrecisionScope back(ctx);
  return result + Real(0L);
}

}  // namespace opchain::mpcore
