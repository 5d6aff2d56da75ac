#include "opchain/ode.hpp"

#include <algorithm>

namespace opchain::mpcore {

namespace {

// Dormand-Prince RK5(4)7M coefficients as exact rationals.
struct DP {
  Real c2 = Real::ratio(1, 5), c3 = Real::ratio(3, 10), c4 = Real::ratio(4, 5),
       c5 = Real::ratio(8, 9);
  Real a21 = Real::ratio(1, 5);
  Real a31 = Real::ratio(3, 40), a32 = Real::ratio(9, 40);
  Real a41 = Real::ratio(44, 45), a42 = Real::ratio(-56, 15), a43 = Real::ratio(32, 9);
  Real a51 = Real::ratio(19372, 6561), a52 = Real::ratio(-25360, 2187),
       a53 = Real::ratio(64448, 6561), a54 = Real::ratio(-212, 729);
  Real a61 = Real::ratio(9017, 3168), a62 = Real::ratio(-355, 33),
       a63 = Real::ratio(46732, 5247), a64 = Real::ratio(49, 176),
       a65 = Real::ratio(-5103, 18656);
  Real b1 = Real::ratio(35, 384), b3 = Real::ratio(500, 1113), b4 = Real::ratio(125, 192),
       b5 = Real::ratio(-2187, 6784), b6 = Real::ratio(11, 84);
  Real e1 = Real::ratio(71, 57600), e3 = Real::ratio(-71, 16695), e4 = Real::ratio(71, 1920),
       e5 = Real::ratio(-17253, 339200), e6 = Real::ratio(22, 525), e7 = Real::ratio(-1, 40);
};

std::vector<Real> axpy(const std::vector<Real>& y, const Real& h,
                       std::initializer_list<std::pair<Real, const std::vector<Real>*>> terms) {
  std::vector<Real> out = y;
  for (const auto& [coef, k] : terms) {
    for (size_t i = 0; i < out.size(); ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

}  // namespace

std::vector<OdeSample> integrateRK45(const OdeRhs& f, const Real& t0,
                                     const std::vector<Real>& y0, const Real& t1,
                                     const std::vector<Real>& samplePoints,
                                     const OdeOptions& opts) {
  const DP dp;
  const int dir = (t1 > t0) ? 1 : -1;
  const Real dirR(static_cast<long>(dir));

  std::vector<Real> targets = samplePoints;
  if (targets.empty() || targets.back() != t1) targets.push_back(t1);

  std::vector<OdeSample> out;
  Real t = t0;
  std::vector<Real> y = y0;
  std::vector<Real> k1 = f(t, y);
  Real h = (t1 - t0) / 64;  // initial step; the controller adapts quickly
  size_t nextTarget = 0;
  // emit t0 if it is itself requested
  if (!targets.empty() && targets[0] == t0) {
    out.push_back({t, y});
    ++nextTarget;
  }

  auto checkBlowup = [&](const std::vector<Real>& state, const Real& where) {
    for (const auto& v : state) {
      if (!v.isFinite() || abs(v) > opts.blowup)
        throw OdePoleError("trajectory blowup (movable pole) near t = " + where.str(20), where);
    }
  };

  long steps = 0;
  while (nextTarget < targets.size()) {
    if (++steps > opts.maxSteps) throw OdeToleranceError("integrateRK45: too many steps");
    // land exactly on the next sample point
    Real tNext = targets[nextTarget];
    bool clipped = false;
    Real hEff = h;
    if (dirR * (t + h - tNext) >= 0) {
      hEff = tNext - t;
      clipped = true;
    }

    auto y2 = axpy(y, hEff, {{dp.a21, &k1}});
    auto k2 = f(t + dp.c2 * hEff, y2);
    auto y3 = axpy(y, hEff, {{dp.a31, &k1}, {dp.a32, &k2}});
    auto k3 = f(t + dp.c3 * hEff, y3);
    auto y4 = axpy(y, hEff, {{dp.a41, &k1}, {dp.a42, &k2}, {dp.a43, &k3}});
    auto k4 = f(t + dp.c4 * hEff, y4);
    auto y5 = axpy(y, hEff, {{dp.a51, &k1}, {dp.a52, &k2}, {dp.a53, &k3}, {dp.a54, &k4}});
    auto k5 = f(t + dp.c5 * hEff, y5);
    auto y6 = axpy(y, hEff, {{dp.a61, &k1}, {dp.a62, &k2}, {dp.a63, &k3}, {dp.a64, &k4}, {dp.a65, &k5}});
    auto k6 = f(t + hEff, y6);
    auto y7 = axpy(y, hEff, {{dp.b1, &k1}, {dp.b3, &k3}, {dp.b4, &k4}, {dp.b5, &k5}, {dp.b6, &k6}});
    auto k7 = f(t + hEff, y7);

    // embedded error estimate
    Real errNorm(0L);
    for (size_t i = 0; i < y.size(); ++i) {
      Real e = hEff * (dp.e1 * k1[i] + dp.e3 * k3[i] + dp.e4 * k4[i] + dp.e5 * k5[i] +
                       dp.e6 * k6[i] + dp.e7 * k7[i]);
      Real sc = opts.absTol + opts.relTol * max(abs(y[i]), abs(y7[i]));
      Real r = abs(e) / sc;
      if (r > errNorm) errNorm = r;
    }

    if (errNorm <= 1) {
      t = clipped ? tNext : t + hEff;  // land exactly on sample points
      y = std::move(y7);
      k1 = std::move(k7);  // FSAL
      checkBlowup(y, t);
      while (nextTarget < targets.size() && t == targets[nextTarget]) {
        out.push_back({t, y});
        ++nextTarget;
      }
    }

    Real fac;
    if (errNorm.isZero()) {
      fac = Real(5L);
    } else {
      fac = Real("0.9") * pow(errNorm, Real::ratio(-1, 5));
      if (fac > 5) fac = Real(5L);
      if (fac < Real::ratio(1, 10)) fac = Real::ratio(1, 10);
    }
    // after an accepted clipped step keep the controller's preferred h
    if (!(clipped && errNorm <= 1)) h = hEff * fac;
    if (h.isZero())
      throw OdeToleranceError("integrateRK45: step size underflow at t = " + t.str(20));
  }
  return out;
}

}  // namespace opchain::mpcore
