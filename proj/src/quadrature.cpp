#include "opchain/quadrature.hpp"

#include <cmath>

namespace opchain::mpcore {

namespace {

struct Node {
  Real x;
  Real w;
  bool resolvable = true;  // false once the abscissa would round onto an endpoint
};

// Abscissa/weight of the double-exponential transform at parameter u.
// Finite (a,b): x = mid + hal*tanh(g), g = (pi/2) sinh u, with the endpoint
// offsets computed through exp to keep them accurate.
// Semi-infinite (a,inf): x = a + exp(g); the left tail needs no special care
// because exp(g) is representable at any magnitude.
class Transform {
 public:
  Transform(const Real& a, const Real& b, const Real& cutoff, const Real& minOffset)
      : semiInf_(!b.isFinite()), a_(a), cutoff_(cutoff), minOffset_(minOffset) {
    if (!semiInf_) {
      mid_ = (a + b) / 2;
      hal_ = (b - a) / 2;
    }
    piHalf_ = Real::pi() / 2;
  }

  bool node(const Real& u, Node& out) const {
    Real g = piHalf_ * sinh(u);
    Real dg = piHalf_ * cosh(u);
    if (semiInf_) {
      Real ex = exp(g);
      out.x = a_ + ex;
      out.w = dg * ex;
      if (g < 0) {
        // left tail: stop when a nonzero endpoint can no longer resolve x
        if (!a_.isZero() && ex <= minOffset_ * a_) return false;
        return true;
      }
      return out.w > cutoff_;
    }
    Real e2 = exp(-2 * abs(g));
    Real offset = hal_ * 2 * e2 / (1 + e2);  // distance to the nearer endpoint
    if (offset <= minOffset_ * hal_) {
      out.resolvable = false;
      return false;
    }
    Real ch = cosh(g);
    out.w = hal_ * dg / (ch * ch);
    out.x = (g >= 0) ? mid_ + (hal_ - offset) : mid_ - (hal_ - offset);
    return out.w > cutoff_ || offset > cutoff_;
  }

 private:
  bool semiInf_;
  Real a_, mid_, hal_, piHalf_, cutoff_, minOffset_;
};

}  // namespace

QuadResult quadTanhSinh(const Integrand& f, const Real& a, const Real& b,
                        const PrecisionContext& ctx) {
  // Finite intervals run at roughly doubled precision so that endpoint
  // offsets stay resolvable deep enough for algebraic singularities up to
  // x^(-1/2); semi-infinite transforms do not lose the offset and keep the
  // requested precision.
  const bool finite = b.isFinite();
  const int workDigits = finite ? 2 * ctx.digits + ctx.guard + 15 : ctx.digits;
  PrecisionScope scope(PrecisionContext(workDigits, ctx.guard + 15));
  const int targetDigits = ctx.digits;
  const Real relTol = Real::pow10(-(ctx.digits - ctx.guard));
  const Real termEps = Real::pow10(-(targetDigits + ctx.guard + 10));
  const Real cutoff = Real::pow10(-2 * (targetDigits + ctx.guard + 20));
  const Real minOffset = Real::pow10(-(workDigits - 5));

  Transform tr(a, b, cutoff, minOffset);

  QuadResult res;
  const double uMaxD =
      1.1 * std::log(2.0 * (targetDigits + ctx.guard + 25) * 2.302585 / 3.14159) + 1.8;

  auto eval = [&](const Real& u, Real& acc, Real& accScale) -> bool {
    Node nd;
    if (!tr.node(u, nd)) return false;
    Real fx = f(nd.x);
    if (fx.isNan() || !fx.isFinite())
      throw QuadratureError("quadTanhSinh: integrand not finite at x=" + nd.x.str(20));
    Real term = fx * nd.w;
    acc += term;
    Real at = abs(term);
    if (at > accScale) accScale = at;
    return at > termEps * accScale;
  };

  Real h(1L);
  Real sum(0L);
  Real scale(0L);
  {
    Node nd;
    if (tr.node(Real(0L), nd)) {
      Real fx = f(nd.x);
      if (fx.isNan() || !fx.isFinite())
        throw QuadratureError("quadTanhSinh: integrand not finite at x=" + nd.x.str(20));
      sum = fx * nd.w;
      scale = abs(sum);
      res.evaluations++;
    }
    for (int dir = -1; dir <= 1; dir += 2) {
      int misses = 0;
      for (long k = 1;; ++k) {
        Real u = Real(dir) * Real(k) * h;
        if (abs(u) > Real(uMaxD)) break;
        res.evaluations++;
        if (!eval(u, sum, scale)) {
          if (++misses >= 2) break;
        } else {
          misses = 0;
        }
      }
    }
  }

  Real prev = sum * h;
  const int maxLevel = 14;
  for (int level = 1; level <= maxLevel; ++level) {
    h /= 2;
    for (int dir = -1; dir <= 1; dir += 2) {
      int misses = 0;
      for (long k = 1;; k += 2) {
        Real u = Real(dir) * Real(k) * h;
        if (abs(u) > Real(uMaxD)) break;
        res.evaluations++;
        if (!eval(u, sum, scale)) {
          if (++misses >= 2) break;
        } else {
          misses = 0;
        }
      }
    }
    Real cur = sum * h;
    Real err = abs(cur - prev);
    res.value = cur;
    res.errorEstimate = err;
    res.levels = level;
    prev = cur;
    Real magnitude = max(abs(cur), scale * h);
    if (level >= 3 && (err <= relTol * magnitude || (err.isZero() && !cur.isZero()))) {
      return res;
    }
    if (level >= 3 && cur.isZero() && scale.isZero()) {
      return res;  // identically zero integrand
    }
  }
  throw QuadratureError("quadTanhSinh: refinement stalled; error estimate " +
                        res.errorEstimate.str(8));
}

}  // namespace opchain::mpcore
