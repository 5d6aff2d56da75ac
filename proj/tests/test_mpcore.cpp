#include <doctest.h>

#include <random>

#include "opchain/dual.hpp"
#include "opchain/ode.hpp"
#include "opchain/quadrature.hpp"
#include "opchain/special.hpp"

using namespace opchain;
using mpcore::quadTanhSinh;

namespace {

// Glaisher-Kinkelin constant, frozen from an independent arbitrary-precision
// implementation (320 digits).
const char* kGlaisher =
    "1.28242712910062263687534256886979172776768892732500119206374002174040630885882646112973649195"
    "82023743942064612039900074893315779136277528040415907257386172752214334327143439787335067915257"
    "36685690787656114668644999778496275451817431239465276128213808180219264516851546143919901083573"
    "7307035049038881234188136749781330509";

Real tolFor(const PrecisionContext& ctx, int denom) {
  return Real::pow10(-(ctx.digits / denom));
}

}  // namespace

TEST_SUITE("mpcore") {

TEST_CASE("Dual2 reproduces polynomial derivatives exactly") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    Real x(dist(gen));
    Dual2 xd = Dual2::variable(x);
    Dual2 p = 3L * pow(xd, 5L) - 2L * pow(xd, 3L) + xd - 7L;
    Real pv = 3 * pow(x, 5L) - 2 * pow(x, 3L) + x - 7;
    Real dv = 15 * pow(x, 4L) - 6 * x * x + 1;
    Real d2v = 60 * pow(x, 3L) - 12 * x;
    CHECK(abs(p.v - pv) <= Real::pow10(-72) * max(Real(1L), abs(pv)));
    CHECK(abs(p.d1 - dv) <= Real::pow10(-72) * max(Real(1L), abs(dv)));
    CHECK(abs(p.d2 - d2v) <= Real::pow10(-72) * max(Real(1L), abs(d2v)));
  }
}

TEST_CASE("Dual2 chain rule on composite expressions") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  // f(x) = exp(sqrt(x))/x at x = 2
  Real x(2L);
  Dual2 f = exp(sqrt(Dual2::variable(x))) / Dual2::variable(x);
  Real s = sqrt(x);
  Real fv = exp(s) / x;
  Real fp = exp(s) * (1 / (2 * s * x) - 1 / (x * x));
  Real fpp = exp(s) * (1 / (4 * x * x) - 1 / (4 * s * x * x) - 1 / (s * x * x) + 2 / (x * x * x));
  CHECK(abs(f.v - fv) < Real::pow10(-75));
  CHECK(abs(f.d1 - fp) < Real::pow10(-74));
  CHECK(abs(f.d2 - fpp) < Real::pow10(-73));
}

TEST_CASE("quadTanhSinh basics") {
  PrecisionContext ctx(100, 20);
  PrecisionScope scope(ctx);
  SUBCASE("finite interval: int_-1^1 dx = 2") {
    auto r = quadTanhSinh([](const Real& x) { (void)x; return Real(1L); }, Real(-1L), Real(1L), ctx);
    CHECK(abs(r.value - 2) < Real::pow10(-95));
  }
  SUBCASE("semi-infinite: int_0^inf e^-x dx = 1") {
    auto r = quadTanhSinh([](const Real& x) { return exp(-x); }, Real(0L), Real::inf(), ctx);
    CHECK(abs(r.value - 1) < Real::pow10(-95));
  }
  SUBCASE("endpoint singularity: int_0^1 x^{-1/2} dx = 2") {
    auto r = quadTanhSinh([](const Real& x) { return 1 / sqrt(x); }, Real(0L), Real(1L), ctx);
    CHECK(abs(r.value - 2) < Real::pow10(-95));
  }
  SUBCASE("Bessel cross-check: int_0^inf x^{1/2} e^{-x-1/x} dx = 2 K_{3/2}(2)") {
    auto r = quadTanhSinh([](const Real& x) { return sqrt(x) * exp(-x - 1 / x); }, Real(0L),
                          Real::inf(), ctx);
    Real k = mpcore::besselK(Real::ratio(3, 2), Real(2L), ctx);
    CHECK(abs(r.value - 2 * k) / (2 * k) < tolFor(ctx, 2));
  }
}

TEST_CASE("besselK closed forms and symmetry") {
  PrecisionContext ctx(120, 25);
  PrecisionScope scope(ctx);
  SUBCASE("K_{1/2}(1) = sqrt(pi/2) e^{-1}") {
    Real k = mpcore::besselK(Real::ratio(1, 2), Real(1L), ctx);
    Real expect = sqrt(Real::pi() / 2) * exp(Real(-1L));
    CHECK(abs(k - expect) / expect < Real::pow10(-110));
  }
  SUBCASE("even in the order") {
    Real a = mpcore::besselK(Real("1.7"), Real("2.3"), ctx);
    Real b = mpcore::besselK(Real("-1.7"), Real("2.3"), ctx);
    CHECK(a == b);
  }
  SUBCASE("integer order vs quadrature identity") {
    Real k = mpcore::besselK(Real(1L), Real(2L), ctx);
    auto q = quadTanhSinh([](const Real& u) { return exp(-2 * cosh(u)) * cosh(u); }, Real(0L),
                          Real::inf(), ctx);
    CHECK(abs(k - q.value) / k < tolFor(ctx, 2));
    CHECK(abs(k - Real("0.13986588181652242728459880703541102388723458484151553038444205431856176640539864")) <
          Real::pow10(-78));
  }
  SUBCASE("large-argument path agrees with the small-argument recurrence") {
    auto seq = mpcore::besselKSequence(Real("0.3"), 3, Real(12L), ctx);
    Real k0 = mpcore::besselK(Real("0.3"), Real(12L), ctx);
    Real k2 = mpcore::besselK(Real("2.3"), Real(12L), ctx);
    CHECK(abs(seq[0] - k0) / k0 < tolFor(ctx, 2));
    CHECK(abs(seq[2] - k2) / k2 < tolFor(ctx, 2));
  }
  SUBCASE("ten random draws vs the Laplace-type integral identity") {
    // int_0^inf y^{nu-1} e^{-y - t/y} dy = 2 t^{nu/2} K_nu(2 sqrt t)
    PrecisionContext small(60, 15);
    PrecisionScope inner(small);
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> nuD(0.1, 3.5), tD(0.05, 4.0);
    for (int i = 0; i < 10; ++i) {
      Real nu(nuD(gen)), t(tD(gen));
      Real lhs = quadTanhSinh(
                     [&](const Real& y) { return pow(y, nu - 1) * exp(-y - t / y); }, Real(0L),
                     Real::inf(), small)
                     .value;
      Real rhs = 2 * pow(t, nu / 2) * mpcore::besselK(nu, 2 * sqrt(t), small);
      CHECK(abs(lhs - rhs) / rhs < tolFor(small, 2));
    }
  }
  SUBCASE("domain error") {
    CHECK_THROWS_AS(mpcore::besselK(Real(1L), Real(0L), ctx), std::domain_error);
  }
}

TEST_CASE("lnBarnesG values") {
  PrecisionContext ctx(120, 25);
  PrecisionScope scope(ctx);
  SUBCASE("G(1) = 1") { CHECK(abs(mpcore::lnBarnesG(Real(1L), ctx)) < Real::pow10(-110)); }
  SUBCASE("G(2) = 1") { CHECK(abs(mpcore::lnBarnesG(Real(2L), ctx)) < Real::pow10(-108)); }
  SUBCASE("G(4) = 2") {
    CHECK(abs(mpcore::lnBarnesG(Real(4L), ctx) - log(Real(2L))) < Real::pow10(-105));
  }
  SUBCASE("recurrence G(z+1) = Gamma(z) G(z) off-integer") {
    Real z("2.372");
    Real lhs = mpcore::lnBarnesG(z + 1, ctx);
    Real rhs = lngamma(z) + mpcore::lnBarnesG(z, ctx);
    CHECK(abs(lhs - rhs) < Real::pow10(-105));
  }
  SUBCASE("G(1/2) vs the Glaisher closed form") {
    // ln G(1/2) = (1/24) ln 2 + 1/8 - (1/4) ln pi - (3/2) ln A
    Real lnA = log(Real(kGlaisher));
    Real expect = log(Real(2L)) / 24 + Real::ratio(1, 8) - log(Real::pi()) / 4 -
                  Real::ratio(3, 2) * lnA;
    Real got = mpcore::lnBarnesG(Real::ratio(1, 2), ctx);
    CHECK(abs(got - expect) < tolFor(ctx, 2));
  }
  SUBCASE("domain error") {
    CHECK_THROWS_AS(mpcore::lnBarnesG(Real(0L), ctx), std::domain_error);
  }
}

TEST_CASE("incomplete gamma") {
  PrecisionContext ctx(100, 20);
  PrecisionScope scope(ctx);
  CHECK(abs(mpcore::incGammaUpper(Real(1L), Real(0L), ctx) - 1) < Real::pow10(-95));
  CHECK(abs(mpcore::incGammaUpper(Real::ratio(1, 2), Real(0L), ctx) - sqrt(Real::pi())) <
        Real::pow10(-94));
  SUBCASE("Gamma(3/2, 1) vs quadrature") {
    Real got = mpcore::incGammaUpper(Real::ratio(3, 2), Real(1L), ctx);
    auto q = quadTanhSinh([](const Real& t) { return sqrt(t) * exp(-t); }, Real(1L),
                          Real::inf(), ctx);
    CHECK(abs(got - q.value) / got < tolFor(ctx, 2));
  }
  SUBCASE("continued-fraction branch vs quadrature") {
    Real got = mpcore::incGammaUpper(Real("2.25"), Real(9L), ctx);
    auto q = quadTanhSinh([](const Real& t) { return pow(t, Real("1.25")) * exp(-t); },
                          Real(9L), Real::inf(), ctx);
    CHECK(abs(got - q.value) / got < tolFor(ctx, 2));
  }
  CHECK_THROWS_AS(mpcore::incGammaUpper(Real(1L), Real(-1L), ctx), std::domain_error);
}

TEST_CASE("incomplete beta") {
  PrecisionContext ctx(100, 20);
  PrecisionScope scope(ctx);
  SUBCASE("B(1; a, b) is the complete beta") {
    Real got = mpcore::incBeta(Real(3L), Real(2L), Real(1L), ctx);
    CHECK(abs(got - Real::ratio(1, 12)) < Real::pow10(-95));
  }
  SUBCASE("vs quadrature at an interior point") {
    Real a("1.5"), b("2.5"), x("0.37");
    Real got = mpcore::incBeta(a, b, x, ctx);
    auto q = quadTanhSinh(
        [&](const Real& t) { return pow(t, a - 1) * pow(1 - t, b - 1); }, Real(0L), x, ctx);
    CHECK(abs(got - q.value) / got < tolFor(ctx, 2));
  }
  SUBCASE("symmetry-reduction branch") {
    Real a("0.75"), b("1.25"), x("0.9");
    Real got = mpcore::incBeta(a, b, x, ctx);
    auto q = quadTanhSinh(
        [&](const Real& t) { return pow(t, a - 1) * pow(1 - t, b - 1); }, Real(0L), x, ctx);
    CHECK(abs(got - q.value) / got < tolFor(ctx, 2));
  }
}

TEST_CASE("doubling digits preserves leading digits") {
  PrecisionContext lo(60, 15), hi(120, 15);
  Real a, b, g1, g2;
  {
    PrecisionScope scope(lo);
    a = mpcore::besselK(Real("1.3"), Real("0.7"), lo);
    g1 = mpcore::lnBarnesG(Real("3.7"), lo);
  }
  {
    PrecisionScope scope(hi);
    b = mpcore::besselK(Real("1.3"), Real("0.7"), hi);
    g2 = mpcore::lnBarnesG(Real("3.7"), hi);
    CHECK(abs(a - b) / abs(b) < Real::pow10(-55));
    CHECK(abs(g1 - g2) < Real::pow10(-55));
  }
}

TEST_CASE("RK45 benchmark and blowup detection") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  mpcore::OdeRhs rhs = [](const Real& t, const std::vector<Real>& y) {
    (void)t;
    return std::vector<Real>{-y[0]};
  };
  mpcore::OdeOptions opts;
  opts.relTol = Real("1e-20");
  opts.absTol = Real("1e-22");
  auto out = mpcore::integrateRK45(rhs, Real(0L), {Real(1L)}, Real(2L), {}, opts);
  CHECK(abs(out.back().y[0] - exp(Real(-2L))) < Real("1e-18"));
  SUBCASE("blowup raises OdePoleError") {
    mpcore::OdeRhs bad = [](const Real& t, const std::vector<Real>& y) {
      (void)t;
      return std::vector<Real>{y[0] * y[0]};
    };
    CHECK_THROWS_AS(mpcore::integrateRK45(bad, Real(0L), {Real(1L)}, Real(5L), {}, opts),
                    mpcore::OdePoleError);
  }
}

}  // TEST_SUITE
