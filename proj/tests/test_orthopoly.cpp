#include <doctest.h>

#include <random>

#include "opchain/orthopoly.hpp"

using namespace opchain;
using weights::WeightSpec;

TEST_SUITE("orthopoly") {

TEST_CASE("hand-checked Hankel determinants and the Gaussian beta_1") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::gj("1", "0", "0");  // pure Gaussian
  auto mt = moments::momentTable(w, 6, ctx);
  auto t = orthopoly::buildRecurrence(mt, 6, ctx);
  // D_1 = mu_0, D_2 = mu_0 mu_2 - mu_1^2
  CHECK(abs(t.D[1] - mt.mu(0)) < Real::pow10(-70));
  CHECK(abs(t.D[2] - (mt.mu(0) * mt.mu(2) - mt.mu(1) * mt.mu(1))) < Real::pow10(-69));
  // beta_1 = 1/2 for e^{-x^2}
  CHECK(abs(t.beta[1] - Real::ratio(1, 2)) < Real::pow10(-70));
  // Hermite-type: beta_n = n/2
  CHECK(abs(t.beta[5] - Real::ratio(5, 2)) < Real::pow10(-68));
}

TEST_CASE("evalPoly base cases and the three-term recurrence residual") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::spg("1", "0.1");
  auto mt = moments::momentTable(w, 8, ctx);
  auto t = orthopoly::buildRecurrence(mt, 8, ctx);
  auto p0 = orthopoly::evalPoly(t, 0, Real("1.7"));
  CHECK(p0.p == Real(1L));
  CHECK(p0.dp.isZero());
  CHECK(p0.d2p.isZero());
  auto p1 = orthopoly::evalPoly(t, 1, Real("1.7"));
  CHECK(abs(p1.p - (Real("1.7") - t.alpha[0])) < Real::pow10(-70));
  CHECK(p1.dp == Real(1L));

  std::mt19937 gen(11);
  std::uniform_real_distribution<double> dist(-2.5, 2.5);
  for (int trial = 0; trial < 10; ++trial) {
    Real x(dist(gen));
    for (int n : {1, 4, 7}) {
      Real lhs = x * orthopoly::evalPoly(t, n, x).p;
      Real rhs = orthopoly::evalPoly(t, n + 1, x).p +
                 t.alpha[n] * orthopoly::evalPoly(t, n, x).p +
                 t.beta[n] * orthopoly::evalPoly(t, n - 1, x).p;
      CHECK(abs(lhs - rhs) <= Real::pow10(-(ctx.digits - 2 * ctx.guard)) * max(Real(1L), abs(lhs)));
    }
  }
}

TEST_CASE("even weights give exactly zero alpha_n") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  for (auto w : {WeightSpec::spg("1.5", "0.4"), WeightSpec::df("1", "1"),
                 WeightSpec::jc("1", "0.5")}) {
    auto mt = moments::momentTable(w, 6, ctx);
    auto t = orthopoly::buildRecurrence(mt, 6, ctx);
    for (const auto& a : t.alpha) CHECK(a.isZero());
  }
}

TEST_CASE("beta vs independent determinant ratios") {
  PrecisionContext ctx(100, 25);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::gj("1", "1", "0.5");  // non-even weight
  auto mt = moments::momentTable(w, 10, ctx);
  auto t = orthopoly::buildRecurrence(mt, 10, ctx);
  auto D = orthopoly::hankelDeterminants(mt.entries, 11, ctx);
  // D[k] = D_{k+1}
  for (int n = 1; n <= 9; ++n) {
    Real ratio = D[n - 2 >= 0 ? n - 2 : 0] * D[n] / (D[n - 1] * D[n - 1]);
    if (n == 1) ratio = D[1] / (D[0] * D[0]);  // D_0 = 1
    Real rel = abs(t.beta[n] - ratio) / t.beta[n];
    CHECK(rel < Real::pow10(-(ctx.digits - 2 * ctx.guard)));
  }
}

TEST_CASE("orthogonality residuals vanish over the exact bilinear form") {
  PrecisionContext ctx(100, 25);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::df("1", "1");
  auto mt = moments::momentTable(w, 9, ctx);
  auto t = orthopoly::buildRecurrence(mt, 9, ctx);
  CHECK(orthopoly::orthogonalityResidual(t, mt, 0, 0).isZero());
  for (int i = 0; i <= 9; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(orthopoly::orthogonalityResidual(t, mt, i, j) < Real::pow10(-(ctx.digits / 2)));
}

TEST_CASE("positivity failure reports the offending index") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  // moment sequence of no positive measure: make the 2x2 minor negative
  std::vector<Real> mu = {Real(1L), Real(2L), Real(1L), Real(0L), Real(1L)};
  try {
    orthopoly::buildRecurrenceFromMoments(mu, 2, ctx);
    FAIL("expected PositivityError");
  } catch (const orthopoly::PositivityError& e) {
    CHECK(e.offendingN == 1);
  }
}

TEST_CASE("serialization carries full-precision decimal strings") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::jc("1", "0.5");
  auto mt = moments::momentTable(w, 3, ctx);
  auto t = orthopoly::buildRecurrence(mt, 3, ctx);
  auto j = t.toJson();
  CHECK(j.at("beta").size() == 4);
  Real round(j.at("h")[0].get<std::string>());
  CHECK(abs(round - t.h[0]) < Real::pow10(-55));
  CHECK(t.toCsv().find("n,h,D,alpha,beta") == 0);
}

}  // TEST_SUITE
