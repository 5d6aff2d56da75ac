#include <doctest.h>

#include "opchain/errata.hpp"
#include "opchain/moments.hpp"
#include "opchain/quadrature.hpp"
#include "opchain/special.hpp"

using namespace opchain;
using weights::WeightSpec;

TEST_SUITE("moments") {

TEST_CASE("odd moments of even weights vanish exactly") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  for (auto w : {WeightSpec::spg("1", "0.5"), WeightSpec::df("1", "1"),
                 WeightSpec::jc("1", "0.5")}) {
    auto t = moments::momentTable(w, 2, ctx);
    CHECK(t.mu(1).isZero());
    CHECK(t.mu(3).isZero());
    CHECK(t.mu(0) > 0);
  }
}

TEST_CASE("gj moments: gaussian limit and jump") {
  PrecisionContext ctx(90, 20);
  PrecisionScope scope(ctx);
  SUBCASE("gj{1,0,0} k=0 -> sqrt(pi)") {
    Real mu0 = moments::moment(WeightSpec::gj("1", "0", "0"), 0, ctx);
    CHECK(abs(mu0 - sqrt(Real::pi())) < Real::pow10(-85));
  }
  SUBCASE("negative-t closed form vs quadrature") {
    auto w = WeightSpec::gj("1", "0.5", "-0.7");
    for (int k : {0, 1, 2, 5}) {
      Real cf = moments::moment(w, k, ctx);
      Real q = moments::momentByQuadrature(w, k, ctx);
      CHECK(abs(cf - q) <= Real::pow10(-(ctx.digits / 2)) * max(abs(cf), Real(1L)));
    }
  }
}

TEST_CASE("spg closed form equals the quadrature oracle") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::spg("1", "1");
  // mu_0 = 2 K_1(2) (the Bessel order is (alpha+k+1)/2)
  Real mu0 = moments::moment(w, 0, ctx);
  Real expect = 2 * mpcore::besselK(Real(1L), Real(2L), ctx);
  CHECK(abs(mu0 - expect) / expect < Real::pow10(-70));
  Real q = moments::momentByQuadrature(w, 0, ctx);
  CHECK(abs(mu0 - q) / q < Real::pow10(-40));
  CHECK(moments::adjudicateSpgMomentFormula());
  // the adjudication left its errata entry
  bool found = false;
  for (const auto& e : ErrataLedger::global().entries())
    if (e.id == "spg-moment-variable") found = true;
  CHECK(found);
}

TEST_CASE("jc small-a moment approaches the a -> 0 limit") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::jc("1", "0.000001");
  Real mu0 = moments::moment(w, 0, ctx);
  CHECK(abs(mu0 - Real::ratio(4, 3)) < Real("1e-5"));
}

TEST_CASE("df dual-route agreement at t = 0") {
  PrecisionContext ctx(80, 20);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::df("1", "0");
  auto table = moments::momentTable(w, 3, ctx);  // runs the built-in cross-checks
  // mu_0 = 2 int_0^inf x e^{-x^4} dx = Gamma(1/2)/2
  CHECK(abs(table.mu(0) - sqrt(Real::pi()) / 2) < Real::pow10(-70));
}

TEST_CASE("hard-edge table is consistent and serializes") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  auto w = WeightSpec::spgHardEdge("1", "0.3", "0.2");
  auto t = moments::momentTable(w, 2, ctx);
  CHECK(t.mu(0) > 0);
  CHECK(t.mu(1).isZero());
  auto j = t.toJson();
  CHECK(j.at("entries").size() == 5);
  auto csv = t.toCsv();
  CHECK(csv.find("k,value,method") == 0);
  CHECK(csv.find("quadrature") != std::string::npos);
}

TEST_CASE("laguerre side moments reduce to pure Laguerre at s = t = 0") {
  PrecisionContext ctx(60, 15);
  PrecisionScope scope(ctx);
  Real lambda("0.5");
  auto mus = moments::laguerreMoments(lambda, Real(0L), Real(0L), 4, ctx);
  for (int k = 0; k <= 4; ++k) {
    Real expect = tgamma(lambda + k + 1);
    CHECK(abs(mus[k] - expect) / expect < Real::pow10(-(ctx.digits - ctx.guard - 5)));
  }
}

}  // TEST_SUITE
