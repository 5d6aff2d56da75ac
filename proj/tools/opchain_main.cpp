// Command-line front end: moments, recurrence tables, ODE residuals, Heun
// limits, isomonodromy checks, Painleve certification, asymptotics,
// factorization identities, and the errata ledger.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>

#include "opchain/errata.hpp"
#include "opchain/painleve.hpp"
#include "opchain/scaling.hpp"

using namespace opchain;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string family;
  std::string alpha = "1", t = "0", A = "1", B = "0", a = "0.5", s = "0";
  std::string weightJson;
  int digits = 0;  // 0: auto (env or per-command policy)
  std::string out;
  std::string format = "json";
  int jobs = 1;
};

int defaultDigits() {
  if (const char* env = std::getenv("OPCHAIN_DIGITS")) {
    int d = std::atoi(env);
    if (d >= 50) return d;
  }
  return 250;
}

weights::WeightSpec makeWeight(const CommonOpts& o) {
  if (!o.weightJson.empty())
    return weights::WeightSpec::fromJson(json::parse(o.weightJson));
  switch (weights::familyFromName(o.family)) {
    case weights::Family::SPG: return weights::WeightSpec::spg(o.alpha, o.t);
    case weights::Family::DF: return weights::WeightSpec::df(o.alpha, o.t);
    case weights::Family::GJ: return weights::WeightSpec::gj(o.A, o.B, o.t);
    case weights::Family::JC: return weights::WeightSpec::jc(o.alpha, o.a);
    case weights::Family::SPGHardEdge:
      return weights::WeightSpec::spgHardEdge(o.alpha, o.t, o.s);
  }
  throw std::invalid_argument("unknown family");
}

PrecisionContext contextFor(const CommonOpts& o, int nIndex) {
  int base = o.digits > 0 ? o.digits : defaultDigits();
  // n-indexed computations raise precision to >= 12n + 100
  if (nIndex > 0) {
    int need = 12 * nIndex + 100;
    if (need > base) base = need;
  }
  return PrecisionContext(base, 30);
}

json configEcho(const CommonOpts& o, const PrecisionContext& ctx, json extra = {}) {
  json cfg{{"digits", ctx.digits}, {"guard", ctx.guard}, {"format", o.format}};
  if (!o.family.empty()) cfg["family"] = o.family;
  for (auto& [k, v] : extra.items()) cfg[k] = v;
  return cfg;
}

void emit(const CommonOpts& o, const json& doc, const std::string& csv = "") {
  std::string payload;
  if (o.format == "csv" && !csv.empty()) {
    std::string header = "# config: " + doc.at("config").dump() + "\n";
    payload = header + csv;
  } else {
    payload = doc.dump(2) + "\n";
  }
  if (o.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(o.out);
    f << payload;
  }
}

void addWeightFlags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--weight", o.family, "weight family: spg|df|gj|jc|spg-hard-edge");
  cmd->add_option("--weight-json", o.weightJson, "weight spec as a JSON document");
  cmd->add_option("--alpha", o.alpha);
  cmd->add_option("--t", o.t);
  cmd->add_option("--A", o.A);
  cmd->add_option("--B", o.B);
  cmd->add_option("--a", o.a);
  cmd->add_option("--s", o.s);
}

void addCommonFlags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--digits", o.digits, "decimal digits of working precision");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", o.jobs, "parallel workers for independent subtasks");
}

painleve::FlowConfig parseWindow(const std::string& window, const std::string& lambda0,
                                 const std::string& mu0, const std::string& tol) {
  auto colon = window.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--window must be of the form t0:t1");
  painleve::FlowConfig cfg{Real(window.substr(0, colon)), Real(window.substr(colon + 1)),
                           Real(lambda0), Real(mu0), Real(tol), 21};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal-polynomial / Heun / Painleve tool chain"};
  app.require_subcommand(1);

  // ---- moments ----
  CommonOpts mo;
  int moK = -1, moN = -1;
  auto* cmdMoments = app.add_subcommand("moments", "moment sequences mu_k");
  addWeightFlags(cmdMoments, mo);
  addCommonFlags(cmdMoments, mo);
  cmdMoments->add_option("--k", moK, "single moment index");
  cmdMoments->add_option("--N", moN, "table up to mu_{2N}");
  cmdMoments->callback([&] {
    PrecisionContext ctx = contextFor(mo, std::max(moN, 0));
    PrecisionScope scope(ctx);
    auto w = makeWeight(mo);
    json cfg = configEcho(mo, ctx, {{"weight", w.toJson()}});
    for (const auto& warn : w.paperDomainWarnings()) std::cerr << "note: " << warn << "\n";
    if (moN >= 0) {
      auto table = moments::momentTable(w, moN, ctx);
      emit(mo, json{{"config", cfg}, {"table", table.toJson()}}, table.toCsv());
    } else {
      int k = moK < 0 ? 0 : moK;
      Real v = moments::moment(w, k, ctx);
      emit(mo, json{{"config", cfg}, {"k", k}, {"value", v.str()}},
           "k,value\n" + std::to_string(k) + "," + v.str() + "\n");
    }
  });

  // ---- recurrence ----
  CommonOpts ro;
  int roN = 20;
  auto* cmdRec = app.add_subcommand("recurrence", "h_n, D_n, alpha_n, beta_n tables");
  addWeightFlags(cmdRec, ro);
  addCommonFlags(cmdRec, ro);
  cmdRec->add_option("--n", roN, "highest index");
  cmdRec->callback([&] {
    PrecisionContext ctx = contextFor(ro, roN);
    PrecisionScope scope(ctx);
    auto w = makeWeight(ro);
    json cfg = configEcho(ro, ctx, {{"weight", w.toJson()}, {"n", roN}});
    auto mt = moments::momentTable(w, roN, ctx);
    auto table = orthopoly::buildRecurrence(mt, roN, ctx);
    // family-specific asymptotic ratio column
    std::string csv = "n,h,D,alpha,beta,asymptoticRatio\n";
    for (int n = 0; n <= roN; ++n) {
      std::string ratio;
      if (n >= 1 && w.family() == weights::Family::SPG)
        ratio = (4 * table.beta[n] / (2 * n + w.param("alpha"))).str();
      else if (n >= 1 && w.family() == weights::Family::DF)
        ratio = (6 * table.beta[n] / sqrt(Real(3L) * n)).str();
      csv += std::to_string(n) + "," + table.h[n].str() + "," + table.D[n].str() + "," +
             (n < static_cast<int>(table.alpha.size()) ? table.alpha[n].str() : "") + "," +
             table.beta[n].str() + "," + ratio + "\n";
    }
    emit(ro, json{{"config", cfg}, {"table", table.toJson()}}, csv);
  });

  // ---- ode-residual ----
  CommonOpts oo;
  int ooN = 6;
  auto* cmdOde = app.add_subcommand(
      "ode-residual", "finite-n ODE residuals on exact polynomials (typo adjudication)");
  addWeightFlags(cmdOde, oo);
  addCommonFlags(cmdOde, oo);
  cmdOde->add_option("--n", ooN, "polynomial degree");
  cmdOde->callback([&] {
    PrecisionContext ctx = contextFor(oo, ooN + 1);
    PrecisionScope scope(ctx);
    auto w = makeWeight(oo);
    json cfg = configEcho(oo, ctx, {{"weight", w.toJson()}, {"n", ooN}});
    auto mt = moments::momentTable(w, ooN + 1, ctx);
    auto table = orthopoly::buildRecurrence(mt, ooN + 1, ctx);
    std::vector<Real> xs = {Real("0.731"), Real("1.137"), Real("1.41"), Real("1.83"),
                            Real("2.2"),   Real("0.57"),  Real("0.93"), Real("1.62"),
                            Real("2.51"),  Real("0.64")};
    json variants = json::array();
    auto run = [&](const std::string& name, const linode::RationalODE2& ode) {
      Real worst(0L);
      for (const auto& x : xs) {
        auto pe = orthopoly::evalPoly(table, ooN, x);
        worst = max(worst, linode::residualNormalized(ode, pe.p, pe.dp, pe.d2p, x));
      }
      variants.push_back({{"variant", name}, {"maxNormalizedResidual", worst.str(12)}});
      return worst;
    };
    Real selected;
    if (w.family() == weights::Family::SPG) {
      Real alpha = w.param("alpha"), t = w.param("t");
      selected = run("no-stray-8", linode::spgOde(ooN, alpha, t, table.beta[ooN - 1],
                                                  table.beta[ooN], table.beta[ooN + 1],
                                                  linode::SpgQnVariant::NoStrayEight));
      run("times-8", linode::spgOde(ooN, alpha, t, table.beta[ooN - 1], table.beta[ooN],
                                    table.beta[ooN + 1], linode::SpgQnVariant::TimesEight));
    } else if (w.family() == weights::Family::DF) {
      Real alpha = w.param("alpha"), t = w.param("t");
      selected = run("lambda-convention",
                     linode::dfOde(ooN, alpha, t, table.beta[ooN - 1], table.beta[ooN],
                                   table.beta[ooN + 1],
                                   linode::DfAlphaReading::WeightExponentIsTwoAlphaPlusOne));
      run("alpha-as-printed",
          linode::dfOde(ooN, alpha, t, table.beta[ooN - 1], table.beta[ooN],
                        table.beta[ooN + 1],
                        linode::DfAlphaReading::DisplayAlphaIsWeightExponent));
    } else {
      throw std::invalid_argument("ode-residual: family must be spg or df");
    }
    bool pass = selected < Real::pow10(-(ctx.digits / 4));
    emit(oo, json{{"config", cfg},
                  {"variants", variants},
                  {"selectedResidual", selected.str(12)},
                  {"verdict", pass ? "pass" : "fail"}});
    if (!pass) std::exit(1);
  });

  // ---- heun-limit ----
  CommonOpts ho;
  std::string hoN = "8", hoAlpha = "1", hoT = "0.5";
  auto* cmdHeun = app.add_subcommand("heun-limit", "large-n Heun operator triples");
  addCommonFlags(cmdHeun, ho);
  cmdHeun->add_option("--family", ho.family)->required();
  cmdHeun->add_option("--n", hoN);
  cmdHeun->add_option("--alpha", hoAlpha);
  cmdHeun->add_option("--t", hoT);
  cmdHeun->callback([&] {
    PrecisionContext ctx = contextFor(ho, 0);
    PrecisionScope scope(ctx);
    auto fam = weights::familyFromName(ho.family);
    auto ste = linode::heunLimit(fam, {Real(hoN), Real(hoAlpha)});
    auto polys = ste.at(Real(hoT));
    auto list = [](const linode::Poly& p) {
      json arr = json::array();
      for (const auto& c : p.c) arr.push_back(c.str());
      return arr;
    };
    json cfg = configEcho(ho, ctx, {{"n", hoN}, {"alpha", hoAlpha}, {"t", hoT}});
    emit(ho, json{{"config", cfg},
                  {"sigma", list(polys[0])},
                  {"tau", list(polys[1])},
                  {"eta", list(polys[2])},
                  {"timeParam", ste.timeParamNote}});
  });

  // ---- isomono-check ----
  CommonOpts io;
  auto* cmdIso = app.add_subcommand("isomono-check", "Case A/B gauge conditions");
  addCommonFlags(cmdIso, io);
  std::string ioN = "3", ioAlpha = "1";
  cmdIso->add_option("--family", io.family)->required();
  cmdIso->add_option("--n", ioN);
  cmdIso->add_option("--alpha", ioAlpha);
  cmdIso->callback([&] {
    PrecisionContext ctx = contextFor(io, 0);
    PrecisionScope scope(ctx);
    auto fam = weights::familyFromName(io.family);
    auto ste = linode::heunLimit(fam, {Real(ioN), Real(ioAlpha)});
    auto m = painleve::familyGauge(fam);
    Real tol = Real::pow10(-(ctx.digits - 60));
    std::vector<Real> ts = fam == weights::Family::JC
                               ? std::vector<Real>{Real("2.2"), Real("2.6"), Real("3.1")}
                               : std::vector<Real>{Real("0.7"), Real("1.3"), Real("2.1")};
    isomono::CaseCheckReport rep;
    if (fam == weights::Family::JC) {
      rep = isomono::checkCaseA(ste, *painleve::familyRoot(fam), m, ts, tol);
    } else {
      rep = isomono::checkCaseB(ste, m, ts, tol);
    }
    json scaledFail = json::array();
    for (long c : {2L, -1L, 3L}) {
      auto bad = [m, c](const Dual2& t) {
        return c == 3 ? m(t) / Real(3L) : m(t) * Real(c);
      };
      isomono::CaseCheckReport b =
          fam == weights::Family::JC
              ? isomono::checkCaseA(ste, *painleve::familyRoot(fam), bad, ts, tol)
              : isomono::checkCaseB(ste, bad, ts, tol);
      scaledFail.push_back({{"scale", c == 3 ? "1/3" : std::to_string(c)},
                            {"ok", b.ok},
                            {"maxResidual", b.maxResidual.str(10)}});
    }
    json cfg = configEcho(io, ctx, {{"n", ioN}, {"alpha", ioAlpha}});
    bool pass = rep.ok;
    for (const auto& sf : scaledFail) pass = pass && !sf.at("ok").get<bool>();
    emit(io, json{{"config", cfg},
                  {"case", fam == weights::Family::JC ? "A" : "B"},
                  {"maxResidual", rep.maxResidual.str(10)},
                  {"gaugeRigidity", scaledFail},
                  {"verdict", pass ? "pass" : "fail"}});
    if (!pass) std::exit(1);
  });

  // ---- painleve-certify ----
  CommonOpts po;
  std::string poN = "3", poAlpha = "1", poWindow = "1:2", poLambda0 = "1", poMu0 = "0",
              poTol = "1e-12";
  auto* cmdCert = app.add_subcommand("painleve-certify",
                                     "certify the Hamiltonian flow against the Painleve rhs");
  addCommonFlags(cmdCert, po);
  cmdCert->add_option("--family", po.family)->required();
  cmdCert->add_option("--n", poN);
  cmdCert->add_option("--alpha", poAlpha);
  cmdCert->add_option("--window", poWindow, "t0:t1");
  cmdCert->add_option("--lambda0", poLambda0);
  cmdCert->add_option("--mu0", poMu0);
  cmdCert->add_option("--tol", poTol);
  cmdCert->callback([&] {
    PrecisionContext ctx = contextFor(po, 0);
    PrecisionScope scope(ctx);
    auto fam = weights::familyFromName(po.family);
    auto cfgFlow = parseWindow(poWindow, poLambda0, poMu0, poTol);
    auto rep = painleve::certify(fam, Real(poN), Real(poAlpha), cfgFlow);
    json cfg = configEcho(po, ctx,
                          {{"n", poN},
                           {"alpha", poAlpha},
                           {"window", poWindow},
                           {"lambda0", poLambda0},
                           {"mu0", poMu0},
                           {"tol", poTol}});
    emit(po, json{{"config", cfg}, {"report", rep.toJson()}});
    if (!rep.pass) std::exit(1);
  });

  // ---- asymptotics ----
  CommonOpts ao;
  std::string aoRegime = "large-s", aoAlpha = "1", aoS = "1000", aoT = "1";
  std::vector<int> aoNumericN;
  auto* cmdAsy = app.add_subcommand("asymptotics", "ln Delta expansions and numeric trend");
  addCommonFlags(cmdAsy, ao);
  cmdAsy->add_option("--regime", aoRegime)->check(CLI::IsMember({"large-s", "small-s", "large-t"}));
  cmdAsy->add_option("--alpha", aoAlpha);
  cmdAsy->add_option("--s", aoS);
  cmdAsy->add_option("--t", aoT);
  cmdAsy->add_option("--numeric-n", aoNumericN, "also compute numericDelta at these n");
  cmdAsy->callback([&] {
    int maxN = 0;
    for (int n : aoNumericN) maxN = std::max(maxN, 2 * n);
    PrecisionContext ctx = contextFor(ao, maxN);
    PrecisionScope scope(ctx);
    scaling::Regime regime = aoRegime == "large-s" ? scaling::Regime::LargeS
                             : aoRegime == "small-s" ? scaling::Regime::SmallS
                                                     : scaling::Regime::LargeT;
    auto rep = scaling::lnDeltaExpansion(regime, Real(aoAlpha), Real(aoS), Real(aoT), ctx);
    json cfg = configEcho(ao, ctx,
                          {{"regime", aoRegime}, {"alpha", aoAlpha}, {"s", aoS}, {"t", aoT}});
    json numeric = json::array();
    std::vector<std::future<std::pair<int, std::string>>> futs;
    for (int n : aoNumericN) {
      auto task = [&, n] {
        PrecisionContext c2 = contextFor(ao, 2 * n);
        PrecisionScope s2(c2);
        Real d = scaling::numericDelta(Real(aoAlpha), Real(aoS), Real(aoT), n, c2);
        return std::make_pair(n, log(d).str(30));
      };
      if (ao.jobs > 1) futs.push_back(std::async(std::launch::async, task));
      else numeric.push_back({{"n", n}, {"lnDelta", task().second}});
    }
    for (auto& f : futs) {
      auto [n, v] = f.get();
      numeric.push_back({{"n", n}, {"lnDelta", v}});
    }
    json doc{{"config", cfg},
             {"printed", rep.printed.toJson(Real(aoS))},
             {"recomputed", rep.recomputed.toJson(Real(aoS))},
             {"discrepancies", rep.discrepancies}};
    if (!numeric.empty()) doc["numericDelta"] = numeric;
    // plot-ready CSV: term index on the x-axis, or n for the numeric trend
    std::string csv = "term,label,value\n";
    int idx = 0;
    for (const auto& term : rep.printed.terms) {
      csv += std::to_string(idx++) + "," + term.label + "," + term.value(Real(aoS)).str() + "\n";
    }
    emit(ao, doc, csv);
  });

  // ---- factorization ----
  CommonOpts fo;
  std::string foAlpha = "1", foS = "0.2", foT = "0.3";
  int foN = 4;
  auto* cmdFac = app.add_subcommand("factorization", "even/odd Hankel factorization identity");
  addCommonFlags(cmdFac, fo);
  cmdFac->add_option("--alpha", foAlpha);
  cmdFac->add_option("--s", foS);
  cmdFac->add_option("--t", foT);
  cmdFac->add_option("--n", foN);
  cmdFac->callback([&] {
    PrecisionContext ctx = contextFor(fo, 2 * foN);
    PrecisionScope scope(ctx);
    auto [even, odd] = scaling::factorizationCheck(Real(foAlpha), Real(foS), Real(foT), foN, ctx);
    Real tol = Real::pow10(-(ctx.digits / 2));
    bool pass = even < tol && odd < tol;
    json cfg = configEcho(fo, ctx, {{"alpha", foAlpha}, {"s", foS}, {"t", foT}, {"n", foN}});
    emit(fo, json{{"config", cfg},
                  {"evenRelErr", even.str(10)},
                  {"oddRelErr", odd.str(10)},
                  {"tolerance", tol.str(4)},
                  {"verdict", pass ? "pass" : "fail"}});
    if (!pass) std::exit(1);
  });

  // ---- errata ----
  CommonOpts eo;
  auto* cmdErr = app.add_subcommand("errata", "run all adjudications and print the ledger");
  addCommonFlags(cmdErr, eo);
  cmdErr->callback([&] {
    PrecisionContext ctx = contextFor(eo, 0);
    PrecisionScope scope(ctx);
    moments::adjudicateSpgMomentFormula();
    linode::adjudicateSpgQnVariant();
    linode::adjudicateDfAlphaReading();
    linode::adjudicateGjEtaPower();
    linode::adjudicateDeformedHeunSign();
    isomono::adjudicateQVariant();
    painleve::adjudicateGjInstance();
    painleve::adjudicateJcDenominator();
    scaling::lnDeltaExpansion(scaling::Regime::LargeS, Real(1L), Real(1000L), Real(1L), ctx);
    scaling::lnDeltaExpansion(scaling::Regime::SmallS, Real(1L), Real("0.01"), Real(1L), ctx);
    scaling::lnDeltaExpansion(scaling::Regime::LargeT, Real(1L), Real(2L), Real(50L), ctx);
    json cfg = configEcho(eo, ctx);
    emit(eo, json{{"config", cfg}, {"errata", ErrataLedger::global().toJson()}});
    if (!eo.out.empty()) ErrataLedger::global().writeFile(eo.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
