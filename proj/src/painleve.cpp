#include "opchain/painleve.hpp"

#include "opchain/errata.hpp"

namespace opchain::painleve {

using weights::Family;
using isomono::CaseTag;
using isomono::TimeClosure;

Real rhs(const PainleveInstance& inst, const Real& t, const Real& y, const Real& yp) {
  switch (inst.kind) {
    case Kind::IIIprime: {
      if (y.isZero() || t.isZero())
        throw std::domain_error("PIII' rhs: singular configuration (y = 0 or t = 0)");
      const Real &al = inst.params[0], &be = inst.params[1], &ga = inst.params[2],
                 &de = inst.params[3];
      return yp * yp / y - yp / t + y * y * (al + ga * y) / (4 * t * t) + be / (4 * t) +
             de / (4 * y);
    }
    case Kind::IV: {
      if (y.isZero()) throw std::domain_error("PIV rhs: y = 0");
      const Real &a = inst.params[0], &b = inst.params[1];
      return yp * yp / (2 * y) + Real::ratio(3, 2) * y * y * y + 4 * t * y * y +
             2 * (t * t - a) * y + b / y;
    }
    case Kind::VI: {
      if (y.isZero() || y == Real(1L) || y == t || t.isZero() || t == Real(1L))
        throw std::domain_error("PVI rhs: singular configuration");
      const Real &al = inst.params[0], &be = inst.params[1], &ga = inst.params[2],
                 &de = inst.params[3];
      Real half = Real::ratio(1, 2);
      Real A = half * (1 / y + 1 / (y - 1) + 1 / (y - t)) * yp * yp;
      Real B = (1 / t + 1 / (t - 1) + 1 / (y - t)) * yp;
      Real C = y * (y - 1) * (y - t) / (t * t * (t - 1) * (t - 1)) *
               (al + be * t / (y * y) + ga * (t - 1) / ((y - 1) * (y - 1)) +
                de * t * (t - 1) / ((y - t) * (y - t)));
      return A - B + C;
    }
  }
  throw std::logic_error("rhs: bad kind");
}

VariableChange::Transformed VariableChange::apply(const Real& t, const Real& lambda,
                                                  const Real& lambdaDot,
                                                  const Real& lambdaDdot) const {
  Transformed out;
  Dual2 lam(lambda, lambdaDot, lambdaDdot);  // derivatives w.r.t. t
  switch (family) {
    case Family::SPG: {
      // lambda = y/t  =>  y = t lambda; independent variable stays t
      Dual2 td = Dual2::variable(t);
      Dual2 y = td * lam;
      out.x = t;
      out.y = y.v;
      out.yp = y.d1;
      out.ypp = y.d2;
      return out;
    }
    case Family::DF: {
      // lambda = -y/sqrt2, t = 2x  =>  y = -sqrt2 lambda, d/dx = 2 d/dt
      Real s2 = sqrt2();
      out.x = t / 2;
      out.y = -s2 * lambda;
      out.yp = -s2 * lambdaDot * 2;
      out.ypp = -s2 * lambdaDdot * 4;
      return out;
    }
    case Family::GJ: {
      // lambda = gjSign * y / sqrt2  =>  y = gjSign * sqrt2 * lambda
      Real s2 = sqrt2();
      out.x = t;
      out.y = gjSign * s2 * lambda;
      out.yp = gjSign * s2 * lambdaDot;
      out.ypp = gjSign * s2 * lambdaDdot;
      return out;
    }
    case Family::JC: {
      out.x = t;
      out.y = lambda;
      out.yp = lambdaDot;
      out.ypp = lambdaDdot;
      return out;
    }
    default:
      throw std::invalid_argument("VariableChange: unsupported family");
  }
}

TimeClosure familyGauge(Family family) {
  switch (family) {
    case Family::SPG:
      return [](const Dual2& t) { return Dual2(Real(1L)) / t; };
    case Family::DF:
      return [](const Dual2& t) { (void)t; return Dual2(-sqrt2() / 2); };
    case Family::GJ:
      return [](const Dual2& t) { (void)t; return Dual2(sqrt2()); };
    case Family::JC:
      return [](const Dual2& t) { return Dual2(Real(1L)) / (t * (t - 1)); };
    default:
      throw std::invalid_argument("familyGauge: unsupported family");
  }
}

std::optional<TimeClosure> familyRoot(Family family) {
  if (family == Family::JC) return TimeClosure([](const Dual2& t) { return t; });
  return std::nullopt;
}

isomono::HamiltonianSpec familyHamiltonian(Family family, const Real& n, const Real& alpha) {
  auto ste = linode::heunLimit(family, {n, alpha});
  CaseTag tag = (family == Family::JC) ? CaseTag::A : CaseTag::B;
  return isomono::hamiltonian(ste, tag, familyGauge(family), familyRoot(family));
}

Instance instanceFor(Family family, const Real& n, const Real& alpha) {
  Instance out;
  out.change.family = family;
  Real s2 = sqrt2();
  switch (family) {
    case Family::SPG:
      out.inst = {Kind::IIIprime,
                  {s2 * (1 - 2 * n - 2 * alpha), 2 * s2 * (3 - alpha), Real(2L), Real(-8L)}};
      return out;
    case Family::DF:
      out.inst = {Kind::IV, {alpha + 1, -2 * alpha * alpha}};
      return out;
    case Family::GJ:
      // adjudicated: lambda = +y/sqrt2 with IV(a=1, b=0); the printed map
      // lambda = -y/sqrt2 with the merged "2(t^2-2)y" reading both fail the
      // certification oracle (see adjudicateGjInstance)
      out.inst = {Kind::IV, {Real(1L), Real(0L)}};
      out.change.gjSign = Real(1L);
      return out;
    case Family::JC: {
      Real ah = n * (n + 2 * alpha + 1) / 2 + (2 * alpha - 1) * (2 * alpha - 1) / Real(8L);
      out.inst = {Kind::VI, {ah, Real::ratio(-9, 8), alpha * alpha / 2, Real::ratio(1, 2)}};
      return out;
    }
    default:
      throw std::invalid_argument("instanceFor: unsupported family");
  }
}

namespace {

Real maxPointwiseResidual(const PainleveInstance& inst, const VariableChange& change,
                          const std::vector<isomono::FlowPoint>& flow) {
  Real worst(0L);
  for (const auto& fp : flow) {
    auto tr = change.apply(fp.t, fp.lambda, fp.lambdaDot, fp.lambdaDdot);
    Real r = abs(tr.ypp - rhs(inst, tr.x, tr.y, tr.yp));
    worst = max(worst, r);
  }
  return worst;
}

// independent integration of the Painleve equation from the transformed
// initial data, compared against the transformed flow
Real trajectoryDeviation(const PainleveInstance& inst, const VariableChange& change,
                         const std::vector<isomono::FlowPoint>& flow, const Real& tol) {
  auto first = change.apply(flow.front().t, flow.front().lambda, flow.front().lambdaDot,
                            flow.front().lambdaDdot);
  std::vector<Real> xs;
  for (const auto& fp : flow) {
    auto tr = change.apply(fp.t, fp.lambda, fp.lambdaDot, fp.lambdaDdot);
    xs.push_back(tr.x);
  }
  mpcore::OdeRhs painleveRhs = [&inst](const Real& x, const std::vector<Real>& y) {
    return std::vector<Real>{y[1], rhs(inst, x, y[0], y[1])};
  };
  mpcore::OdeOptions opts;
  opts.relTol = tol;
  opts.absTol = tol / 100;
  auto traj = mpcore::integrateRK45(painleveRhs, first.x, {first.y, first.yp}, xs.back(), xs,
                                    opts);
  Real worst(0L);
  size_t j = 0;
  for (const auto& fp : flow) {
    auto tr = change.apply(fp.t, fp.lambda, fp.lambdaDot, fp.lambdaDdot);
    while (j < traj.size() && traj[j].t != tr.x) ++j;
    if (j == traj.size()) break;
    worst = max(worst, abs(traj[j].y[0] - tr.y));
  }
  return worst;
}

}  // namespace

CertifyReport certify(Family family, const Real& n, const Real& alpha,
                      const FlowConfig& cfg) {
  auto hs = familyHamiltonian(family, n, alpha);
  auto flow = isomono::hamiltonFlow(hs, cfg.t0, cfg.lambda0, cfg.mu0, cfg.t1, cfg.tol,
                                    cfg.samples);
  auto [inst, change] = instanceFor(family, n, alpha);

  CertifyReport rep;
  rep.family = family;
  rep.instance = inst;
  rep.window0 = cfg.t0;
  rep.window1 = cfg.t1;
  rep.tol = cfg.tol;
  rep.maxResidual = maxPointwiseResidual(inst, change, flow);
  rep.trajectoryDeviation = trajectoryDeviation(inst, change, flow, cfg.tol);
  rep.pass = rep.maxResidual < Real("1e-8");
  return rep;
}

nlohmann::json CertifyReport::toJson() const {
  const char* kindName = instance.kind == Kind::IIIprime ? "PIII'"
                         : instance.kind == Kind::IV     ? "PIV"
                                                         : "PVI";
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : instance.params) params.push_back(p.str(40));
  return {{"family", weights::familyName(family)},
          {"kind", kindName},
          {"params", params},
          {"window", {window0.str(20), window1.str(20)}},
          {"tol", tol.str(8)},
          {"maxResidual", maxResidual.str(12)},
          {"trajectoryDeviation", trajectoryDeviation.str(12)},
          {"verdict", pass ? "pass" : "fail"}};
}

Instance adjudicateGjInstance() {
  PrecisionContext ctx(60, 20);
  PrecisionScope scope(ctx);
  Real n(3L), alpha(0L);
  auto hs = familyHamiltonian(Family::GJ, n, alpha);
  FlowConfig cfg{Real(1L), Real(2L), Real(1L), Real("0.2"), Real("1e-12"), 9};
  auto flow = isomono::hamiltonFlow(hs, cfg.t0, cfg.lambda0, cfg.mu0, cfg.t1, cfg.tol,
                                    cfg.samples);
  struct Candidate {
    const char* name;
    Real sign;
    Real a, b;
  };
  std::vector<Candidate> cands = {
      {"printed map lambda=-y/sqrt2 with merged 2(t^2-2)y, i.e. IV(2,0)", Real(-1L), Real(2L), Real(0L)},
      {"printed map lambda=-y/sqrt2 with IV(1,0)", Real(-1L), Real(1L), Real(0L)},
      {"map lambda=+y/sqrt2 with IV(1,0)", Real(1L), Real(1L), Real(0L)},
  };
  Real bestRes;
  size_t best = 0;
  std::vector<ErrataVariant> variants;
  for (size_t i = 0; i < cands.size(); ++i) {
    VariableChange ch;
    ch.family = Family::GJ;
    ch.gjSign = cands[i].sign;
    PainleveInstance inst{Kind::IV, {cands[i].a, cands[i].b}};
    Real r = maxPointwiseResidual(inst, ch, flow);
    if (i == 0 || r < bestRes) {
      bestRes = r;
      best = i;
    }
    variants.push_back({cands[i].name, "max |y'' - rhs| = " + r.str(8), false});
  }
  variants[best].selected = true;
  ErrataLedger::global().record(ErrataEntry{
      "gj-piv-instance",
      "GJ reduction: the final display prints two y-linear terms and the map lambda = -y/sqrt2",
      "candidate (map, parameter) readings certified against the Hamiltonian flow",
      variants,
      std::string("selected: ") + cands[best].name});
  Instance out;
  out.inst = {Kind::IV, {cands[best].a, cands[best].b}};
  out.change.family = Family::GJ;
  out.change.gjSign = cands[best].sign;
  return out;
}

bool adjudicateJcDenominator() {
  PrecisionContext ctx(60, 20);
  PrecisionScope scope(ctx);
  Real n(3L), alpha(1L);
  auto hs = familyHamiltonian(Family::JC, n, alpha);
  FlowConfig cfg{Real(2L), Real(3L), Real("1.7"), Real("0.12"), Real("1e-12"), 9};
  auto flow = isomono::hamiltonFlow(hs, cfg.t0, cfg.lambda0, cfg.mu0, cfg.t1, cfg.tol,
                                    cfg.samples);
  auto [inst, change] = instanceFor(Family::JC, n, alpha);
  Real standard = maxPointwiseResidual(inst, change, flow);
  // the printed variant multiplies the algebraic block by t (denominator t(t-1)^2)
  Real printed(0L);
  for (const auto& fp : flow) {
    auto tr = change.apply(fp.t, fp.lambda, fp.lambdaDot, fp.lambdaDdot);
    const Real &t = tr.x, &y = tr.y, &yp = tr.yp;
    const Real &al = inst.params[0], &be = inst.params[1], &ga = inst.params[2],
               &de = inst.params[3];
    Real half = Real::ratio(1, 2);
    Real A = half * (1 / y + 1 / (y - 1) + 1 / (y - t)) * yp * yp;
    Real B = (1 / t + 1 / (t - 1) + 1 / (y - t)) * yp;
    Real C = y * (y - 1) * (y - t) / (t * (t - 1) * (t - 1)) *
             (al + be * t / (y * y) + ga * (t - 1) / ((y - 1) * (y - 1)) +
              de * t * (t - 1) / ((y - t) * (y - t)));
    printed = max(printed, abs(tr.ypp - (A - B + C)));
  }
  bool standardWins = standard < printed;
  ErrataLedger::global().record(ErrataEntry{
      "jc-pvi-denominator",
      "JC final display: the algebraic block's denominator and an unbalanced parenthesis",
      "t(t-1)^2 as printed vs the standard form's t^2(t-1)^2, certified along the "
      "Case-A Hamiltonian flow",
      {{"t^2(t-1)^2 (standard)", "max |y'' - rhs| = " + standard.str(8), standardWins},
       {"t(t-1)^2 (as printed)", "max |y'' - rhs| = " + printed.str(8), !standardWins}},
      standardWins ? "standard denominator t^2(t-1)^2 with the printed parameter set"
                   : "printed denominator selected"});
  return standardWins;
}

}  // namespace opchain::painleve
