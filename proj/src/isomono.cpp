#include "opchain/isomono.hpp"

#include <sstream>

#include "opchain/errata.hpp"

namespace opchain::isomono {

namespace {

Dual2 evalPolyDual(const std::vector<Dual2>& c, const Dual2& x) {
  Dual2 p;
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) p = p * x + c[j];
  return p;
}

std::vector<Dual2> derivCoeffs(const std::vector<Dual2>& c) {
  if (c.size() <= 1) return {Dual2(Real(0L))};
  std::vector<Dual2> d(c.size() - 1);
  for (size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<long>(j);
  return d;
}

std::vector<Dual2> mulCoeffs(const std::vector<Dual2>& a, const std::vector<Dual2>& b) {
  std::vector<Dual2> r(a.size() + b.size() - 1, Dual2(Real(0L)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

int effectiveDegree(const std::vector<Dual2>& c, const Real& eps) {
  Real scale(0L);
  for (const auto& v : c) scale = max(scale, abs(v.v));
  if (scale.isZero()) return -1;
  int deg = -1;
  for (size_t j = 0; j < c.size(); ++j)
    if (abs(c[j].v) > eps * scale) deg = static_cast<int>(j);
  return deg;
}

// synthetic division of sigma by (x - s); remainder returned too
std::pair<std::vector<Dual2>, Dual2> divideByRoot(const std::vector<Dual2>& sigma,
                                                  const Dual2& s) {
  int n = static_cast<int>(sigma.size()) - 1;
  std::vector<Dual2> q(std::max(1, n), Dual2(Real(0L)));
  Dual2 carry;
  for (int k = n; k >= 1; --k) {
    carry = (k == n) ? sigma[n] : sigma[k] + s * carry;
    q[k - 1] = carry;
  }
  Dual2 rem = sigma[0] + s * carry;
  return {q, rem};
}

std::vector<Real> gridValues() {
  return {Real("0.37"), Real("0.81"), Real("1.23"), Real("1.77"), Real("2.31"),
          Real("2.89"), Real("3.41")};
}

}  // namespace

CaseCheckReport checkCaseB(const SigmaTauEta& ste, const TimeClosure& m,
                           const std::vector<Real>& tSamples, const Real& tol) {
  CaseCheckReport rep;
  rep.maxResidual = Real(0L);
  const Real eps = Real::pow10(-(workingDigits() - 10));
  for (const Real& t : tSamples) {
    Dual2 td = Dual2::variable(t);
    auto [sig, tau, eta] = ste.coeffs(td);
    Dual2 mv = m(td);

    // hypotheses: deg sigma <= 2, deg(sigma eta) <= 3, sigma time-independent
    if (effectiveDegree(sig, eps) > 2) {
      rep.notes.push_back("deg sigma > 2: Case B hypotheses violated");
      rep.ok = false;
      return rep;
    }
    auto sigEta = mulCoeffs(sig, eta);
    if (effectiveDegree(sigEta, eps) > 3) {
      rep.notes.push_back("deg sigma*eta > 3: Case B hypotheses violated");
      rep.ok = false;
      return rep;
    }
    for (const auto& c : sig)
      if (abs(c.d1) > eps * max(Real(1L), abs(c.v)))
        rep.notes.push_back("sigma depends on t (hypothesis violation)");

    // (t21) as a polynomial identity: 2 tau_dot(x) - m tau''(x) sigma(x) = 0
    std::vector<Dual2> tauDot(tau.size());
    for (size_t j = 0; j < tau.size(); ++j) tauDot[j] = Dual2(tau[j].d1);
    auto tauPP = derivCoeffs(derivCoeffs(tau));
    auto rhs = mulCoeffs(tauPP, sig);
    Real scale(0L);
    size_t len = std::max(tauDot.size(), rhs.size());
    Real worst(0L);
    std::vector<Real> lhsC(len, Real(0L)), rhsC(len, Real(0L));
    for (size_t j = 0; j < len; ++j) {
      if (j < tauDot.size()) lhsC[j] = 2 * tauDot[j].v;
      if (j < rhs.size()) rhsC[j] = mv.v * rhs[j].v;
      scale = max(scale, max(abs(lhsC[j]), abs(rhsC[j])));
    }
    if (scale.isZero()) scale = Real(1L);
    for (size_t j = 0; j < len; ++j) worst = max(worst, abs(lhsC[j] - rhsC[j]) / scale);

    // (t22): eta_dot affine with slope m (sigma eta)'''/6
    std::vector<Dual2> etaDot(eta.size());
    for (size_t j = 0; j < eta.size(); ++j) etaDot[j] = Dual2(eta[j].d1);
    Real slopeTarget = (sigEta.size() > 3) ? mv.v * 6 * sigEta[3].v / 6 : Real(0L);
    Real etaScale = max(Real(1L), max(abs(slopeTarget), abs(etaDot[0].v)));
    for (size_t j = 0; j < etaDot.size(); ++j) {
      Real want = (j == 1) ? slopeTarget : (j == 0 ? etaDot[0].v : Real(0L));
      if (j >= 2) worst = max(worst, abs(etaDot[j].v) / etaScale);
      else if (j == 1) worst = max(worst, abs(etaDot[1].v - slopeTarget) / etaScale);
    }
    // grid evaluation of (t22) (identity certification on sample points)
    auto grid = gridValues();
    for (const Real& x : grid) {
      for (const Real& lam : grid) {
        if (x == lam) continue;
        Dual2 ex = evalPolyDual(etaDot, Dual2::constant(x));
        Dual2 el = evalPolyDual(etaDot, Dual2::constant(lam));
        Real lhsG = ex.v - el.v;
        Real rhsG = slopeTarget * (x - lam);
        worst = max(worst, abs(lhsG - rhsG) / etaScale);
      }
    }
    rep.maxResidual = max(rep.maxResidual, worst);
  }
  rep.ok = rep.notes.empty() && rep.maxResidual < tol;
  return rep;
}

CaseCheckReport checkCaseA(const SigmaTauEta& ste, const TimeClosure& s,
                           const TimeClosure& m, const std::vector<Real>& tSamples,
                           const Real& tol) {
  CaseCheckReport rep;
  rep.maxResidual = Real(0L);
  const Real eps = Real::pow10(-(workingDigits() - 10));
  for (const Real& t : tSamples) {
    Dual2 td = Dual2::variable(t);
    auto [sig, tau, eta] = ste.coeffs(td);
    Dual2 mv = m(td);
    Dual2 sv = s(td);

    auto [rho, rem] = divideByRoot(sig, sv);
    Real sigScale(0L);
    for (const auto& c : sig) sigScale = max(sigScale, abs(c.v));
    if (abs(rem.v) > eps * max(Real(1L), sigScale)) {
      rep.notes.push_back("sigma(s) != 0: Case A requires s to be a root of sigma");
      rep.ok = false;
      return rep;
    }
    if (effectiveDegree(rho, eps) > 2) {
      rep.notes.push_back("deg rho > 2: Case A hypotheses violated");
      rep.ok = false;
      return rep;
    }

    auto tauD = tau;  // Dual2 coefficient lists, t-seeded
    auto etaD = eta;
    auto etaPrime = derivCoeffs(eta);       // x-derivative
    auto rhoEta = mulCoeffs(rho, eta);
    auto rhoEtaPrime = derivCoeffs(rhoEta);
    auto grid = gridValues();
    Real worst(0L);

    for (const Real& xr : grid) {
      Dual2 x = Dual2::constant(xr);
      Dual2 sigX = evalPolyDual(sig, x);
      Dual2 tauX = evalPolyDual(tauD, x);
      // (T1): d_t (tau/sigma)(x) = m tau(s)/(x-s)^2
      Dual2 ratio = tauX / sigX;
      Dual2 tauAtS = evalPolyDual(tauD, sv);
      Dual2 xms = x - sv;
      Real lhs1 = ratio.d1;
      Real rhs1 = (mv * tauAtS / (xms * xms)).v;
      Real sc1 = max(Real(1L), max(abs(lhs1), abs(rhs1)));
      worst = max(worst, abs(lhs1 - rhs1) / sc1);

      for (const Real& lr : grid) {
        if (xr == lr) continue;
        Dual2 lam = Dual2::constant(lr);
        Dual2 lms = lam - sv;
        Dual2 xml = x - lam;
        // sigma_dot/sigma at x and lambda
        Dual2 sigL = evalPolyDual(sig, lam);
        Real sdsX = sigX.d1 / sigX.v;
        Real sdsL = sigL.d1 / sigL.v;
        // (T3)
        Dual2 rhoAtS = evalPolyDual(rho, sv);
        Real lhs3 = sdsX - sdsL;
        Real rhs3 = (mv * rhoAtS * xml / (xms * lms)).v;
        Real sc3 = max(Real(1L), max(abs(lhs3), abs(rhs3)));
        worst = max(worst, abs(lhs3 - rhs3) / sc3);
        // (T2); m multiplies both groups (as in the worked Jacobi-type proof)
        Dual2 etaX = evalPolyDual(etaD, x);
        Dual2 etaL = evalPolyDual(etaD, lam);
        Real lhs2 = sdsX * (etaX.v - etaL.v) - etaX.d1 + etaL.d1;
        Dual2 rhoX = evalPolyDual(rho, x);
        Dual2 rhoL = evalPolyDual(rho, lam);
        Dual2 etaPrimeL = evalPolyDual(etaPrime, lam);
        Dual2 g1 = (etaX - etaL) * lms * rhoX / (xml * xms) - etaPrimeL * rhoL;
        Dual2 reX = evalPolyDual(rhoEta, x);
        Dual2 reL = evalPolyDual(rhoEta, lam);
        Dual2 repX = evalPolyDual(rhoEtaPrime, x);
        Dual2 repL = evalPolyDual(rhoEtaPrime, lam);
        Dual2 g2 = lms / (xml * xml) * (2 * reX - 2 * reL - (repX + repL) * xml);
        Real rhs2 = (mv * (g1 + g2)).v;
        Real sc2 = max(Real(1L), max(abs(lhs2), abs(rhs2)));
        worst = max(worst, abs(lhs2 - rhs2) / sc2);
      }
    }
    rep.maxResidual = max(rep.maxResidual, worst);
  }
  rep.ok = rep.notes.empty() && rep.maxResidual < tol;
  return rep;
}

HamiltonianSpec hamiltonian(const SigmaTauEta& ste, CaseTag tag, const TimeClosure& m,
                            const std::optional<TimeClosure>& s) {
  if (tag == CaseTag::A && !s)
    throw std::invalid_argument("hamiltonian: Case A needs the root closure s(t)");
  HamiltonianSpec hs;
  hs.caseTag = tag;
  hs.m = m;
  hs.s = s;
  auto coeffs = ste.coeffs;
  hs.abc = [coeffs, m, s, tag](const Dual2& t) -> std::array<std::vector<Dual2>, 3> {
    auto [sig, tau, eta] = coeffs(t);
    Dual2 mv = m(t);
    std::vector<Dual2> A(eta.size());
    for (size_t j = 0; j < eta.size(); ++j) A[j] = mv * eta[j];
    std::vector<Dual2> B;
    if (tag == CaseTag::B) {
      // tau(lambda) - sigma'(lambda)
      auto sp = derivCoeffs(sig);
      size_t len = std::max(tau.size(), sp.size());
      B.assign(len, Dual2(Real(0L)));
      for (size_t j = 0; j < len; ++j) {
        Dual2 v;
        if (j < tau.size()) v = v + tau[j];
        if (j < sp.size()) v = v - sp[j];
        B[j] = mv * v;
      }
    } else {
      // tau(lambda) - (lambda - s) rho'(lambda)
      Dual2 sv = (*s)(t);
      auto [rho, rem] = divideByRoot(sig, sv);
      (void)rem;
      auto rp = derivCoeffs(rho);
      // (lambda - s) rho'(lambda) as a coefficient list
      std::vector<Dual2> shift(rp.size() + 1, Dual2(Real(0L)));
      for (size_t j = 0; j < rp.size(); ++j) {
        shift[j + 1] = shift[j + 1] + rp[j];
        shift[j] = shift[j] - sv * rp[j];
      }
      size_t len = std::max(tau.size(), shift.size());
      B.assign(len, Dual2(Real(0L)));
      for (size_t j = 0; j < len; ++j) {
        Dual2 v;
        if (j < tau.size()) v = v + tau[j];
        if (j < shift.size()) v = v - shift[j];
        B[j] = mv * v;
      }
    }
    std::vector<Dual2> C(sig.size());
    for (size_t j = 0; j < sig.size(); ++j) C[j] = mv * sig[j];
    return {A, B, C};
  };
  return hs;
}

Real HamiltonianSpec::H(const Real& t, const Real& lambda, const Real& mu) const {
  auto [A, B, C] = abc(Dual2::constant(t));
  Dual2 l = Dual2::constant(lambda);
  return evalPolyDual(A, l).v + evalPolyDual(B, l).v * mu + evalPolyDual(C, l).v * mu * mu;
}

Real HamiltonianSpec::lambdaDot(const Real& t, const Real& lambda, const Real& mu) const {
  auto [A, B, C] = abc(Dual2::constant(t));
  Dual2 l = Dual2::constant(lambda);
  return evalPolyDual(B, l).v + 2 * evalPolyDual(C, l).v * mu;
}

Real HamiltonianSpec::muDot(const Real& t, const Real& lambda, const Real& mu) const {
  auto [A, B, C] = abc(Dual2::constant(t));
  Dual2 l = Dual2::variable(lambda);
  Real Al = evalPolyDual(A, l).d1;
  Real Bl = evalPolyDual(B, l).d1;
  Real Cl = evalPolyDual(C, l).d1;
  return -(Al + Bl * mu + Cl * mu * mu);
}

Real HamiltonianSpec::lambdaDdot(const Real& t, const Real& lambda, const Real& mu) const {
  Real ld = lambdaDot(t, lambda, mu);
  Real md = muDot(t, lambda, mu);
  // total d/dt of dH/dmu with (lambda, mu) flowing
  Dual2 td = Dual2::variable(t);
  auto [A, B, C] = abc(td);
  Dual2 l(lambda, ld, Real(0L));
  Dual2 mu2(mu, md, Real(0L));
  Dual2 phi = evalPolyDual(B, l) + 2 * evalPolyDual(C, l) * mu2;
  return phi.d1;
}

std::vector<FlowPoint> hamiltonFlow(const HamiltonianSpec& hs, const Real& t0,
                                    const Real& lambda0, const Real& mu0, const Real& t1,
                                    const Real& tol, int samples) {
  mpcore::OdeRhs rhs = [&hs](const Real& t, const std::vector<Real>& y) {
    return std::vector<Real>{hs.lambdaDot(t, y[0], y[1]), hs.muDot(t, y[0], y[1])};
  };
  std::vector<Real> pts;
  for (int i = 0; i < samples; ++i) pts.push_back(t0 + (t1 - t0) * i / (samples - 1));
  mpcore::OdeOptions opts;
  opts.relTol = tol;
  opts.absTol = tol / 100;
  auto traj = mpcore::integrateRK45(rhs, t0, {lambda0, mu0}, t1, pts, opts);
  std::vector<FlowPoint> out;
  out.reserve(traj.size());
  for (const auto& p : traj) {
    FlowPoint fp;
    fp.t = p.t;
    fp.lambda = p.y[0];
    fp.mu = p.y[1];
    fp.lambdaDot = hs.lambdaDot(p.t, fp.lambda, fp.mu);
    fp.muDot = hs.muDot(p.t, fp.lambda, fp.mu);
    fp.lambdaDdot = hs.lambdaDdot(p.t, fp.lambda, fp.mu);
    out.push_back(std::move(fp));
  }
  return out;
}

Real muFromLambdaDot(const HamiltonianSpec& hs, const Real& t, const Real& lambda,
                     const Real& lambdaDot) {
  auto [A, B, C] = hs.abc(Dual2::constant(t));
  Dual2 l = Dual2::constant(lambda);
  Real Bv = evalPolyDual(B, l).v;
  Real Cv = evalPolyDual(C, l).v;
  Real scale(0L);
  for (const auto& c : C) scale = max(scale, abs(c.v));
  if (abs(Cv) <= Real::pow10(-(workingDigits() / 2)) * max(Real(1L), scale))
    throw std::domain_error("muFromLambdaDot: sigma(lambda) = 0 (degenerate point)");
  return (lambdaDot - Bv) / (2 * Cv);
}

namespace {

struct PassX {
  Dual2 p, q, a, b;  // values with x-derivatives in d1/d2
};

PassX evaluateX(const DeformedEquation& de, const CompatibilityPair& pair, const Real& t,
                const Real& lambda, const Real& mu, const Real& x) {
  Dual2 td = Dual2::constant(t);
  auto [sig, tau, eta] = de.base.coeffs(td);
  Dual2 xd = Dual2::variable(x);
  Dual2 lam = Dual2::constant(lambda);
  Dual2 sigX = evalPolyDual(sig, xd);
  Dual2 tauX = evalPolyDual(tau, xd);
  Dual2 etaX = evalPolyDual(eta, xd);
  Dual2 sigL = evalPolyDual(sig, lam);
  Dual2 tauL = evalPolyDual(tau, lam);
  Dual2 etaL = evalPolyDual(eta, lam);
  Dual2 sigPL = evalPolyDual(derivCoeffs(sig), lam);
  Dual2 xml = xd - lam;

  PassX out;
  out.p = tauX / sigX - Dual2(Real(1L)) / xml;
  Dual2 muSq = Dual2(mu * mu);
  Dual2 sigSel = (de.qVariant == QVariant::SigmaAtLambda) ? sigL : sigX;
  out.q = (etaX - etaL - Dual2(mu) * (tauL - sigPL) - muSq * sigSel +
           Dual2(mu) * sigL / xml) /
          sigX;
  Dual2 mv = pair.m(td);
  if (pair.caseTag == CaseTag::B) {
    out.a = mv * sigX / xml;
    out.b = -(mv * sigL * Dual2(mu)) / xml;
  } else {
    Dual2 sv = (*pair.s)(td);
    auto [rho, rem] = divideByRoot(sig, sv);
    (void)rem;
    Dual2 rhoX = evalPolyDual(rho, xd);
    Dual2 rhoL = evalPolyDual(rho, lam);
    out.a = mv * (lam - sv) * rhoX / xml;
    out.b = -(mv * (lam - sv) * rhoL * Dual2(mu)) / xml;
  }
  return out;
}

std::pair<Real, Real> passT(const DeformedEquation& de, const Real& t, const Real& lambda,
                            const Real& mu, const Real& lambdaDot, const Real& muDot,
                            const Real& x) {
  // total t-derivatives of p and q with lambda(t), mu(t) flowing
  Dual2 td = Dual2::variable(t);
  auto [sig, tau, eta] = de.base.coeffs(td);
  Dual2 xd = Dual2::constant(x);
  Dual2 lam(lambda, lambdaDot, Real(0L));
  Dual2 mud(mu, muDot, Real(0L));
  Dual2 sigX = evalPolyDual(sig, xd);
  Dual2 tauX = evalPolyDual(tau, xd);
  Dual2 etaX = evalPolyDual(eta, xd);
  Dual2 sigL = evalPolyDual(sig, lam);
  Dual2 tauL = evalPolyDual(tau, lam);
  Dual2 etaL = evalPolyDual(eta, lam);
  Dual2 sigPL = evalPolyDual(derivCoeffs(sig), lam);
  Dual2 xml = xd - lam;
  Dual2 p = tauX / sigX - Dual2(Real(1L)) / xml;
  Dual2 sigSel = (de.qVariant == QVariant::SigmaAtLambda) ? sigL : sigX;
  Dual2 q = (etaX - etaL - mud * (tauL - sigPL) - mud * mud * sigSel + mud * sigL / xml) / sigX;
  return {p.d1, q.d1};
}

}  // namespace

std::pair<Real, Real> compatibilityResidual(const DeformedEquation& de,
                                            const CompatibilityPair& pair, const Real& t,
                                            const Real& lambda, const Real& mu,
                                            const Real& x) {
  Real ld = de.ham.lambdaDot(t, lambda, mu);
  Real md = de.ham.muDot(t, lambda, mu);
  PassX px = evaluateX(de, pair, t, lambda, mu, x);
  auto [pDot, qDot] = passT(de, t, lambda, mu, ld, md, x);
  Real r1 = pDot - px.a.v * px.p.d1 + 2 * px.b.d1 - px.p.v * px.a.d1 + px.a.d2;
  Real r2 = qDot + px.p.v * px.b.d1 - 2 * px.q.v * px.a.d1 - px.q.d1 * px.a.v + px.b.d2;
  return {abs(r1), abs(r2)};
}

std::pair<Real, Real> compatibilityResidualFrozen(const DeformedEquation& de,
                                                  const CompatibilityPair& pair,
                                                  const Real& t, const Real& lambda,
                                                  const Real& mu, const Real& x) {
  PassX px = evaluateX(de, pair, t, lambda, mu, x);
  auto [pDot, qDot] = passT(de, t, lambda, mu, Real(0L), Real(0L), x);
  Real r1 = pDot - px.a.v * px.p.d1 + 2 * px.b.d1 - px.p.v * px.a.d1 + px.a.d2;
  Real r2 = qDot + px.p.v * px.b.d1 - 2 * px.q.v * px.a.d1 - px.q.d1 * px.a.v + px.b.d2;
  return {abs(r1), abs(r2)};
}

QVariant adjudicateQVariant() {
  PrecisionContext ctx(60, 20);
  PrecisionScope scope(ctx);
  auto ste = linode::heunLimit(weights::Family::SPG, {Real(3L), Real(1L)});
  TimeClosure m = [](const Dual2& t) { return Dual2(Real(1L)) / t; };
  auto hs = hamiltonian(ste, CaseTag::B, m);
  DeformedEquation deL{ste, hs, QVariant::SigmaAtLambda};
  DeformedEquation deX{ste, hs, QVariant::SigmaAtX};
  CompatibilityPair pair{CaseTag::B, m, std::nullopt};
  Real t("1.3"), lambda("0.9"), mu("0.27");
  Real worstL(0L), worstX(0L);
  for (const Real& x : {Real("0.61"), Real("1.7"), Real("2.9")}) {
    auto [l1, l2] = compatibilityResidual(deL, pair, t, lambda, mu, x);
    auto [x1, x2] = compatibilityResidual(deX, pair, t, lambda, mu, x);
    worstL = max(worstL, max(l1, l2));
    worstX = max(worstX, max(x1, x2));
  }
  bool lWins = worstL < worstX;
  ErrataLedger::global().record(ErrataEntry{
      "q-display-sigma-argument",
      "section-2 definition of q(x) vs the deformed-operator display",
      "the q(x) definition carries -mu^2 sigma(x) while the deformed operator carries "
      "-mu^2 sigma(lambda)",
      {{"sigma(lambda)", "max compatibility residual = " + worstL.str(8), lWins},
       {"sigma(x)", "max compatibility residual = " + worstX.str(8), !lWins}},
      lWins ? "sigma(lambda) adopted (consistent with the mu^2 sigma(lambda) Hamiltonian "
              "coefficient)"
            : "sigma(x) adopted"});
  return lWins ? QVariant::SigmaAtLambda : QVariant::SigmaAtX;
}

}  // namespace opchain::isomono
