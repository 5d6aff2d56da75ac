// Isomonodromic-deformation machinery: deformed operator, Case A/B condition
// checks, Hamiltonians, flows, and the compatibility-system residuals.  Every
// t- and x-derivative is taken with Dual2 on the closed-form dependence; no
// differencing anywhere.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "opchain/linode.hpp"
#include "opchain/ode.hpp"

namespace opchain::isomono {

using linode::SigmaTauEta;

enum class CaseTag { A, B };

// scalar function of t with derivatives (m(t), s(t), ...)
using TimeClosure = std::function<Dual2(const Dual2&)>;

struct CaseCheckReport {
  bool ok = false;
  Real maxResidual;
  std::vector<std::string> notes;
};

// Case B (deg sigma <= 2, deg sigma*eta <= 3; tau, eta but not sigma depend
// on t): checks  tau_dot/sigma = m tau''/2  and
// eta_dot(x) - eta_dot(lambda) = m (sigma eta)'''/6 (x - lambda)
// coefficient-wise and on a 7x7 (x, lambda) grid at each t sample.
CaseCheckReport checkCaseB(const SigmaTauEta& ste, const TimeClosure& m,
                           const std::vector<Real>& tSamples, const Real& tol);

// Case A (sigma(s(t)) = 0, sigma = (x-s) rho): checks (T1), (T2), (T3) on
// sample grids with t-derivatives by Dual2.
CaseCheckReport checkCaseA(const SigmaTauEta& ste, const TimeClosure& s,
                           const TimeClosure& m, const std::vector<Real>& tSamples,
                           const Real& tol);

// H(t, lambda, mu) = A(t, lambda) + B(t, lambda) mu + C(t, lambda) mu^2,
// stored as lambda-polynomial coefficient closures of Dual2 t.
struct HamiltonianSpec {
  CaseTag caseTag;
  TimeClosure m;
  std::optional<TimeClosure> s;  // Case A root of sigma
  std::function<std::array<std::vector<Dual2>, 3>(const Dual2& t)> abc;

  // H and its building blocks at plain values
  Real H(const Real& t, const Real& lambda, const Real& mu) const;
  Real lambdaDot(const Real& t, const Real& lambda, const Real& mu) const;  // dH/dmu
  Real muDot(const Real& t, const Real& lambda, const Real& mu) const;      // -dH/dlambda
  // d/dt of dH/dmu along the flow (analytic, via Dual2)
  Real lambdaDdot(const Real& t, const Real& lambda, const Real& mu) const;
};

// Assembles H = m (eta(lambda) + (tau(lambda) - sigma'(lambda)) mu + sigma(lambda) mu^2)
// for Case B, or with (lambda - s) rho'(lambda) in place of sigma'(lambda) for Case A.
HamiltonianSpec hamiltonian(const SigmaTauEta& ste, CaseTag tag, const TimeClosure& m,
                            const std::optional<TimeClosure>& s = std::nullopt);

struct FlowPoint {
  Real t, lambda, mu;
  Real lambdaDot, muDot, lambdaDdot;
};

// Adaptive RK5(4) integration of the Hamilton equations, sampled at
// `samples` evenly spaced points of [t0, t1] (endpoints included).
std::vector<FlowPoint> hamiltonFlow(const HamiltonianSpec& hs, const Real& t0,
                                    const Real& lambda0, const Real& mu0, const Real& t1,
                                    const Real& tol, int samples = 33);

// The unique mu with dH/dmu(t, lambda, mu) = lambdaDot (affine inversion).
Real muFromLambdaDot(const HamiltonianSpec& hs, const Real& t, const Real& lambda,
                     const Real& lambdaDot);

enum class QVariant {
  SigmaAtLambda,  // -mu^2 sigma(lambda) in the deformed operator (adopted)
  SigmaAtX,       // -mu^2 sigma(x) as in the section-2 q(x) display
};

struct DeformedEquation {
  SigmaTauEta base;
  HamiltonianSpec ham;
  QVariant qVariant = QVariant::SigmaAtLambda;
};

struct CompatibilityPair {
  CaseTag caseTag;
  TimeClosure m;
  std::optional<TimeClosure> s;  // Case A
};

// Residuals (r1, r2) of the compatibility system at (t, x), with (lambda, mu)
// given and (lambda_dot, mu_dot) supplied by the Hamiltonian flow:
//   r1 = p_dot - a p' + 2 b' - p a' + a''
//   r2 = q_dot + p b' - 2 q a' - q' a + b''
std::pair<Real, Real> compatibilityResidual(const DeformedEquation& de,
                                            const CompatibilityPair& pair, const Real& t,
                                            const Real& lambda, const Real& mu,
                                            const Real& x);

// Same residuals with (lambda_dot, mu_dot) forced to zero (deformation off).
std::pair<Real, Real> compatibilityResidualFrozen(const DeformedEquation& de,
                                                  const CompatibilityPair& pair,
                                                  const Real& t, const Real& lambda,
                                                  const Real& mu, const Real& x);

// records the q(x)-display discrepancy (sigma(lambda) vs sigma(x))
QVariant adjudicateQVariant();

}  // namespace opchain::isomono
