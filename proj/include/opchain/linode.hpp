// Second-order linear ODEs with rational coefficients: the finite-n ODEs of
// the four weight families, their large-n Heun limits, the general/deformed
// Heun pair, and residual evaluation.  Where the source displays are
// ambiguous, every plausible reading is constructible and a residual oracle
// (exact polynomials) selects; findings land in the errata ledger.
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "opchain/poly.hpp"
#include "opchain/weights.hpp"

namespace opchain::linode {

// f'' + p f' + q f = 0
struct RationalODE2 {
  Rat p, q;
};

Real residual(const RationalODE2& ode, const Real& f, const Real& fp, const Real& fpp,
              const Real& x);
Real residualNormalized(const RationalODE2& ode, const Real& f, const Real& fp,
                        const Real& fpp, const Real& x);

// ---------------------------------------------------------------------------
// Heun-class operator triples sigma d^2 + tau d + eta with closed-form time
// dependence.  Coefficient lists are produced by a closure of Dual2 t so that
// t-derivatives are available without differencing.
struct SigmaTauEta {
  weights::Family family;
  std::function<std::array<std::vector<Dual2>, 3>(const Dual2& t)> coeffs;
  std::string timeParamNote;

  std::array<Poly, 3> at(const Real& t) const;
};

Real steResidual(const SigmaTauEta& ste, const Real& t, const Real& f, const Real& fp,
                 const Real& fpp, const Real& x);
Real steResidualNormalized(const SigmaTauEta& ste, const Real& t, const Real& f,
                           const Real& fp, const Real& fpp, const Real& x);

struct HeunLimitParams {
  Real n;      // degree parameter (kept continuous)
  Real alpha;  // the chain's alpha parameter; ignored by GJ
};

// The four Heun instances of the large-n limits.  For SPG the time variable
// is the weight's t (kappa = t(2n+alpha) fixed in the limit); for DF and GJ
// it is the quadratic deformation; for JC it is t = a^2.
SigmaTauEta heunLimit(weights::Family family, const HeunLimitParams& params);

// GJ eta-power variants for adjudication: the source prints n^(2/3) in one
// display and n^(3/2) in the other.
SigmaTauEta heunLimitGjVariant(const HeunLimitParams& params, bool powerThreeHalves);

// ---------------------------------------------------------------------------
// Finite-n ODEs.

enum class SpgQnVariant {
  NoStrayEight,  // trailing "8" in the Q_n display treated as line noise
  TimesEight,    // read literally as a factor 8
};

RationalODE2 spgOde(long n, const Real& alpha, const Real& t, const Real& betaNm1,
                    const Real& betaN, const Real& betaNp1,
                    SpgQnVariant variant = SpgQnVariant::NoStrayEight);

enum class DfAlphaReading {
  DisplayAlphaIsWeightExponent,   // the display's alpha equals the |x|-exponent
  WeightExponentIsTwoAlphaPlusOne,  // the display's alpha is the source's lambda
};

// betaNm1/betaN/betaNp1 computed for the weight |x|^alphaWeight e^{-x^4+tx^2}.
RationalODE2 dfOde(long n, const Real& alphaWeight, const Real& t, const Real& betaNm1,
                   const Real& betaN, const Real& betaNp1,
                   DfAlphaReading reading = DfAlphaReading::WeightExponentIsTwoAlphaPlusOne);

struct AuxiliaryQuantities {
  Real Rn, RnPrime;
  // JC only: derived via the closed formulas
  std::optional<Real> rn, betaN;
  // |direct - factored| of the r_n evaluation (two algebraic routes)
  std::optional<Real> rnTwoWayDiff;
};

AuxiliaryQuantities gjAsymptoticAux(const Real& n, const Real& t);
AuxiliaryQuantities jcAux(const Real& n, const Real& alpha, const Real& a, const Real& Rn,
                          const Real& RnPrime);
AuxiliaryQuantities jcAsymptoticAux(const Real& n, const Real& alpha, const Real& a);

RationalODE2 gjOde(const Real& n, const Real& t, const AuxiliaryQuantities& aux);
RationalODE2 jcOde(const Real& n, const Real& alpha, const Real& a,
                   const AuxiliaryQuantities& aux);

// ---------------------------------------------------------------------------
// General Heun equation with singularities {0, 1, a, inf} and its
// derivative-deformation with the extra apparent singularity at q/(alpha beta).

struct HeunGeneral {
  Real gamma, delta, epsilon, alpha, beta, q, a;

  // enforces the Fuchs relation gamma+delta+epsilon = alpha+beta+1
  HeunGeneral(Real gamma, Real delta, Real epsilon, Real alpha, Real beta, Real q, Real a);
};

RationalODE2 heunGeneralOde(const HeunGeneral& h);

enum class DeformedSign { Plus, Minus };

RationalODE2 heunDeformedDerivative(const HeunGeneral& h, DeformedSign sign);

// (v, v', v'') of v = x^gamma (x-1)^delta (x-a)^epsilon y' along a solution
// (y, y') of the general Heun equation, computed analytically.
struct DerivedSolutionPoint {
  Real v, vp, vpp;
};
DerivedSolutionPoint deformedSolutionFrom(const HeunGeneral& h, const Real& x,
                                          const Real& y, const Real& yp);

// ---------------------------------------------------------------------------
// Adjudications (each records an errata entry and returns the selection).

SpgQnVariant adjudicateSpgQnVariant();
DfAlphaReading adjudicateDfAlphaReading();
bool adjudicateGjEtaPower();        // true = n^{3/2}
DeformedSign adjudicateDeformedHeunSign();

}  // namespace opchain::linode
