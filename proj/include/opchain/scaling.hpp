// Double-scaling machinery for the hard-edge singularly perturbed Gaussian
// Hankel determinant: even/odd Laguerre-type factorizations, the C-term and
// Barnes-G constants, the three asymptotic expansions of ln Delta, and the
// finite-n numerical determinant ratio.
#pragma once

#include <json.hpp>

#include "opchain/orthopoly.hpp"
#include "opchain/special.hpp"

namespace opchain::scaling {

enum class Regime { LargeS, SmallS, LargeT };

struct LaguerreSideTables {
  orthopoly::RecurrenceTable minus;  // lambda = (alpha-1)/2  (even side)
  orthopoly::RecurrenceTable plus;   // lambda = (alpha+1)/2  (odd side)
};

// The two Laguerre-type systems with weights x^{(alpha -/+ 1)/2} e^{-x - t/x}
// on [s, inf), built from quadrature moments.
LaguerreSideTables laguerreSideTables(const Real& alpha, const Real& s, const Real& t,
                                      int nMax, const PrecisionContext& ctx);

// Relative errors of D_{2n} = D~_n^+ D~_n^- and D_{2n+1} = D~_n^+ D~_{n+1}^-,
// with the full-weight determinants computed independently by quadrature
// moments + LU.
std::pair<Real, Real> factorizationCheck(const Real& alpha, const Real& s, const Real& t,
                                         int n, const PrecisionContext& ctx);

// C(t/s, lambda) = ln G(lambda+1) - (lambda/2) ln(2 pi) + lambda t/(2s)
Real cTerm(const Real& s, const Real& t, const Real& lambda, const PrecisionContext& ctx);
// the two-lambda sum at lambda = (alpha -/+ 1)/2
Real cTermSum(const Real& alpha, const Real& s, const Real& t, const PrecisionContext& ctx);

struct ExpansionTerm {
  Real coefficient;  // includes any t-dependence, evaluated at the given t
  int halfPower;     // term = coefficient * s^{halfPower/2}   (times ln s if logFlag)
  bool logFlag = false;
  std::string label;

  Real value(const Real& s) const;
};

struct Expansion {
  Regime regime;
  std::vector<ExpansionTerm> terms;
  Real constantTerm;  // Barnes-G block

  Real evaluate(const Real& s) const;
  nlohmann::json toJson(const Real& s) const;
};

struct ExpansionReport {
  Expansion printed;     // the theorem displays, verbatim
  Expansion recomputed;  // assembled by summing the lambda = (alpha -/+ 1)/2 blocks
  std::vector<std::string> discrepancies;  // per-term coefficient comparison log
};

// The truncated expansion of ln Delta in the given regime, with the per-term
// breakdown.  Also records recomputed-vs-printed findings to the errata
// ledger (the recomputed sum is authoritative).
ExpansionReport lnDeltaExpansion(Regime regime, const Real& alpha, const Real& s,
                                 const Real& t, const PrecisionContext& ctx);

// D_{2n}(s/(4n), t/(2n+1+alpha)) / D_{2n}(0,0), with D_{2n}(0,0) cross-checked
// against the classical Gamma-product closed form.
Real numericDelta(const Real& alpha, const Real& s, const Real& t, int n,
                  const PrecisionContext& ctx);

}  // namespace opchain::scaling
