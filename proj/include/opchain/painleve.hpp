// Canonical Painleve III'/IV/VI right-hand sides, the per-family parameter
// instances and variable changes, and numerical certification that the
// isomonodromic Hamiltonian flows satisfy the claimed Painleve equations.
#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "opchain/isomono.hpp"

namespace opchain::painleve {

enum class Kind { IIIprime, IV, VI };

struct PainleveInstance {
  Kind kind;
  // III': {alpha, beta, gamma, delta}; IV: {a, b}; VI: {alpha, beta, gamma, delta}
  std::vector<Real> params;
};

// Normal forms:
//  III': y'' = y'^2/y - y'/t + y^2(alpha + gamma y)/(4t^2) + beta/(4t) + delta/(4y)
//  IV:   y'' = y'^2/(2y) + (3/2) y^3 + 4 t y^2 + 2(t^2 - a) y + b/y
//  VI:   y'' = (1/2)(1/y + 1/(y-1) + 1/(y-t)) y'^2 - (1/t + 1/(t-1) + 1/(y-t)) y'
//         + y(y-1)(y-t)/(t^2 (t-1)^2) (alpha + beta t/y^2 + gamma (t-1)/(y-1)^2
//                                       + delta t(t-1)/(y-t)^2)
Real rhs(const PainleveInstance& inst, const Real& t, const Real& y, const Real& yp);

// Map between the Hamiltonian variables (t, lambda) and the Painleve
// variables (x, y): y = yOfLambda(lambda, t), x = xOfT(t).
struct VariableChange {
  weights::Family family;
  // transforms the flow state (t, lambda, lambdaDot, lambdaDdot) into
  // (x, y, dy/dx, d2y/dx2) by the closed-form map with Dual2 chain rule.
  struct Transformed {
    Real x, y, yp, ypp;
  };
  Transformed apply(const Real& t, const Real& lambda, const Real& lambdaDot,
                    const Real& lambdaDdot) const;

  // map descriptors
  Real gjSign = Real(1L);  // lambda = gjSign * y / sqrt(2)
};

struct Instance {
  PainleveInstance inst;
  VariableChange change;
};

// The per-family instances: SPG -> III'(sqrt2(1-2n-2alpha), 2 sqrt2(3-alpha), 2, -8)
// with lambda = y/t; DF -> IV(alpha+1, -2 alpha^2) with lambda = -y/sqrt2, t = 2x;
// GJ -> IV adjudicated; JC -> VI with the identity map.
Instance instanceFor(weights::Family family, const Real& n, const Real& alpha);

struct FlowConfig {
  Real t0, t1;
  Real lambda0, mu0;
  Real tol = Real("1e-12");
  int samples = 21;
};

struct CertifyReport {
  weights::Family family;
  PainleveInstance instance;
  Real window0, window1;
  Real tol;
  // max |y'' - rhs| over the trajectory, all derivatives analytic (Dual2)
  Real maxResidual;
  // max |y_flow - y_painleve| against an independent integration of the
  // Painleve equation itself from the transformed initial data
  Real trajectoryDeviation;
  bool pass = false;

  nlohmann::json toJson() const;
};

CertifyReport certify(weights::Family family, const Real& n, const Real& alpha,
                      const FlowConfig& cfg);

// Builds the family's Hamiltonian (heunLimit + the proved gauge m).
isomono::HamiltonianSpec familyHamiltonian(weights::Family family, const Real& n,
                                           const Real& alpha);
isomono::TimeClosure familyGauge(weights::Family family);
std::optional<isomono::TimeClosure> familyRoot(weights::Family family);

// Adjudications: the GJ P_IV reading (map sign and the merged y-coefficient)
// and the JC P_VI denominator (t(t-1)^2 as printed vs t^2(t-1)^2).
Instance adjudicateGjInstance();
bool adjudicateJcDenominator();  // true = t^2(t-1)^2

}  // namespace opchain::painleve
