// From a moment table: Hankel determinants, recurrence coefficients, norms,
// and monic polynomial coefficients, via an LDL^T factorization of the moment
// matrix (pivots give the norms h_n; inverse rows give the monic
// coefficients).  Plain LU determinants are kept as an independent
// cross-check route.
#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "opchain/moments.hpp"

namespace opchain::orthopoly {

class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& msg, int n) : std::runtime_error(msg), offendingN(n) {}
  int offendingN;
};

struct RecurrenceTable {
  int nMax = 0;
  PrecisionContext precision;
  std::vector<Real> h;      // h_0 .. h_nMax  (squared norms, pivots)
  std::vector<Real> D;      // D_0 = 1, D_1, ..., D_{nMax+1}  (D_n = prod_{j<n} h_j)
  std::vector<Real> alpha;  // alpha_0 .. alpha_{nMax-1}
  std::vector<Real> beta;   // beta_0 = 0 (convention), beta_1 .. beta_nMax
  std::vector<std::vector<Real>> polyCoeffs;  // row n: monic P_n coefficients, low->high

  nlohmann::json toJson() const;
  std::string toCsv() const;
};

// Factorize the (nMax+1)x(nMax+1) Hankel matrix of mu.  Throws
// PositivityError (with the offending n) when a pivot is not positive.
RecurrenceTable buildRecurrenceFromMoments(const std::vector<Real>& mu, int nMax,
                                           const PrecisionContext& ctx);

RecurrenceTable buildRecurrence(const moments::MomentTable& m, int nMax,
                                const PrecisionContext& ctx);

// Leading principal minors D_1..D_count of the Hankel matrix of mu, by plain
// LU elimination (independent of the LDL route).
std::vector<Real> hankelDeterminants(const std::vector<Real>& mu, int count,
                                     const PrecisionContext& ctx);

struct PolyEval {
  Real p, dp, d2p;
};

// Exact evaluation of P_n, P_n', P_n'' from the stored coefficient row.
PolyEval evalPoly(const RecurrenceTable& table, int n, const Real& x);

// |int P_i P_j w - h_i delta_ij| / sqrt(h_i h_j), through the exact bilinear
// form of the moment matrix (not quadrature).
Real orthogonalityResidual(const RecurrenceTable& table, const moments::MomentTable& m,
                           int i, int j);

}  // namespace opchain::orthopoly
