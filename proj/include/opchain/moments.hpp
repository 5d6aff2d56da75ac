// Moment sequences mu_k for each weight family: closed forms where available
// (SPG via Bessel K, GJ via incomplete gamma, JC via incomplete beta),
// quadrature for DF and the hard-edge family, with dual-route consistency
// checks on every table.
#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "opchain/weights.hpp"

namespace opchain::moments {

enum class Method { ClosedForm, Quadrature };

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MomentTable {
  weights::WeightSpec weight;
  PrecisionContext precision;
  std::vector<Real> entries;         // mu_0 .. mu_{2N}
  std::vector<Method> method;

  int maxIndex() const { return static_cast<int>(entries.size()) - 1; }
  const Real& mu(int k) const { return entries.at(k); }

  nlohmann::json toJson() const;
  std::string toCsv() const;
};

// Single moment mu_k = int x^k w(x) dx over the support.
Real moment(const weights::WeightSpec& w, int k, const PrecisionContext& ctx);

// mu_k by quadrature regardless of family (the universal oracle).
Real momentByQuadrature(const weights::WeightSpec& w, int k, const PrecisionContext& ctx);

// Entries 0..2N, with closed form vs quadrature (or dual-route quadrature)
// cross-checks at k in {0, 1, 2, N, 2N}; throws ConsistencyError on mismatch
// beyond 10^(-digits/2).
MomentTable momentTable(const weights::WeightSpec& w, int N, const PrecisionContext& ctx);

// Moments of the half-line Laguerre-type weight x^lambda exp(-x - t/x) on
// [s, inf), k = 0..kMax (used by the double-scaling machinery).
std::vector<Real> laguerreMoments(const Real& lambda, const Real& s, const Real& t,
                                  int kMax, const PrecisionContext& ctx);

// Adjudication of the SPG closed-form moment formula (the paper's display
// writes the deformation variable as x): validates
//   mu_m = 2 t^{(alpha+m+1)/4} K_{(alpha+m+1)/2}(2 sqrt t)   (m even)
// against quadrature at five parameter points and records the finding.
bool adjudicateSpgMomentFormula();

}  // namespace opchain::moments
