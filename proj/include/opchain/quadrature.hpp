// Tanh-sinh (double-exponential) quadrature over finite and semi-infinite
// intervals, with an error estimate from the last two refinement levels.
#pragma once

#include <functional>
#include <stdexcept>

#include "opchain/real.hpp"

namespace opchain::mpcore {

struct QuadResult {
  Real value;
  Real errorEstimate;  // |I_m - I_{m-1}| of the final refinement
  int levels = 0;
  std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Integrand = std::function<Real(const Real&)>;

// Integrate f over (a, b); b may be +inf (pass Real::inf()).  Endpoint
// singularities at worst algebraic/logarithmic are handled by the
// double-exponential transform.  Throws QuadratureError if refinement stalls
// before reaching ~10^(-digits+guard) relative error.
QuadResult quadTanhSinh(const Integrand& f, const Real& a, const Real& b,
                        const PrecisionContext& ctx);

}  // namespace opchain::mpcore
