// High-precision special functions: modified Bessel K of real order,
// log Barnes G, and the incomplete gamma/beta functions.
#pragma once

#include <vector>

#include "opchain/quadrature.hpp"
#include "opchain/real.hpp"

namespace opchain::mpcore {

// K_nu(x) for real nu, x > 0, to ~10^(-digits+guard) relative error.
// Series below x = 10 (with dedicated integer/half-integer branches),
// the integral representation K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
// above.
Real besselK(const Real& nu, const Real& x, const PrecisionContext& ctx);

// K_{nu0 + j}(x), j = 0..count-1, by upward recurrence from two base values.
std::vector<Real> besselKSequence(const Real& nu0, int count, const Real& x,
                                  const PrecisionContext& ctx);

// ln G(z) for z > 0, where G is the Barnes G-function, G(z+1) = Gamma(z) G(z).
Real lnBarnesG(const Real& z, const PrecisionContext& ctx);

// Upper incomplete gamma Gamma(a, x), x >= 0.
Real incGammaUpper(const Real& a, const Real& x, const PrecisionContext& ctx);

// Unregularized incomplete beta B(x; a, b) = int_0^x t^(a-1)(1-t)^(b-1) dt.
Real incBeta(const Real& a, const Real& b, const Real& x, const PrecisionContext& ctx);

}  // namespace opchain::mpcore
