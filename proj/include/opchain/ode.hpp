// Embedded adaptive Runge-Kutta 5(4) (Dormand-Prince) over Real state
// vectors, with step rejection, blowup detection, and exact landing on
// requested sample points.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "opchain/real.hpp"

namespace opchain::mpcore {

class OdePoleError : public std::runtime_error {
 public:
  OdePoleError(const std::string& msg, const Real& where)
      : std::runtime_error(msg), location(where) {}
  Real location;
};

class OdeToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OdeOptions {
  Real relTol = Real("1e-12");
  Real absTol = Real("1e-14");
  Real blowup = Real("1e8");   // |y_i| beyond this counts as a pole
  long maxSteps = 2000000;
};

struct OdeSample {
  Real t;
  std::vector<Real> y;
};

using OdeRhs = std::function<std::vector<Real>(const Real&, const std::vector<Real>&)>;

// Integrate y' = f(t, y) from t0 to t1 (t1 < t0 integrates backwards) and
// return the state at each requested sample point (samples must be sorted in
// the direction of integration; t1 is always appended if absent).
std::vector<OdeSample> integrateRK45(const OdeRhs& f, const Real& t0,
                                     const std::vector<Real>& y0, const Real& t1,
                                     const std::vector<Real>& samplePoints,
                                     const OdeOptions& opts);

}  // namespace opchain::mpcore
