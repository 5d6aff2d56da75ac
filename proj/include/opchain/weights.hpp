// Declarative descriptions of the five weight families and their
// log-potentials.  Parameters are kept as decimal strings so a spec can be
// re-materialized exactly at any working precision.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opchain/real.hpp"

namespace opchain::weights {

enum class Family { SPG, DF, GJ, JC, SPGHardEdge };

std::string familyName(Family f);
Family familyFromName(const std::string& name);

class WeightSpec {
 public:
  // |x|^alpha exp(-x^2 - t/x^2) on R, alpha > 0, t > 0
  static WeightSpec spg(const std::string& alpha, const std::string& t);
  // |x|^alpha exp(-x^4 + t x^2) on R, alpha > 0, t real (t <= 0 flagged as
  // outside the stated domain but accepted)
  static WeightSpec df(const std::string& alpha, const std::string& t);
  // exp(-x^2) (A + B theta(x - t)) on R, A >= 0, A + B >= 0
  static WeightSpec gj(const std::string& A, const std::string& B, const std::string& t);
  // (1 - x^2)^alpha (1 - chi_(-a,a)(x)) on [-1,1], alpha > 0, a in (0,1)
  static WeightSpec jc(const std::string& alpha, const std::string& a);
  // |x|^alpha exp(-x^2 - t/x^2) restricted to |x| >= sqrt(s)
  static WeightSpec spgHardEdge(const std::string& alpha, const std::string& t,
                                const std::string& s);

  Family family() const { return family_; }
  // parameter by name at the current working precision
  Real param(const std::string& name) const;
  std::string paramString(const std::string& name) const;
  bool isEven() const;

  bool inSupport(const Real& x) const;
  // w(x); exactly 0 off-support
  Real evaluate(const Real& x, const PrecisionContext& ctx) const;
  // v(x) = -ln w(x); domain error where w(x) = 0
  Real potential(const Real& x, const PrecisionContext& ctx) const;

  // notes where accepted parameters fall outside the stated domain
  std::vector<std::string> paperDomainWarnings() const;

  nlohmann::json toJson() const;
  static WeightSpec fromJson(const nlohmann::json& j);

  std::string describe() const;

 private:
  WeightSpec(Family f, std::vector<std::pair<std::string, std::string>> params);
  void validate() const;

  Family family_;
  std::vector<std::pair<std::string, std::string>> params_;  // name -> decimal
};

}  // namespace opchain::weights
