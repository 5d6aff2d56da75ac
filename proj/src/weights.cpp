#include "opchain/weights.hpp"

#include <stdexcept>

namespace opchain::weights {

std::string familyName(Family f) {
  switch (f) {
    case Family::SPG: return "spg";
    case Family::DF: return "df";
    case Family::GJ: return "gj";
    case Family::JC: return "jc";
    case Family::SPGHardEdge: return "spg-hard-edge";
  }
  throw std::logic_error("familyName: bad family");
}

Family familyFromName(const std::string& name) {
  if (name == "spg") return Family::SPG;
  if (name == "df") return Family::DF;
  if (name == "gj") return Family::GJ;
  if (name == "jc") return Family::JC;
  if (name == "spg-hard-edge" || name == "spghardedge") return Family::SPGHardEdge;
  throw std::invalid_argument("unknown weight family '" + name + "'");
}

WeightSpec::WeightSpec(Family f, std::vector<std::pair<std::string, std::string>> params)
    : family_(f), params_(std::move(params)) {
  validate();
}

WeightSpec WeightSpec::spg(const std::string& alpha, const std::string& t) {
  return WeightSpec(Family::SPG, {{"alpha", alpha}, {"t", t}});
}
WeightSpec WeightSpec::df(const std::string& alpha, const std::string& t) {
  return WeightSpec(Family::DF, {{"alpha", alpha}, {"t", t}});
}
WeightSpec WeightSpec::gj(const std::string& A, const std::string& B, const std::string& t) {
  return WeightSpec(Family::GJ, {{"A", A}, {"B", B}, {"t", t}});
}
WeightSpec WeightSpec::jc(const std::string& alpha, const std::string& a) {
  return WeightSpec(Family::JC, {{"alpha", alpha}, {"a", a}});
}
WeightSpec WeightSpec::spgHardEdge(const std::string& alpha, const std::string& t,
                                   const std::string& s) {
  return WeightSpec(Family::SPGHardEdge, {{"alpha", alpha}, {"t", t}, {"s", s}});
}

std::string WeightSpec::paramString(const std::string& name) const {
  for (const auto& [k, v] : params_)
    if (k == name) return v;
  throw std::invalid_argument("weight has no parameter '" + name + "'");
}

Real WeightSpec::param(const std::string& name) const { return Real(paramString(name)); }

void WeightSpec::validate() const {
  // parse all parameters once (throws on garbage)
  for (const auto& [k, v] : params_) (void)Real(v);
  switch (family_) {
    case Family::SPG:
      if (!(param("alpha") > 0)) throw std::invalid_argument("spg: alpha > 0 required");
      if (!(param("t") > 0)) throw std::invalid_argument("spg: t > 0 required");
      break;
    case Family::DF:
      if (!(param("alpha") > 0)) throw std::invalid_argument("df: alpha > 0 required");
      break;  // t in R accepted; t <= 0 flagged in paperDomainWarnings
    case Family::GJ: {
      Real A = param("A"), B = param("B");
      if (A < 0) throw std::invalid_argument("gj: A >= 0 required");
      if (A + B < 0) throw std::invalid_argument("gj: A + B >= 0 required");
      break;
    }
    case Family::JC: {
      if (!(param("alpha") > 0)) throw std::invalid_argument("jc: alpha > 0 required");
      Real a = param("a");
      if (!(a > 0) || !(a < 1)) throw std::invalid_argument("jc: a in (0,1) required");
      break;
    }
    case Family::SPGHardEdge:
      if (!(param("alpha") > 0)) throw std::invalid_argument("spg-hard-edge: alpha > 0 required");
      if (param("t") < 0) throw std::invalid_argument("spg-hard-edge: t >= 0 required");
      if (param("s") < 0) throw std::invalid_argument("spg-hard-edge: s >= 0 required");
      break;
  }
}

bool WeightSpec::isEven() const {
  return family_ == Family::SPG || family_ == Family::DF || family_ == Family::JC ||
         family_ == Family::SPGHardEdge;
}

bool WeightSpec::inSupport(const Real& x) const {
  switch (family_) {
    case Family::SPG:
    case Family::DF:
      return !x.isZero();
    case Family::GJ:
      return true;
    case Family::JC: {
      Real ax = abs(x);
      return ax >= param("a") && ax <= Real(1L);
    }
    case Family::SPGHardEdge: {
      Real s = param("s");
      if (s.isZero()) return !x.isZero();
      return x * x >= s;
    }
  }
  return false;
}

Real WeightSpec::evaluate(const Real& x, const PrecisionContext& ctx) const {
  PrecisionScope scope(ctx);
  switch (family_) {
    case Family::SPG: {
      if (x.isZero()) return Real(0L);  // exp(-t/x^2) -> 0 dominates
      Real ax = abs(x);
      return pow(ax, param("alpha")) * exp(-x * x - param("t") / (x * x));
    }
    case Family::DF: {
      Real alpha = param("alpha");
      if (x.isZero()) return Real(0L);  // alpha > 0
      return pow(abs(x), alpha) * exp(-pow(x, 4) + param("t") * x * x);
    }
    case Family::GJ: {
      // theta(0) = 0 convention: the jump takes the left value at x = t
      Real A = param("A"), B = param("B");
      Real amp = (x > param("t")) ? A + B : A;
      return amp * exp(-x * x);
    }
    case Family::JC: {
      if (!inSupport(x)) return Real(0L);
      return pow(1 - x * x, param("alpha"));
    }
    case Family::SPGHardEdge: {
      if (!inSupport(x) || x.isZero()) return Real(0L);
      return pow(abs(x), param("alpha")) * exp(-x * x - param("t") / (x * x));
    }
  }
  throw std::logic_error("evaluate: bad family");
}

Real WeightSpec::potential(const Real& x, const PrecisionContext& ctx) const {
  PrecisionScope scope(ctx);
  Real w = evaluate(x, ctx);
  if (w.isZero() || w < 0) throw std::domain_error("potential: w(x) = 0 at x = " + x.str(20));
  switch (family_) {
    case Family::SPG:
      return x * x + param("t") / (x * x) - param("alpha") * log(abs(x));
    case Family::DF:
      return pow(x, 4) - param("t") * x * x - param("alpha") * log(abs(x));
    case Family::GJ: {
      Real amp = (x > param("t")) ? param("A") + param("B") : param("A");
      return x * x - log(amp);
    }
    case Family::JC:
      return -param("alpha") * log(1 - x * x);
    case Family::SPGHardEdge:
      return x * x + param("t") / (x * x) - param("alpha") * log(abs(x));
  }
  throw std::logic_error("potential: bad family");
}

std::vector<std::string> WeightSpec::paperDomainWarnings() const {
  std::vector<std::string> notes;
  if (family_ == Family::DF && param("t") <= 0) {
    notes.push_back("df: t <= 0 is outside the stated domain t > 0 (accepted; the "
                    "cited literature allows t in R)");
  }
  return notes;
}

nlohmann::json WeightSpec::toJson() const {
  nlohmann::json p;
  for (const auto& [k, v] : params_) p[k] = v;
  return nlohmann::json{{"family", familyName(family_)}, {"params", p}};
}

WeightSpec WeightSpec::fromJson(const nlohmann::json& j) {
  Family f = familyFromName(j.at("family").get<std::string>());
  const auto& p = j.at("params");
  auto get = [&](const char* k) {
    const auto& v = p.at(k);
    return v.is_string() ? v.get<std::string>() : nlohmann::to_string(v);
  };
  switch (f) {
    case Family::SPG: return spg(get("alpha"), get("t"));
    case Family::DF: return df(get("alpha"), get("t"));
    case Family::GJ: return gj(get("A"), get("B"), get("t"));
    case Family::JC: return jc(get("alpha"), get("a"));
    case Family::SPGHardEdge: return spgHardEdge(get("alpha"), get("t"), get("s"));
  }
  throw std::logic_error("fromJson: bad family");
}

std::string WeightSpec::describe() const {
  std::string s = familyName(family_) + "{";
  bool first = true;
  for (const auto& [k, v] : params_) {
    if (!first) s += ", ";
    s += k + "=" + v;
    first = false;
  }
  return s + "}";
}

}  // namespace opchain::weights
