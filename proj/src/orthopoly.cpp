#include "opchain/orthopoly.hpp"

#include <sstream>

namespace opchain::orthopoly {

RecurrenceTable buildRecurrenceFromMoments(const std::vector<Real>& mu, int nMax,
                                           const PrecisionContext& ctx) {
  if (nMax < 0) throw std::domain_error("buildRecurrence: nMax >= 0");
  const size_t need = static_cast<size_t>(2 * nMax + 1);
  if (mu.size() < need)
    throw std::domain_error("buildRecurrence: need mu_0..mu_{2 nMax}");
  PrecisionScope scope(ctx);
  const int N = nMax + 1;

  // M = L D L^T, L unit lower triangular; d_j are the norms h_j
  std::vector<std::vector<Real>> L(N, std::vector<Real>(N, Real(0L)));
  std::vector<Real> d(N, Real(0L));
  for (int j = 0; j < N; ++j) {
    Real s = mu[2 * j];
    for (int k = 0; k < j; ++k) s -= L[j][k] * L[j][k] * d[k];
    if (!(s > 0)) {
      throw PositivityError(
          "Hankel pivot h_" + std::to_string(j) + " is not positive (precision exhausted "
          "or invalid moments); value " + s.str(10), j);
    }
    d[j] = s;
    L[j][j] = Real(1L);
    for (int i = j + 1; i < N; ++i) {
      Real v = mu[i + j];
      for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * d[k];
      L[i][j] = v / d[j];
    }
  }

  // monic coefficient rows: C = L^{-1}
  std::vector<std::vector<Real>> C(N);
  for (int i = 0; i < N; ++i) {
    C[i].assign(i + 1, Real(0L));
    C[i][i] = Real(1L);
    for (int j = i - 1; j >= 0; --j) {
      Real s(0L);
      for (int k = j; k < i; ++k) s += L[i][k] * C[k][j];
      C[i][j] = -s;
    }
  }

  RecurrenceTable t;
  t.nMax = nMax;
  t.precision = ctx;
  t.h = d;
  t.D.assign(nMax + 2, Real(1L));
  for (int n = 1; n <= nMax + 1; ++n) t.D[n] = t.D[n - 1] * d[n - 1];
  t.beta.assign(nMax + 1, Real(0L));
  for (int n = 1; n <= nMax; ++n) t.beta[n] = d[n] / d[n - 1];
  t.alpha.assign(std::max(0, nMax), Real(0L));
  for (int n = 0; n + 1 <= nMax; ++n) {
    Real cn = (n >= 1) ? C[n][n - 1] : Real(0L);
    Real cn1 = C[n + 1][n];
    t.alpha[n] = cn - cn1;
  }
  t.polyCoeffs = std::move(C);
  return t;
}

RecurrenceTable buildRecurrence(const moments::MomentTable& m, int nMax,
                                const PrecisionContext& ctx) {
  if (2 * nMax > m.maxIndex())
    throw std::domain_error("buildRecurrence: moment table too short for nMax");
  return buildRecurrenceFromMoments(m.entries, nMax, ctx);
}

std::vector<Real> hankelDeterminants(const std::vector<Real>& mu, int count,
                                     const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int N = count;
  if (static_cast<size_t>(2 * N - 1) > mu.size())
    throw std::domain_error("hankelDeterminants: need mu_0..mu_{2(count-1)}");
  std::vector<std::vector<Real>> a(N, std::vector<Real>(N, Real(0L)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a[i][j] = mu[i + j];
  // LU without pivoting; the running product of pivots after stage k is the
  // k-th leading principal minor
  std::vector<Real> minors(N, Real(0L));
  Real prod(1L);
  for (int k = 0; k < N; ++k) {
    prod *= a[k][k];
    minors[k] = prod;
    for (int i = k + 1; i < N; ++i) {
      Real f = a[i][k] / a[k][k];
      for (int j = k; j < N; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return minors;  // minors[k] = D_{k+1}
}

PolyEval evalPoly(const RecurrenceTable& table, int n, const Real& x) {
  if (n < 0 || n > table.nMax) throw std::domain_error("evalPoly: n out of range");
  const auto& c = table.polyCoeffs[n];
  Real p(0L), dp(0L), d2p(0L);
  for (int j = n; j >= 0; --j) {
    d2p = d2p * x + 2 * dp;
    dp = dp * x + p;
    p = p * x + c[j];
  }
  return {p, dp, d2p};
}

Real orthogonalityResidual(const RecurrenceTable& table, const moments::MomentTable& m,
                           int i, int j) {
  if (i > table.nMax || j > table.nMax)
    throw std::domain_error("orthogonalityResidual: index out of range");
  const auto& ci = table.polyCoeffs[i];
  const auto& cj = table.polyCoeffs[j];
  Real bilinear(0L);
  for (int a = 0; a <= i; ++a) {
    Real row(0L);
    for (int b = 0; b <= j; ++b) row += cj[b] * m.mu(a + b);
    bilinear += ci[a] * row;
  }
  Real expected = (i == j) ? table.h[i] : Real(0L);
  return abs(bilinear - expected) / sqrt(table.h[i] * table.h[j]);
}

nlohmann::json RecurrenceTable::toJson() const {
  auto vec = [](const std::vector<Real>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : v) arr.push_back(x.str());
    return arr;
  };
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& row : polyCoeffs) coeffs.push_back(vec(row));
  return {{"nMax", nMax}, {"digits", precision.digits}, {"guard", precision.guard},
          {"h", vec(h)},  {"D", vec(D)},  {"alpha", vec(alpha)},
          {"beta", vec(beta)}, {"polyCoeffs", coeffs}};
}

std::string RecurrenceTable::toCsv() const {
  std::ostringstream os;
  os << "n,h,D,alpha,beta\n";
  for (int n = 0; n <= nMax; ++n) {
    os << n << "," << h[n].str() << "," << D[n].str() << ","
       << (n < static_cast<int>(alpha.size()) ? alpha[n].str() : "") << ","
       << beta[n].str() << "\n";
  }
  return os.str();
}

}  // namespace opchain::orthopoly
