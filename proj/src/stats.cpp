#include "leadlag/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "leadlag/errors.hpp"

namespace leadlag {

namespace {

constexpr double kRankTolerance = 1e-10;

// Continued fraction for the incomplete beta, modified Lentz iteration.
// Converges quickly when x < (a + 1) / (a + b + 2); the caller flips to the
// symmetric case otherwise.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 3e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw InvalidArgument("pearson: length mismatch");
  if (x.size() < 2) throw InvalidArgument("pearson: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ZeroVariance("pearson: constant input series");
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

OlsFit ols(std::span<const double> y,
           const std::vector<std::vector<double>>& cols, bool intercept) {
  const std::size_t n = y.size();
  if (n == 0) throw InvalidArgument("ols: empty response");
  for (const auto& c : cols)
    if (c.size() != n) throw InvalidArgument("ols: column length mismatch");
  const std::size_t k = cols.size() + (intercept ? 1 : 0);
  if (k == 0) throw InvalidArgument("ols: no regressors");
  if (n < k) throw RankDeficient("ols: more parameters than observations");

  // Column access with the intercept as a virtual first column.
  auto col_at = [&](std::size_t j, std::size_t i) -> double {
    if (intercept) return j == 0 ? 1.0 : cols[j - 1][i];
    return cols[j][i];
  };

  // Normal equations g = X'X, rhs = X'y.
  std::vector<double> g(k * k, 0.0), rhs(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j; l < k; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += col_at(j, i) * col_at(l, i);
      g[j * k + l] = s;
      g[l * k + j] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += col_at(j, i) * y[i];
    rhs[j] = s;
  }

  // Cholesky with diagonal pivoting. Pivots are compared against the
  // largest initial diagonal entry; falling below the relative tolerance
  // means the columns are (numerically) linearly dependent.
  double max_diag = 0.0;
  for (std::size_t j = 0; j < k; ++j) max_diag = std::max(max_diag, g[j * k + j]);
  if (!(max_diag > 0.0)) throw RankDeficient("ols: all-zero regressors");
  const double tol = kRankTolerance * max_diag;

  std::vector<std::size_t> piv(k);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  std::vector<double> low(k * k, 0.0);  // row j holds the factor row for piv[j]
  std::vector<double> diag(k);
  for (std::size_t j = 0; j < k; ++j) diag[j] = g[j * k + j];

  for (std::size_t j = 0; j < k; ++j) {
    std::size_t best = j;
    for (std::size_t i = j + 1; i < k; ++i)
      if (diag[piv[i]] > diag[piv[best]]) best = i;
    std::swap(piv[j], piv[best]);
    std::swap_ranges(low.begin() + j * k, low.begin() + j * k + j,
                     low.begin() + best * k);
    const double djj = diag[piv[j]];
    if (!(djj > tol)) throw RankDeficient("ols: rank deficient design");
    const double ljj = std::sqrt(djj);
    low[j * k + j] = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = g[piv[i] * k + piv[j]];
      for (std::size_t l = 0; l < j; ++l) s -= low[i * k + l] * low[j * k + l];
      const double lij = s / ljj;
      low[i * k + j] = lij;
      diag[piv[i]] -= lij * lij;
    }
  }

  // Solve L z = P rhs, then L' w = z, then undo the permutation.
  std::vector<double> z(k);
  for (std::size_t j = 0; j < k; ++j) {
    double s = rhs[piv[j]];
    for (std::size_t l = 0; l < j; ++l) s -= low[j * k + l] * z[l];
    z[j] = s / low[j * k + j];
  }
  std::vector<double> w(k);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = z[jj];
    for (std::size_t l = jj + 1; l < k; ++l) s -= low[l * k + jj] * w[l];
    w[jj] = s / low[jj * k + jj];
  }
  OlsFit fit;
  fit.coef.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) fit.coef[piv[j]] = w[j];
  fit.n_obs = n;
  fit.n_params = k;

  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < k; ++j) fitted += fit.coef[j] * col_at(j, i);
    const double e = y[i] - fitted;
    rss += e * e;
  }
  fit.rss = rss;
  return fit;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2_v<double>);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InvalidArgument("incomplete_beta: a and b must be positive");
  if (std::isnan(x) || x < 0.0 || x > 1.0)
    throw InvalidArgument("incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double x, int d1, int d2) {
  if (d1 < 1 || d2 < 1)
    throw InvalidArgument("f_cdf: degrees of freedom must be >= 1");
  if (std::isnan(x)) throw InvalidArgument("f_cdf: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double z = d1 * x / (d1 * x + d2);
  return incomplete_beta(0.5 * d1, 0.5 * d2, z);
}

RankedSample midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw InvalidArgument("midranks: empty sample");
  for (double v : values)
    if (std::isnan(v)) throw InvalidArgument("midranks: NaN value");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return values[i] < values[j];
  });
  RankedSample out;
  out.ranks.assign(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the average of ranks i+1..j+1.
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t l = i; l <= j; ++l) out.ranks[order[l]] = shared;
    if (j > i) out.tie_groups.push_back(j - i + 1);
    i = j + 1;
  }
  return out;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b,
                                 TailAlternative alternative) {
  if (a.empty() || b.empty())
    throw InvalidArgument("mann_whitney_u: empty sample");
  const std::size_t n1 = a.size(), n2 = b.size();
  std::vector<double> pooled;
  pooled.reserve(n1 + n2);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const RankedSample ranked = midranks(pooled);

  double r1 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) r1 += ranked.ranks[i];
  MannWhitneyResult out;
  out.u = r1 - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);

  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  const double big_n = dn1 + dn2;
  double tie_term = 0.0;
  for (std::size_t t : ranked.tie_groups) {
    const double dt = static_cast<double>(t);
    tie_term += dt * dt * dt - dt;
  }
  const double variance =
      dn1 * dn2 / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
  if (variance <= 0.0) {
    // Every pooled value tied: no evidence either way.
    out.z = 0.0;
    out.p_value = 0.5;
    return out;
  }
  const double mu = 0.5 * dn1 * dn2;
  const double sd = std::sqrt(variance);
  // Continuity correction of half a step toward the tested tail.
  if (alternative == TailAlternative::Less) {
    out.z = (out.u - mu + 0.5) / sd;
    out.p_value = normal_cdf(out.z);
  } else {
    out.z = (out.u - mu - 0.5) / sd;
    out.p_value = 1.0 - normal_cdf(out.z);
  }
  return out;
}

}  // namespace leadlag
