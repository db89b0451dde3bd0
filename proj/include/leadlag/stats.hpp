#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace leadlag {

// Statistical kernels shared by every analysis in the toolkit. All of them
// operate on plain double sequences and throw on degenerate input rather
// than returning NaN.

// Sample Pearson correlation. Both inputs must have the same length of at
// least two and nonzero variance, otherwise ZeroVariance is thrown.
double pearson(std::span<const double> x, std::span<const double> y);

struct OlsFit {
  std::vector<double> coef;  // intercept first when one is fitted
  double rss = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
};

// Ordinary least squares of y on the given columns, optionally with an
// intercept. Solves the normal equations by a diagonally pivoted Cholesky
// factorization; a pivot below 1e-10 times the largest initial diagonal
// raises RankDeficient. Designed for the small regressions used here
// (a handful of columns), not for large or ill-conditioned systems.
OlsFit ols(std::span<const double> y,
           const std::vector<std::vector<double>>& cols,
           bool intercept = true);

// Standard normal CDF, accurate to about 1e-15 absolute.
double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// evaluated with the Lentz continued fraction, switching to the symmetric
// expansion when x is past the distribution bulk.
double incomplete_beta(double a, double b, double x);

// CDF of the F distribution with d1 and d2 degrees of freedom.
double f_cdf(double x, int d1, int d2);

// Midranks of a sample: tied values share the average of the rank range
// they occupy. tie_groups records the size of every group of two or more
// equal values, which the Mann-Whitney variance correction needs.
struct RankedSample {
  std::vector<double> ranks;            // 1-based, sums to n(n+1)/2
  std::vector<std::size_t> tie_groups;
};

RankedSample midranks(std::span<const double> values);

enum class TailAlternative { Less, Greater };

// One sided Mann-Whitney U test via the normal approximation with midranks,
// tie corrected variance and a 0.5 continuity correction. `u` is the U
// statistic of the first sample; TailAlternative::Less tests whether the
// first sample is stochastically smaller than the second. When every pooled
// value is tied the variance vanishes and p is reported as 0.5.
struct MannWhitneyResult {
  double u = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b,
                                 TailAlternative alternative);

}  // namespace leadlag
