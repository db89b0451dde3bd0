#include <doctest.h>

#include <cmath>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/rng.hpp"
#include "leadlag/stats.hpp"
#include "oracles.hpp"

using namespace leadlag;

TEST_CASE("pearson on a worked example") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 3, 2, 4};
  CHECK(pearson(x, y) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> neg{4, 3, 2, 1};
  CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson agrees with the two pass oracle") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 5 + rng.next_index(200);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.next_gaussian() * 3.0 + 1.0;
      y[i] = 0.4 * x[i] + rng.next_gaussian();
    }
    const double got = pearson(x, y);
    CHECK(got == doctest::Approx(oracle::pearson(x, y)).epsilon(1e-12));
    CHECK(std::abs(got) <= 1.0 + 1e-12);
  }
}

TEST_CASE("pearson rejects degenerate input") {
  const std::vector<double> flat{2, 2, 2, 2};
  const std::vector<double> x{1, 2, 3, 4};
  CHECK_THROWS_AS(pearson(flat, x), ZeroVariance);
  CHECK_THROWS_AS(pearson(x, flat), ZeroVariance);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), InvalidArgument);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(pearson(x, three), InvalidArgument);
}

TEST_CASE("ols on a worked example") {
  const std::vector<double> y{1, 2, 2, 4};
  const std::vector<std::vector<double>> cols{{0, 1, 2, 3}};
  const OlsFit fit = ols(y, cols, true);
  REQUIRE(fit.coef.size() == 2);
  CHECK(fit.coef[0] == doctest::Approx(0.9).epsilon(1e-12));  // intercept
  CHECK(fit.coef[1] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(fit.rss == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.n_obs == 4);
  CHECK(fit.n_params == 2);
}

TEST_CASE("ols matches the closed form line fit") {
  Rng rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 4 + rng.next_index(100);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.next_gaussian();
      y[i] = 2.0 - 0.7 * x[i] + 0.3 * rng.next_gaussian();
    }
    const OlsFit fit = ols(y, {x}, true);
    const oracle::Line line = oracle::fit_line(x, y);
    CHECK(fit.coef[0] == doctest::Approx(line.intercept).epsilon(1e-9));
    CHECK(fit.coef[1] == doctest::Approx(line.slope).epsilon(1e-9));
    CHECK(fit.rss == doctest::Approx(line.rss).epsilon(1e-9));
  }
}

TEST_CASE("ols with several columns behaves like a projection") {
  Rng rng(13);
  const std::size_t n = 60;
  std::vector<double> y(n), a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.next_gaussian();
    b[i] = rng.next_gaussian();
    c[i] = rng.next_gaussian();
    y[i] = 1.0 + a[i] - 2.0 * b[i] + 0.5 * rng.next_gaussian();
  }
  const double rss_small = ols(y, {a, b}, true).rss;
  const double rss_big = ols(y, {a, b, c}, true).rss;
  CHECK(rss_big <= rss_small + 1e-9);  // extra regressors never hurt

  // Column order must not matter beyond coefficient placement.
  const OlsFit fit1 = ols(y, {a, b, c}, true);
  const OlsFit fit2 = ols(y, {c, b, a}, true);
  CHECK(fit1.rss == doctest::Approx(fit2.rss).epsilon(1e-9));
  CHECK(fit1.coef[1] == doctest::Approx(fit2.coef[3]).epsilon(1e-9));

  // Regressing y on itself leaves nothing unexplained.
  CHECK(ols(y, {y}, true).rss == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("ols flags rank deficient designs") {
  const std::vector<double> y{1, 2, 3, 4, 5};
  const std::vector<double> a{1, 0, 2, 1, 3};
  CHECK_THROWS_AS(ols(y, {a, a}, true), RankDeficient);
  const std::vector<double> flat{3, 3, 3, 3, 3};
  CHECK_THROWS_AS(ols(y, {flat}, true), RankDeficient);  // collinear with 1
  std::vector<double> twice(a);
  for (double& v : twice) v *= 2.0;
  CHECK_THROWS_AS(ols(y, {a, twice}, true), RankDeficient);
}

TEST_CASE("f_cdf has the closed form at two by two degrees of freedom") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 7.5, 40.0}) {
    CHECK(f_cdf(x, 2, 2) == doctest::Approx(x / (1.0 + x)).epsilon(1e-12));
  }
  CHECK(f_cdf(0.0, 3, 8) == 0.0);
  CHECK(f_cdf(-1.0, 3, 8) == 0.0);
}

TEST_CASE("f_cdf agrees with numerical quadrature") {
  const int dfs[] = {1, 2, 3, 5, 10, 30, 120};
  const double xs[] = {0.05, 0.3, 0.8, 1.0, 1.7, 3.2, 9.0};
  for (int d1 : dfs)
    for (int d2 : dfs)
      for (double x : xs) {
        const double got = f_cdf(x, d1, d2);
        const double want = oracle::f_cdf(x, d1, d2);
        CHECK(std::abs(got - want) < 1e-10);
      }
}

TEST_CASE("incomplete beta respects its symmetry") {
  Rng rng(14);
  for (int rep = 0; rep < 40; ++rep) {
    const double a = 0.5 + 10.0 * rng.next_double();
    const double b = 0.5 + 10.0 * rng.next_double();
    const double x = rng.next_double();
    const double direct = incomplete_beta(a, b, x);
    const double mirrored = 1.0 - incomplete_beta(b, a, 1.0 - x);
    CHECK(direct == doctest::Approx(mirrored).epsilon(1e-10));
    CHECK(direct >= 0.0);
    CHECK(direct <= 1.0);
  }
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK(incomplete_beta(1.0, 1.0, 0.25) == doctest::Approx(0.25));
}

TEST_CASE("normal_cdf hits textbook values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-6));
  CHECK(normal_cdf(-1.96) == doctest::Approx(0.0249979).epsilon(1e-6));
  for (double z : {-3.0, -1.0, -0.2, 0.7, 2.5}) {
    CHECK(normal_cdf(z) + normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(normal_cdf(z) - oracle::normal_cdf(z)) < 1e-12);
  }
}

TEST_CASE("midranks on worked examples") {
  {
    const std::vector<double> v{5, 5};
    const RankedSample r = midranks(v);
    CHECK(r.ranks == std::vector<double>{1.5, 1.5});
    REQUIRE(r.tie_groups.size() == 1);
    CHECK(r.tie_groups[0] == 2);
  }
  {
    const std::vector<double> v{3, 1, 2};
    const RankedSample r = midranks(v);
    CHECK(r.ranks == std::vector<double>{3, 1, 2});
    CHECK(r.tie_groups.empty());
  }
  {
    const std::vector<double> v{2, 1, 2, 2, 1};
    const RankedSample r = midranks(v);
    // Two ones share ranks 1..2, three twos share ranks 3..5.
    CHECK(r.ranks == std::vector<double>{4, 1.5, 4, 4, 1.5});
    REQUIRE(r.tie_groups.size() == 2);
  }
}

TEST_CASE("midranks agree with the oracle and sum correctly") {
  Rng rng(15);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng.next_index(60);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng.next_index(8));
    const RankedSample r = midranks(v);
    const std::vector<double> want = oracle::midranks(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r.ranks[i] == doctest::Approx(want[i]).epsilon(1e-12));
      sum += r.ranks[i];
    }
    CHECK(sum == doctest::Approx(n * (n + 1) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("mann whitney u matches the pair counting oracle") {
  Rng rng(16);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n1 = 3 + rng.next_index(40);
    const std::size_t n2 = 3 + rng.next_index(40);
    std::vector<double> a(n1), b(n2);
    for (double& x : a) x = static_cast<double>(rng.next_index(10));
    for (double& x : b) x = static_cast<double>(rng.next_index(10)) + 0.5;
    const MannWhitneyResult res = mann_whitney_u(a, b, TailAlternative::Less);
    CHECK(res.u ==
          doctest::Approx(oracle::mann_whitney_u_count(a, b)).epsilon(1e-9));
    CHECK(res.p_value >= 0.0);
    CHECK(res.p_value <= 1.0);
  }
}

TEST_CASE("mann whitney detects an obvious shift") {
  std::vector<double> low, high;
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    low.push_back(rng.next_gaussian());
    high.push_back(rng.next_gaussian() + 3.0);
  }
  CHECK(mann_whitney_u(low, high, TailAlternative::Less).p_value < 1e-6);
  CHECK(mann_whitney_u(low, high, TailAlternative::Greater).p_value > 0.999);
  CHECK(mann_whitney_u(high, low, TailAlternative::Less).p_value > 0.999);
}

TEST_CASE("mann whitney reports one half when every value ties") {
  const std::vector<double> a{1, 1, 1, 1};
  const std::vector<double> b{1, 1, 1};
  const MannWhitneyResult res = mann_whitney_u(a, b, TailAlternative::Less);
  CHECK(res.p_value == 0.5);
}
