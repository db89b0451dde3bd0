#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/rng.hpp"
#include "leadlag/series.hpp"

namespace leadlag {

// Bootstrap model comparison tests that ask whether the query side carries
// predictive information about the trade side beyond plain autoregression,
// and in which direction the information flows.
//
// All three tests work on lag-1 regression frames built from an aligned
// pair. Four models recur:
//   M1: t_now ~ 1 + t_prev              M2: t_now ~ 1 + t_prev + q_prev
//   M3: q_now ~ 1 + q_prev              M4: q_now ~ 1 + t_prev + q_prev
// Bootstrap resampling is by whole rows (case resampling), so the coupling
// between a response and its lagged regressors is never broken.

struct RegressionFrame {
  std::vector<double> y;
  std::vector<std::vector<double>> cols;  // intercept added at fit time

  std::size_t rows() const { return y.size(); }
};

// Rows 1..n-1 of the pair: response[i] against response[i-1], other[i-1].
RegressionFrame lag1_frame(std::span<const double> response,
                           std::span<const double> other);

// Draws rows() indices with replacement and copies whole rows.
RegressionFrame resample_rows(const RegressionFrame& frame, Rng& rng);

// Test 1: how much does adding the cross term reduce the residual sum of
// squares, and is that reduction larger than bootstrap reductions in the
// opposite direction? delta_*_raw is RSS(restricted) - RSS(unrestricted)
// on the real rows; delta_* divides by the row count so frames of
// different effective length stay comparable. p_qt ranks the q-to-t
// reduction against n_boot bootstrap reductions of the t-to-q direction
// (and vice versa); the smallest attainable p is 1 / (n_boot + 1).
struct Test1Result {
  double delta_qt = 0.0;
  double delta_tq = 0.0;
  double delta_qt_raw = 0.0;
  double delta_tq_raw = 0.0;
  double p_qt = 1.0;
  double p_tq = 1.0;
  std::size_t redraws = 0;  // bootstrap draws rejected as rank deficient
};

Test1Result anticipation_test1(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng);

enum class Verdict { QtoT, TtoQ, Inconclusive };

std::string_view to_string(Verdict verdict);

// Test 2: fit the two single-regressor cross models on standardized series,
//   q -> t model: t_now ~ 1 + q_prev   (residual rss_qt)
//   t -> q model: q_now ~ 1 + t_prev   (residual rss_tq)
// and bootstrap each model's RSS n_boot times. A direction wins when the
// opposing model's real residual lies at or above the winning model's 95th
// bootstrap percentile, and the reverse comparison does not also hold.
// Both series are standardized first so the residuals share a scale.
struct Test2Result {
  double rss_qt = 0.0;
  double rss_tq = 0.0;
  double pct95_qt = 0.0;  // 95th percentile of bootstrap RSS, q -> t model
  double pct95_tq = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

Test2Result anticipation_test2(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng);

// Test 3: bootstrap n_boot paired RSS values for the nested model pairs
// (M1, M2) and (M3, M4), then ask with a one sided Mann-Whitney test
// whether the unrestricted sample is stochastically smaller. p values are
// clamped to [1 / (n_boot + 1), 1].
struct Test3Result {
  double u_qt = 0.0;
  double u_tq = 0.0;
  double p_qt = 1.0;
  double p_tq = 1.0;
};

Test3Result anticipation_test3(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng);

struct AnticipationConfig {
  std::size_t n_boot_test1 = 9999;
  std::size_t n_boot_test2 = 1000;
  std::size_t n_boot_test3 = 9999;
};

struct AnticipationReport {
  std::string entity_id;
  Test1Result test1;
  Test2Result test2;
  Test3Result test3;
  AnticipationConfig config;
  std::uint64_t seed = 0;
};

// Runs all three tests with per-test random streams derived from
// (master_seed, entity_id), so reports do not depend on evaluation order.
AnticipationReport run_anticipation_tests(const AlignedPair& pair,
                                          const AnticipationConfig& config,
                                          std::uint64_t master_seed);

}  // namespace leadlag
