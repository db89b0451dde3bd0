#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leadlag/series.hpp"
#include "leadlag/userstats.hpp"

namespace leadlag {

enum class NoiseKind { Gaussian, StudentT };

// Bivariate lag-1 coupled autoregression with known ground truth:
//   q[i] = ar_q * q[i-1] + beta_tq * t[i-1] + market_loading * f[i] + e_q[i]
//   t[i] = ar_t * t[i-1] + beta_qt * q[i-1] + market_loading * f[i] + e_t[i]
// where f is a shared standard normal factor path and the innovations are
// sigma-scaled Gaussian or Student t draws. The first 200 steps are burned
// in. Dates are consecutive weekdays from start_date.
//
// With positive set, values are emitted as exp(x / positive_scale) so they
// satisfy the non-negativity expected of volume series; the transform is
// monotone and invertible given the config. Detector round trip tests
// normally run on the raw linear process (positive = false).
struct CoupledDgpConfig {
  std::size_t n_days = 250;
  double ar_q = 0.5;
  double ar_t = 0.5;
  double beta_qt = 0.0;  // yesterday's q into today's t
  double beta_tq = 0.0;  // yesterday's t into today's q
  NoiseKind noise = NoiseKind::Gaussian;
  double sigma = 1.0;
  double nu = 3.0;  // Student t degrees of freedom
  double market_loading = 0.0;
  bool positive = true;
  double positive_scale = 3.0;
  TradingDate start_date{2010, 1, 4};

  // Largest eigenvalue modulus of [[ar_q, beta_tq], [beta_qt, ar_t]].
  double spectral_radius() const;

  // Throws NonStationaryConfig when the spectral radius reaches 1 and
  // InvalidArgument on nonsensical fields (n_days < 2, sigma <= 0, ...).
  void validate() const;
};

AlignedPair gen_coupled_pair(const CoupledDgpConfig& cfg, std::uint64_t seed,
                             std::string entity_id = "E000");

// k independent pairs named E001..E00k that share one market factor path
// scaled by market_strength (overriding cfg.market_loading). Each entity's
// innovations come from a stream keyed by its id, so the pool is stable
// under reordering and parallel generation.
std::vector<AlignedPair> gen_entity_pool(std::size_t k,
                                         const CoupledDgpConfig& cfg,
                                         double market_strength,
                                         std::uint64_t seed);

// Positive close price path on the given dates, for fixture datasets.
DailySeries gen_close_series(std::span<const TradingDate> dates,
                             std::string entity_id, std::uint64_t seed);

// Synthetic search event log with planted user behaviour: a user searches
// one ticker with probability p_one_ticker (otherwise several), and a
// user-ticker pair is active on exactly one day with probability p_one_day
// (otherwise several days). Each user's activity falls inside one month of
// the configured range, so per month and whole range statistics agree.
struct UserLogConfig {
  std::size_t n_users = 1000;
  std::vector<std::string> tickers;
  double p_one_ticker = 0.9;
  double p_one_day = 0.9;
  int start_year = 2010;
  int start_month = 1;
  int months = 12;
};

std::vector<QueryEvent> gen_user_log(const UserLogConfig& cfg,
                                     std::uint64_t seed);

}  // namespace leadlag
