#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leadlag/series.hpp"

namespace leadlag {

enum class Direction { QtoT, TtoQ };

std::string_view to_string(Direction direction);

// Granger causality F test at a fixed lag order p. The restricted model
// regresses the response on an intercept and its own p lags; the
// unrestricted model adds the p lags of the other series. The first p rows
// have no full lag history and are dropped, leaving n_eff = n - p usable
// rows. F = ((RSS_r - RSS_u) / p) / (RSS_u / (n_eff - 2p - 1)).
struct GrangerResult {
  std::string entity_id;
  Direction direction = Direction::QtoT;
  int lag_order = 1;
  std::size_t n_eff = 0;
  double f_stat = 0.0;
  double p_value = 1.0;
  double rss_restricted = 0.0;
  double rss_unrestricted = 0.0;
  double rss_reduction = 0.0;  // (rss_r - rss_u) / rss_r
};

// Direction::QtoT asks whether lagged q improves the prediction of t.
// Requires n_eff - 2p - 1 >= 1; throws SeriesTooShort otherwise.
GrangerResult granger_test(const AlignedPair& pair, Direction direction,
                           int lag_order = 1);

// Both directions for every entity plus rejection rate aggregates.
// Percentages are over the entities whose test ran; entities that fail
// (rank deficient regressors, constant windows) are listed with a reason.
struct GrangerSummary {
  struct Side {
    std::size_t n = 0;
    double pct_p_lt_05 = 0.0;  // percent of entities with p < 0.05
    double pct_p_lt_01 = 0.0;
    double mean_rss_reduction = 0.0;
  };

  int lag_order = 1;
  Side q_to_t;
  Side t_to_q;
  std::vector<GrangerResult> results;  // sorted by (entity, direction)
  std::vector<std::pair<std::string, std::string>> failures;
};

GrangerSummary granger_batch(const std::vector<AlignedPair>& pairs,
                             int lag_order = 1, unsigned workers = 1);

}  // namespace leadlag
