#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leadlag/series.hpp"

namespace leadlag {

// Time lagged cross correlation between the two sides of an aligned pair.
//
// Lag convention: r(d) is the Pearson correlation of q today with t d days
// later, computed on the overlapping window only. A peak at positive d
// therefore means the query side moves first. r(-d) of (q, t) equals
// r(d) of (t, q) exactly.
struct CcfResult {
  std::string entity_id;
  int max_lag = 0;
  std::vector<int> lags;               // -max_lag .. +max_lag in order
  std::vector<double> r;
  std::vector<std::size_t> n_overlap;  // n - |lag| points per lag

  double at(int lag) const;            // throws InvalidArgument out of range
  int argmax_lag() const;              // lag with the largest r
};

// Requires n >= 2 * max_lag + 2 so every window keeps at least max_lag + 2
// points; throws SeriesTooShort otherwise and ZeroVariance (with the
// offending lag in the message) when a window is constant.
CcfResult ccf(const AlignedPair& pair, int max_lag = 5);

// Unweighted per-lag mean over entities, the cross sectional average curve.
struct CcfTable {
  int max_lag = 0;
  std::vector<int> lags;
  std::vector<double> mean_r;
  std::vector<CcfResult> per_entity;  // sorted by entity id
};

// All inputs must share the same max_lag. Throws TooFewEntities on an empty
// input and InvalidArgument on mixed lag ranges.
CcfTable ccf_average(std::vector<CcfResult> results);

// r(0) of the pair after removing the k highest trade volume days.
double ccf_after_drop(const AlignedPair& pair, std::size_t k);

// CCF of query volume against the absolute price change series.
CcfResult ccf_vs_volatility(const DailySeries& query, const DailySeries& closes,
                            int max_lag = 5);

// Same day correlation of query volume with each volatility proxy branch.
// Each branch needs at least two matching days, else TooFewPoints.
struct SignedReturnCorr {
  double r_abs = 0.0;
  double r_positive = 0.0;
  double r_negative = 0.0;
  std::size_t n_abs = 0;
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
};

SignedReturnCorr signed_return_corr(const DailySeries& query,
                                    const DailySeries& closes);

}  // namespace leadlag
