#include "leadlag/crosscorr.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "leadlag/errors.hpp"
#include "leadlag/stats.hpp"

namespace leadlag {

namespace {

// Intersection of a query series with an arbitrary dated value sequence.
// No minimum size here; callers decide what "too few" means.
AlignedPair intersect_values(const DailySeries& q,
                             std::span<const TradingDate> dates,
                             std::span<const double> values) {
  AlignedPair out;
  out.entity_id = q.entity_id;
  std::size_t iq = 0;
  for (std::size_t i = 0; i < dates.size(); ++i) {
    while (iq < q.size() && q.dates[iq] < dates[i]) ++iq;
    if (iq == q.size()) break;
    if (q.dates[iq] == dates[i]) {
      out.dates.push_back(dates[i]);
      out.q.push_back(q.values[iq]);
      out.t.push_back(values[i]);
      ++iq;
    }
  }
  return out;
}

}  // namespace

double CcfResult::at(int lag) const {
  if (lag < -max_lag || lag > max_lag)
    throw InvalidArgument("ccf lag " + std::to_string(lag) +
                          " outside +-" + std::to_string(max_lag));
  return r[static_cast<std::size_t>(lag + max_lag)];
}

int CcfResult::argmax_lag() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[best]) best = i;
  return lags[best];
}

CcfResult ccf(const AlignedPair& pair, int max_lag) {
  if (max_lag < 0) throw InvalidArgument("ccf: negative max_lag");
  const std::size_t n = pair.size();
  if (n < 2 * static_cast<std::size_t>(max_lag) + 2)
    throw SeriesTooShort("ccf: need at least " +
                         std::to_string(2 * max_lag + 2) + " rows, have " +
                         std::to_string(n));
  CcfResult out;
  out.entity_id = pair.entity_id;
  out.max_lag = max_lag;
  const std::span<const double> q{pair.q};
  const std::span<const double> t{pair.t};
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    const std::size_t w = n - static_cast<std::size_t>(std::abs(lag));
    // lag >= 0 pairs q today with t lag days later; the two windows are
    // the leading part of one side and the trailing part of the other.
    const auto qs = lag >= 0 ? q.first(w) : q.last(w);
    const auto ts = lag >= 0 ? t.last(w) : t.first(w);
    double r;
    try {
      r = pearson(qs, ts);
    } catch (const ZeroVariance& e) {
      throw ZeroVariance("ccf at lag " + std::to_string(lag) + ": " +
                         e.what());
    }
    out.lags.push_back(lag);
    out.r.push_back(r);
    out.n_overlap.push_back(w);
  }
  return out;
}

CcfTable ccf_average(std::vector<CcfResult> results) {
  if (results.empty()) throw TooFewEntities("ccf_average: no results");
  const int max_lag = results.front().max_lag;
  for (const auto& r : results)
    if (r.max_lag != max_lag)
      throw InvalidArgument("ccf_average: mixed lag ranges");
  CcfTable table;
  table.max_lag = max_lag;
  table.lags = results.front().lags;
  table.mean_r.assign(table.lags.size(), 0.0);
  for (const auto& r : results)
    for (std::size_t i = 0; i < r.r.size(); ++i) table.mean_r[i] += r.r[i];
  for (double& v : table.mean_r) v /= static_cast<double>(results.size());
  std::sort(results.begin(), results.end(),
            [](const CcfResult& a, const CcfResult& b) {
              return a.entity_id < b.entity_id;
            });
  table.per_entity = std::move(results);
  return table;
}

double ccf_after_drop(const AlignedPair& pair, std::size_t k) {
  const AlignedPair reduced = drop_top_k(pair, k);
  return pearson(reduced.q, reduced.t);
}

CcfResult ccf_vs_volatility(const DailySeries& query,
                            const DailySeries& closes, int max_lag) {
  const VolatilityProxies proxies = volatility_proxies(price_returns(closes));
  AlignedPair pair = intersect_values(query, proxies.abs_returns.dates,
                                      proxies.abs_returns.values);
  if (pair.size() < 2)
    throw EmptyIntersection("ccf_vs_volatility: fewer than 2 shared dates");
  pair.entity_id = closes.entity_id;
  return ccf(pair, max_lag);
}

SignedReturnCorr signed_return_corr(const DailySeries& query,
                                    const DailySeries& closes) {
  const VolatilityProxies proxies = volatility_proxies(price_returns(closes));
  auto branch = [&](const ReturnSeries& side, const char* name,
                    double& r_out, std::size_t& n_out) {
    const AlignedPair pair =
        intersect_values(query, side.dates, side.values);
    if (pair.size() < 2)
      throw TooFewPoints(std::string("signed_return_corr: ") + name +
                         " branch has fewer than 2 matching days");
    r_out = pearson(pair.q, pair.t);
    n_out = pair.size();
  };
  SignedReturnCorr out;
  branch(proxies.abs_returns, "absolute", out.r_abs, out.n_abs);
  branch(proxies.positive, "positive", out.r_positive, out.n_positive);
  branch(proxies.negative, "negative", out.r_negative, out.n_negative);
  return out;
}

}  // namespace leadlag
