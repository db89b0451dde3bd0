#include "leadlag/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leadlag/errors.hpp"

namespace leadlag {

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::QueryVolume: return "query_volume";
    case SeriesKind::UserVolume: return "user_volume";
    case SeriesKind::TradeVolume: return "trade_volume";
    case SeriesKind::ClosePrice: return "close_price";
  }
  return "unknown";
}

DailySeries DailySeries::create(std::string entity_id, SeriesKind kind,
                                std::vector<TradingDate> dates,
                                std::vector<double> values) {
  if (dates.size() != values.size())
    throw InvalidArgument("series '" + entity_id +
                          "': dates and values differ in length");
  for (std::size_t i = 1; i < dates.size(); ++i)
    if (!(dates[i - 1] < dates[i]))
      throw InvalidArgument("series '" + entity_id +
                            "': dates must be strictly increasing");
  for (double v : values) {
    if (!std::isfinite(v))
      throw InvalidArgument("series '" + entity_id + "': non-finite value");
    if (v < 0.0)
      throw NegativeValue("series '" + entity_id + "': negative value");
  }
  DailySeries out;
  out.entity_id = std::move(entity_id);
  out.kind = kind;
  out.dates = std::move(dates);
  out.values = std::move(values);
  return out;
}

AlignResult align(const DailySeries& q, const DailySeries& t) {
  AlignResult out;
  AlignedPair& pair = out.pair;
  pair.entity_id = q.entity_id == t.entity_id
                       ? q.entity_id
                       : q.entity_id + "/" + t.entity_id;
  // Both date vectors are strictly increasing, so one forward sweep finds
  // the intersection. The t side dictates which days survive.
  std::size_t iq = 0;
  for (std::size_t it = 0; it < t.size(); ++it) {
    while (iq < q.size() && q.dates[iq] < t.dates[it]) ++iq;
    if (iq == q.size()) break;
    if (q.dates[iq] == t.dates[it]) {
      pair.dates.push_back(t.dates[it]);
      pair.q.push_back(q.values[iq]);
      pair.t.push_back(t.values[it]);
      ++iq;
    }
  }
  if (pair.size() < 2)
    throw EmptyIntersection("'" + q.entity_id + "' and '" + t.entity_id +
                            "' share fewer than 2 dates");
  out.dropped_query_dates = q.size() - pair.size();
  return out;
}

ReturnSeries price_returns(const DailySeries& closes) {
  if (closes.size() < 2)
    throw TooShort("price_returns: need at least 2 closes, have " +
                   std::to_string(closes.size()));
  ReturnSeries out;
  out.entity_id = closes.entity_id;
  out.dates.reserve(closes.size() - 1);
  out.values.reserve(closes.size() - 1);
  for (std::size_t i = 1; i < closes.size(); ++i) {
    out.dates.push_back(closes.dates[i]);
    out.values.push_back(closes.values[i] - closes.values[i - 1]);
  }
  return out;
}

VolatilityProxies volatility_proxies(const ReturnSeries& returns) {
  VolatilityProxies out;
  out.abs_returns.entity_id = returns.entity_id;
  out.positive.entity_id = returns.entity_id;
  out.negative.entity_id = returns.entity_id;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    const double r = returns.values[i];
    const TradingDate d = returns.dates[i];
    out.abs_returns.dates.push_back(d);
    out.abs_returns.values.push_back(std::fabs(r));
    if (r > 0.0) {
      out.positive.dates.push_back(d);
      out.positive.values.push_back(r);
    } else if (r < 0.0) {
      out.negative.dates.push_back(d);
      out.negative.values.push_back(-r);
    }
  }
  return out;
}

AlignedPair drop_top_k(const AlignedPair& pair, std::size_t k) {
  if (k + 2 > pair.size())
    throw KTooLarge("drop_top_k: k = " + std::to_string(k) +
                    " leaves fewer than 2 of " + std::to_string(pair.size()) +
                    " rows");
  if (k == 0) return pair;
  std::vector<std::size_t> order(pair.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Highest trade volume first; equal volumes fall back to the earlier day.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pair.t[a] != pair.t[b]) return pair.t[a] > pair.t[b];
    return a < b;
  });
  std::vector<bool> dropped(pair.size(), false);
  for (std::size_t i = 0; i < k; ++i) dropped[order[i]] = true;
  AlignedPair out;
  out.entity_id = pair.entity_id;
  out.dates.reserve(pair.size() - k);
  out.q.reserve(pair.size() - k);
  out.t.reserve(pair.size() - k);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (dropped[i]) continue;
    out.dates.push_back(pair.dates[i]);
    out.q.push_back(pair.q[i]);
    out.t.push_back(pair.t[i]);
  }
  return out;
}

}  // namespace leadlag
