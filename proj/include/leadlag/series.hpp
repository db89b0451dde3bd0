#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/dates.hpp"

namespace leadlag {

enum class SeriesKind { QueryVolume, UserVolume, TradeVolume, ClosePrice };

std::string_view to_string(SeriesKind kind);

// One observation per calendar day for a single entity. Dates are strictly
// increasing and values are finite and non-negative; create() enforces both.
struct DailySeries {
  std::string entity_id;
  SeriesKind kind = SeriesKind::QueryVolume;
  std::vector<TradingDate> dates;
  std::vector<double> values;

  std::size_t size() const { return dates.size(); }

  static DailySeries create(std::string entity_id, SeriesKind kind,
                            std::vector<TradingDate> dates,
                            std::vector<double> values);
};

// A query series and a trade series restricted to a shared calendar.
// Invariant: dates, q and t have equal length n >= 2 with dates strictly
// increasing. The trade series defines which days count as trading days.
struct AlignedPair {
  std::string entity_id;
  std::vector<TradingDate> dates;
  std::vector<double> q;
  std::vector<double> t;

  std::size_t size() const { return dates.size(); }
};

struct AlignResult {
  AlignedPair pair;
  std::size_t dropped_query_dates = 0;  // q dates absent from the result
};

// Intersects both calendars, keeping t's dates that also appear in q, in
// order. Throws EmptyIntersection when fewer than two dates are shared.
AlignResult align(const DailySeries& q, const DailySeries& t);

// First differences of the close price: values[i] = close[i+1] - close[i],
// dated by the later close.
struct ReturnSeries {
  std::string entity_id;
  std::vector<TradingDate> dates;
  std::vector<double> values;

  std::size_t size() const { return dates.size(); }
};

// Throws TooShort when the close series has fewer than two points.
ReturnSeries price_returns(const DailySeries& closes);

// Daily volatility proxies: the absolute return on every day, and the
// magnitudes split by sign of the underlying return. Zero returns belong
// to neither signed branch.
struct VolatilityProxies {
  ReturnSeries abs_returns;
  ReturnSeries positive;  // R on days with R > 0
  ReturnSeries negative;  // |R| on days with R < 0
};

VolatilityProxies volatility_proxies(const ReturnSeries& returns);

// Removes the k days with the highest trade volume; ties are broken by
// removing the earliest such day first. Throws KTooLarge when fewer than
// two rows would remain.
AlignedPair drop_top_k(const AlignedPair& pair, std::size_t k);

}  // namespace leadlag
