#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/dates.hpp"

namespace leadlag {

// A single search event. The date is the UTC calendar day of the event;
// seconds is the time of day and only matters for log round trips.
struct QueryEvent {
  TradingDate date;
  std::int32_t seconds = 0;
  std::string user_id;
  std::string ticker;
};

// A whole calendar month or a whole calendar year.
class Window {
 public:
  static Window month(int year, int month);
  static Window year(int year);

  bool contains(const TradingDate& d) const;
  bool is_month() const { return month_ != 0; }
  std::string label() const;  // "2010-07" or "2010"

 private:
  Window(int y, int m) : year_(y), month_(m) {}
  int year_ = 0;
  int month_ = 0;  // 0 means the whole year
};

// Distribution of a per-user count. support lists the distinct observed
// counts in increasing order and mass the fraction of users at each count;
// mass sums to one.
struct CountDistribution {
  std::vector<std::size_t> support;
  std::vector<double> mass;
  std::size_t n_users = 0;

  double mass_at(std::size_t count) const;  // 0 when count is not observed
};

// How many distinct tickers each user searched inside the window.
// Throws EmptyWindow when no event falls inside it.
CountDistribution tickers_per_user(std::span<const QueryEvent> events,
                                   const Window& window);

// Pointwise average of the monthly distributions of one calendar year,
// taken over the months that contain events.
CountDistribution tickers_per_user_monthly_average(
    std::span<const QueryEvent> events, int year);

// Distinct active days per user for one ticker inside the window.
// Multiple events by a user on the same UTC day count once. Throws
// NoSuchTicker when no user searched the ticker in the window.
CountDistribution active_days_per_ticker(std::span<const QueryEvent> events,
                                         std::string_view ticker,
                                         const Window& window);

// Per month fraction of the ticker's searchers that were active on exactly
// one day that month. Months without events are omitted.
struct MonthlyFraction {
  int year = 0;
  int month = 0;
  double fraction = 0.0;
  std::size_t n_users = 0;
};

std::vector<MonthlyFraction> one_time_fraction_series(
    std::span<const QueryEvent> events, std::string_view ticker);

}  // namespace leadlag
