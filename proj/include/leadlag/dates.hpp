#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace leadlag {

// Plain Gregorian calendar date with an ISO-8601 text form (YYYY-MM-DD).
// Comparison is lexicographic on (year, month, day).
struct TradingDate {
  std::int16_t year = 1970;
  std::int8_t month = 1;
  std::int8_t day = 1;

  friend constexpr auto operator<=>(const TradingDate&, const TradingDate&) = default;

  // Throws ParseError on malformed text or an invalid calendar date.
  static TradingDate parse(std::string_view iso);
  static bool valid(int year, int month, int day);

  std::string to_string() const;

  int weekday() const;  // 0 = Monday .. 6 = Sunday
  bool is_weekday() const { return weekday() < 5; }

  TradingDate next_calendar_day() const;
  TradingDate next_weekday() const;

  // Days since 1970-01-01, negative before the epoch.
  std::int64_t serial() const;
};

}  // namespace leadlag
