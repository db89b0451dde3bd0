#include "leadlag/dates.hpp"

#include <chrono>
#include <cstdio>

#include "leadlag/errors.hpp"

namespace leadlag {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(const TradingDate& d) {
  return chr::year{d.year} / chr::month{static_cast<unsigned>(d.month)} /
         chr::day{static_cast<unsigned>(d.day)};
}

TradingDate from_sys_days(chr::sys_days sd) {
  const chr::year_month_day ymd{sd};
  return TradingDate{static_cast<std::int16_t>(static_cast<int>(ymd.year())),
                     static_cast<std::int8_t>(static_cast<unsigned>(ymd.month())),
                     static_cast<std::int8_t>(static_cast<unsigned>(ymd.day()))};
}

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

bool TradingDate::valid(int year, int month, int day) {
  // Four digit years keep the ISO text form fixed width.
  if (year < 1000 || year > 9999) return false;
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return (chr::year{year} / chr::month{static_cast<unsigned>(month)} /
          chr::day{static_cast<unsigned>(day)})
      .ok();
}

TradingDate TradingDate::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' ||
      !all_digits(iso.substr(0, 4)) || !all_digits(iso.substr(5, 2)) ||
      !all_digits(iso.substr(8, 2)))
    throw ParseError("not a YYYY-MM-DD date: '" + std::string(iso) + "'");
  const int y = to_int(iso.substr(0, 4));
  const int m = to_int(iso.substr(5, 2));
  const int d = to_int(iso.substr(8, 2));
  if (!valid(y, m, d))
    throw ParseError("invalid calendar date: '" + std::string(iso) + "'");
  return TradingDate{static_cast<std::int16_t>(y), static_cast<std::int8_t>(m),
                     static_cast<std::int8_t>(d)};
}

std::string TradingDate::to_string() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", static_cast<int>(year),
                static_cast<int>(month), static_cast<int>(day));
  return buf;
}

int TradingDate::weekday() const {
  const chr::weekday wd{chr::sys_days{to_ymd(*this)}};
  return static_cast<int>(wd.iso_encoding()) - 1;  // Monday -> 0
}

TradingDate TradingDate::next_calendar_day() const {
  return from_sys_days(chr::sys_days{to_ymd(*this)} + chr::days{1});
}

TradingDate TradingDate::next_weekday() const {
  TradingDate d = next_calendar_day();
  while (!d.is_weekday()) d = d.next_calendar_day();
  return d;
}

std::int64_t TradingDate::serial() const {
  return chr::sys_days{to_ymd(*this)}.time_since_epoch().count();
}

}  // namespace leadlag
