#include "leadlag/userstats.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "leadlag/errors.hpp"

namespace leadlag {

namespace {

CountDistribution distribution_from_counts(
    const std::map<std::string, std::size_t>& per_user) {
  std::map<std::size_t, std::size_t> freq;
  for (const auto& [user, count] : per_user) ++freq[count];
  CountDistribution out;
  out.n_users = per_user.size();
  for (const auto& [count, users] : freq) {
    out.support.push_back(count);
    out.mass.push_back(static_cast<double>(users) /
                       static_cast<double>(out.n_users));
  }
  return out;
}

}  // namespace

Window Window::month(int year, int month) {
  if (!TradingDate::valid(year, month, 1))
    throw InvalidArgument("Window::month: invalid year or month");
  return Window(year, month);
}

Window Window::year(int year) {
  if (!TradingDate::valid(year, 1, 1))
    throw InvalidArgument("Window::year: invalid year");
  return Window(year, 0);
}

bool Window::contains(const TradingDate& d) const {
  if (d.year != year_) return false;
  return month_ == 0 || d.month == month_;
}

std::string Window::label() const {
  std::string out = std::to_string(year_);
  if (month_ != 0) {
    out += month_ < 10 ? "-0" : "-";
    out += std::to_string(month_);
  }
  return out;
}

double CountDistribution::mass_at(std::size_t count) const {
  const auto it = std::lower_bound(support.begin(), support.end(), count);
  if (it == support.end() || *it != count) return 0.0;
  return mass[static_cast<std::size_t>(it - support.begin())];
}

CountDistribution tickers_per_user(std::span<const QueryEvent> events,
                                   const Window& window) {
  std::map<std::string, std::set<std::string>> tickers_by_user;
  for (const auto& e : events)
    if (window.contains(e.date)) tickers_by_user[e.user_id].insert(e.ticker);
  if (tickers_by_user.empty())
    throw EmptyWindow("tickers_per_user: no events in " + window.label());
  std::map<std::string, std::size_t> counts;
  for (const auto& [user, tickers] : tickers_by_user)
    counts[user] = tickers.size();
  return distribution_from_counts(counts);
}

CountDistribution tickers_per_user_monthly_average(
    std::span<const QueryEvent> events, int year) {
  std::vector<CountDistribution> monthly;
  for (int m = 1; m <= 12; ++m) {
    try {
      monthly.push_back(tickers_per_user(events, Window::month(year, m)));
    } catch (const EmptyWindow&) {
      // Months without events do not contribute to the average.
    }
  }
  if (monthly.empty())
    throw EmptyWindow("tickers_per_user_monthly_average: no events in " +
                      std::to_string(year));
  std::set<std::size_t> support_union;
  std::size_t users_total = 0;
  for (const auto& d : monthly) {
    support_union.insert(d.support.begin(), d.support.end());
    users_total += d.n_users;
  }
  CountDistribution out;
  out.n_users = users_total;  // summed monthly user counts
  for (std::size_t count : support_union) {
    double m = 0.0;
    for (const auto& d : monthly) m += d.mass_at(count);
    out.support.push_back(count);
    out.mass.push_back(m / static_cast<double>(monthly.size()));
  }
  return out;
}

CountDistribution active_days_per_ticker(std::span<const QueryEvent> events,
                                         std::string_view ticker,
                                         const Window& window) {
  std::map<std::string, std::set<std::int64_t>> days_by_user;
  for (const auto& e : events)
    if (e.ticker == ticker && window.contains(e.date))
      days_by_user[e.user_id].insert(e.date.serial());
  if (days_by_user.empty())
    throw NoSuchTicker("active_days_per_ticker: no events for '" +
                       std::string(ticker) + "' in " + window.label());
  std::map<std::string, std::size_t> counts;
  for (const auto& [user, days] : days_by_user) counts[user] = days.size();
  return distribution_from_counts(counts);
}

std::vector<MonthlyFraction> one_time_fraction_series(
    std::span<const QueryEvent> events, std::string_view ticker) {
  // (year, month) -> user -> distinct active days.
  std::map<std::pair<int, int>, std::map<std::string, std::set<std::int64_t>>>
      months;
  for (const auto& e : events)
    if (e.ticker == ticker)
      months[{e.date.year, e.date.month}][e.user_id].insert(e.date.serial());
  if (months.empty())
    throw NoSuchTicker("one_time_fraction_series: no events for '" +
                       std::string(ticker) + "'");
  std::vector<MonthlyFraction> out;
  for (const auto& [ym, users] : months) {
    MonthlyFraction f;
    f.year = ym.first;
    f.month = ym.second;
    f.n_users = users.size();
    std::size_t one_day = 0;
    for (const auto& [user, days] : users)
      if (days.size() == 1) ++one_day;
    f.fraction = static_cast<double>(one_day) / static_cast<double>(f.n_users);
    out.push_back(f);
  }
  return out;
}

}  // namespace leadlag
