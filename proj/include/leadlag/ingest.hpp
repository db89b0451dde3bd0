#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/series.hpp"
#include "leadlag/userstats.hpp"

namespace leadlag {

// File formats.
//
// Daily series CSV, UTF-8 with LF endings (CRLF tolerated on read):
//   date,value            one generic series, or
//   date,close,volume     a financial series carrying both columns.
// Dates are ISO-8601 and unique; out of order rows are sorted on read.
// Negative values are rejected with the offending line number.
//
// Search event logs are tab separated, one event per line:
//   2010-07-01T13:45:12Z<TAB>user_id<TAB>ticker
//
// Clean ticker lists hold one ticker per line with '#' comments.

// Reads either CSV layout. For the financial layout the kind selects the
// column: ClosePrice takes close, TradeVolume takes volume, and any other
// kind is a ParseError. For the generic layout the kind is taken as given.
DailySeries read_series_csv(const std::filesystem::path& path, SeriesKind kind,
                            std::string entity_id);

void write_series_csv(const DailySeries& series,
                      const std::filesystem::path& path);

struct FinanceSeries {
  DailySeries close;
  DailySeries volume;
};

FinanceSeries read_finance_csv(const std::filesystem::path& path,
                               std::string entity_id);

void write_finance_csv(const DailySeries& close, const DailySeries& volume,
                       const std::filesystem::path& path);

std::vector<QueryEvent> read_event_log(const std::filesystem::path& path);

void write_event_log(std::span<const QueryEvent> events,
                     const std::filesystem::path& path);

struct CleanList {
  std::vector<std::string> tickers;        // uppercased, input order
  std::size_t duplicates_dropped = 0;
};

// Throws EmptyList when no ticker survives comments and blank lines.
CleanList read_clean_list(const std::filesystem::path& path);

enum class MatchMode { TickerWord, CompanyNameExact };

struct QueryMatcherConfig {
  MatchMode mode = MatchMode::TickerWord;
  std::vector<std::string> legal_suffixes;  // lowercase, punctuation free

  // The suffix list shipped in configs/legal_suffixes.txt.
  static QueryMatcherConfig defaults();
};

// One suffix per line, '#' comments, lowercased.
std::vector<std::string> read_suffix_list(const std::filesystem::path& path);

// TickerWord: the ticker appears as a whole alphanumeric word of the query,
// case insensitive. CompanyNameExact: the query equals the company name
// after lowercasing, collapsing punctuation and whitespace, and stripping
// at most one trailing legal suffix from each side.
bool match_query(std::string_view text, std::string_view ticker,
                 std::string_view company_name, const QueryMatcherConfig& cfg);

enum class CountMode { Queries, DistinctUsers };

// Daily query counts (or distinct user counts) for one ticker. Days with
// no events are absent from the result; the series kind is QueryVolume or
// UserVolume accordingly. Throws NoSuchTicker when the ticker never occurs.
DailySeries aggregate_events_to_series(std::span<const QueryEvent> events,
                                       std::string_view ticker,
                                       CountMode mode);

}  // namespace leadlag
