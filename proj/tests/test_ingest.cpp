#include <doctest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "leadlag/errors.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/series.hpp"

using namespace leadlag;
using testutil::TempDir;
using testutil::read_text;
using testutil::write_text;

namespace {

template <typename E, typename Fn>
void expect_error_containing(Fn&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected an exception mentioning '" << needle << "'");
  } catch (const E& e) {
    const std::string what = e.what();
    CHECK_MESSAGE(what.find(needle) != std::string::npos,
                  "message was: " << what);
  }
}

}  // namespace

TEST_CASE("series CSV writes are byte stable across a round trip") {
  TempDir tmp;
  const auto days = testutil::weekdays(5);
  const DailySeries series = DailySeries::create(
      "ACME", SeriesKind::QueryVolume, days,
      {0.1, 1e-3, 1234567.89, 3.0, 0.0});
  const auto first = tmp.file("a.csv");
  const auto second = tmp.file("b.csv");
  write_series_csv(series, first);

  const DailySeries back =
      read_series_csv(first, SeriesKind::QueryVolume, "ACME");
  CHECK(back.values == series.values);
  CHECK(back.dates == series.dates);
  write_series_csv(back, second);
  CHECK(read_text(first) == read_text(second));
  CHECK(read_text(first).substr(0, 11) == "date,value\n");
}

TEST_CASE("finance CSV carries close and volume together") {
  TempDir tmp;
  const auto days = testutil::weekdays(4);
  const DailySeries close = DailySeries::create(
      "ACME", SeriesKind::ClosePrice, days, {10.5, 10.25, 11.0, 10.75});
  const DailySeries volume = DailySeries::create(
      "ACME", SeriesKind::TradeVolume, days, {100, 250, 175, 300});
  const auto path = tmp.file("fin.csv");
  write_finance_csv(close, volume, path);

  const FinanceSeries fin = read_finance_csv(path, "ACME");
  CHECK(fin.close.values == close.values);
  CHECK(fin.volume.values == volume.values);
  CHECK(fin.close.kind == SeriesKind::ClosePrice);
  CHECK(fin.volume.kind == SeriesKind::TradeVolume);

  // The kind argument selects the column when reading one series.
  CHECK(read_series_csv(path, SeriesKind::ClosePrice, "ACME").values ==
        close.values);
  CHECK(read_series_csv(path, SeriesKind::TradeVolume, "ACME").values ==
        volume.values);
  expect_error_containing<ParseError>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "ACME"); },
      "close,volume");

  const auto mismatched = testutil::weekdays(4, TradingDate{2011, 1, 3});
  const DailySeries other = DailySeries::create(
      "ACME", SeriesKind::TradeVolume, mismatched, {1, 2, 3, 4});
  CHECK_THROWS_AS(write_finance_csv(close, other, tmp.file("bad.csv")),
                  InvalidArgument);
}

TEST_CASE("read errors carry the file and line number") {
  TempDir tmp;
  const auto path = tmp.file("broken.csv");

  write_text(path, "date,volume\n2010-01-04,1\n");
  expect_error_containing<ParseError>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); },
      "unknown header");

  write_text(path, "date,value\n2010-01-04,1\n2010-01-05,-3\n");
  expect_error_containing<NegativeValue>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); }, ":3");

  write_text(path, "date,value\n2010-01-04,1\n\n2010-01-06,2\n");
  expect_error_containing<ParseError>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); },
      "3: blank line");

  write_text(path, "date,value\n2010-01-04,1\n2010-01-04,2\n");
  expect_error_containing<DuplicateDate>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); },
      "2010-01-04");

  write_text(path, "date,value\n2010-01-04,abc\n");
  expect_error_containing<ParseError>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); },
      "bad number");

  write_text(path, "date,value\n2010-1-4,5\n");
  expect_error_containing<ParseError>(
      [&] { read_series_csv(path, SeriesKind::QueryVolume, "X"); }, ":2");

  CHECK_THROWS_AS(read_series_csv(tmp.file("absent.csv"),
                                  SeriesKind::QueryVolume, "X"),
                  IoError);
}

TEST_CASE("readers tolerate CRLF and sort out of order rows") {
  TempDir tmp;
  const auto path = tmp.file("crlf.csv");
  write_text(path,
             "date,value\r\n2010-01-06,3\r\n2010-01-04,1\r\n2010-01-05,2\r\n");
  const DailySeries s = read_series_csv(path, SeriesKind::QueryVolume, "X");
  REQUIRE(s.size() == 3);
  CHECK(s.dates[0] == TradingDate{2010, 1, 4});
  CHECK(s.values == std::vector<double>{1, 2, 3});
}

TEST_CASE("event logs round trip byte for byte") {
  TempDir tmp;
  std::vector<QueryEvent> events;
  QueryEvent e;
  e.date = TradingDate{2010, 7, 1};
  e.seconds = 13 * 3600 + 45 * 60 + 12;
  e.user_id = "user_17";
  e.ticker = "AAPL";
  events.push_back(e);
  e.date = TradingDate{2010, 7, 2};
  e.seconds = 0;
  e.user_id = "user_02";
  e.ticker = "MSFT";
  events.push_back(e);

  const auto path = tmp.file("events.log");
  write_event_log(events, path);
  const std::string text = read_text(path);
  CHECK(text ==
        "2010-07-01T13:45:12Z\tuser_17\tAAPL\n"
        "2010-07-02T00:00:00Z\tuser_02\tMSFT\n");

  const auto back = read_event_log(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].date == events[0].date);
  CHECK(back[0].seconds == events[0].seconds);
  CHECK(back[0].user_id == "user_17");
  const auto second = tmp.file("events2.log");
  write_event_log(back, second);
  CHECK(read_text(second) == text);

  write_text(path, "2010-07-01 13:45:12\tu\tAAPL\n");
  CHECK_THROWS_AS(read_event_log(path), ParseError);
  write_text(path, "2010-07-01T25:00:00Z\tu\tAAPL\n");
  CHECK_THROWS_AS(read_event_log(path), ParseError);
  write_text(path, "2010-07-01T13:45:12Z\tu\n");
  CHECK_THROWS_AS(read_event_log(path), ParseError);
}

TEST_CASE("clean lists uppercase, deduplicate and reject junk") {
  TempDir tmp;
  const auto path = tmp.file("clean.txt");
  write_text(path,
             "# portfolio\naapl\nMSFT\n\n  goog  \nAAPL\n# done\n");
  const CleanList list = read_clean_list(path);
  CHECK(list.tickers == std::vector<std::string>{"AAPL", "MSFT", "GOOG"});
  CHECK(list.duplicates_dropped == 1);

  write_text(path, "# nothing\n\n");
  CHECK_THROWS_AS(read_clean_list(path), EmptyList);

  write_text(path, "AA PL\n");
  CHECK_THROWS_AS(read_clean_list(path), ParseError);
}

TEST_CASE("ticker word matching respects word boundaries") {
  QueryMatcherConfig cfg;
  cfg.mode = MatchMode::TickerWord;
  CHECK(match_query("buy AAPL now", "AAPL", "Apple Inc.", cfg));
  CHECK(match_query("aapl earnings", "AAPL", "Apple Inc.", cfg));
  CHECK(match_query("($AAPL)", "AAPL", "Apple Inc.", cfg));
  CHECK(match_query("AAPL", "AAPL", "Apple Inc.", cfg));
  CHECK_FALSE(match_query("AAPLX soars", "AAPL", "Apple Inc.", cfg));
  CHECK_FALSE(match_query("crab apple pie", "AAPL", "Apple Inc.", cfg));
  CHECK_FALSE(match_query("", "AAPL", "Apple Inc.", cfg));
}

TEST_CASE("company name matching strips punctuation and legal suffixes") {
  QueryMatcherConfig cfg = QueryMatcherConfig::defaults();
  cfg.mode = MatchMode::CompanyNameExact;
  CHECK(match_query("netflix incorporated", "NFLX", "Netflix, Inc.", cfg));
  CHECK(match_query("netflix inc", "NFLX", "Netflix, Inc.", cfg));
  CHECK(match_query("Netflix", "NFLX", "Netflix, Inc.", cfg));
  CHECK(match_query("NETFLIX INC.", "NFLX", "Netflix, Inc.", cfg));
  CHECK(match_query("coca cola", "KO", "Coca-Cola Co.", cfg));
  CHECK_FALSE(match_query("the netflix", "NFLX", "Netflix, Inc.", cfg));
  CHECK_FALSE(match_query("netflix stock", "NFLX", "Netflix, Inc.", cfg));
  CHECK_FALSE(match_query("netflix", "NFLX", "Netfix, Inc.", cfg));
}

TEST_CASE("suffix lists load lowercased with comments stripped") {
  TempDir tmp;
  const auto path = tmp.file("suffixes.txt");
  write_text(path, "# legal forms\nInc\nCORP\nltd.\n");
  const auto suffixes = read_suffix_list(path);
  CHECK(suffixes == std::vector<std::string>{"inc", "corp", "ltd."});

  const auto defaults = QueryMatcherConfig::defaults();
  CHECK(!defaults.legal_suffixes.empty());
}

TEST_CASE("event aggregation counts queries or distinct users per day") {
  std::vector<QueryEvent> events;
  auto add = [&](const char* date, const char* user, const char* ticker) {
    QueryEvent e;
    e.date = TradingDate::parse(date);
    e.user_id = user;
    e.ticker = ticker;
    events.push_back(e);
  };
  add("2010-07-01", "u1", "AAPL");
  add("2010-07-01", "u1", "AAPL");  // same user searches twice
  add("2010-07-01", "u2", "AAPL");
  add("2010-07-03", "u1", "AAPL");
  add("2010-07-02", "u5", "MSFT");

  const DailySeries queries =
      aggregate_events_to_series(events, "AAPL", CountMode::Queries);
  CHECK(queries.kind == SeriesKind::QueryVolume);
  REQUIRE(queries.size() == 2);  // July 2nd has no AAPL events
  CHECK(queries.dates[0] == TradingDate{2010, 7, 1});
  CHECK(queries.values == std::vector<double>{3, 1});

  const DailySeries users =
      aggregate_events_to_series(events, "AAPL", CountMode::DistinctUsers);
  CHECK(users.kind == SeriesKind::UserVolume);
  CHECK(users.values == std::vector<double>{2, 1});

  CHECK_THROWS_AS(
      aggregate_events_to_series(events, "TSLA", CountMode::Queries),
      NoSuchTicker);
}
