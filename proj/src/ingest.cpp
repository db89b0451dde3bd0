#include "leadlag/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "leadlag/errors.hpp"

namespace leadlag {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return std::move(buf).str();
}

void spill(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

// Splits on LF; a trailing CR on any line is dropped so CRLF input parses.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  // A final newline produces one empty trailing entry; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_on(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             std::size_t line_no, const std::string& reason) {
  throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                   reason);
}

double parse_value(std::string_view field, const std::filesystem::path& path,
                   std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    parse_fail(path, line_no, "bad number '" + std::string(field) + "'");
  if (!std::isfinite(v))
    parse_fail(path, line_no, "non-finite value '" + std::string(field) + "'");
  if (v < 0.0)
    throw NegativeValue(path.string() + ":" + std::to_string(line_no) +
                        ": negative value '" + std::string(field) + "'");
  return v;
}

TradingDate parse_date(std::string_view field,
                       const std::filesystem::path& path,
                       std::size_t line_no) {
  try {
    return TradingDate::parse(field);
  } catch (const ParseError& e) {
    parse_fail(path, line_no, e.what());
  }
}

// Shortest round trip decimal form, the same digits a JSON emitter picks.
std::string format_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct CsvRows {
  bool financial = false;  // date,close,volume rather than date,value
  std::vector<TradingDate> dates;
  std::vector<double> first;   // value or close
  std::vector<double> second;  // volume when financial
};

CsvRows read_csv_rows(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(path.string() + ": empty file");
  CsvRows rows;
  if (lines[0] == "date,value")
    rows.financial = false;
  else if (lines[0] == "date,close,volume")
    rows.financial = true;
  else
    parse_fail(path, 1, "unknown header '" + std::string(lines[0]) + "'");
  const std::size_t want = rows.financial ? 3 : 2;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) parse_fail(path, i + 1, "blank line");
    const auto fields = split_on(lines[i], ',');
    if (fields.size() != want)
      parse_fail(path, i + 1,
                 "expected " + std::to_string(want) + " fields, got " +
                     std::to_string(fields.size()));
    rows.dates.push_back(parse_date(fields[0], path, i + 1));
    rows.first.push_back(parse_value(fields[1], path, i + 1));
    if (rows.financial)
      rows.second.push_back(parse_value(fields[2], path, i + 1));
  }
  // Out of order rows are tolerated and sorted; duplicates are not.
  std::vector<std::size_t> order(rows.dates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows.dates[a] < rows.dates[b];
  });
  CsvRows sorted;
  sorted.financial = rows.financial;
  for (std::size_t i : order) {
    if (!sorted.dates.empty() && sorted.dates.back() == rows.dates[i])
      throw DuplicateDate(path.string() + ": duplicate date " +
                          rows.dates[i].to_string());
    sorted.dates.push_back(rows.dates[i]);
    sorted.first.push_back(rows.first[i]);
    if (rows.financial) sorted.second.push_back(rows.second[i]);
  }
  return sorted;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return out;
}

std::string ascii_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c -= 'a' - 'A';
  return out;
}

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// Maximal ASCII alphanumeric runs, lowercased.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_word_char(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(ascii_lower(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(ascii_lower(current));
  return tokens;
}

// Company name canonical form: lowercase tokens joined by single spaces,
// with at most one trailing legal suffix removed.
std::string canonical_name(std::string_view name,
                           const std::set<std::string>& suffixes) {
  std::vector<std::string> tokens = tokenize(name);
  if (tokens.size() > 1 && suffixes.count(tokens.back())) tokens.pop_back();
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string strip_comment_and_trim(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
    line.remove_prefix(1);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);
  return std::string(line);
}

}  // namespace

DailySeries read_series_csv(const std::filesystem::path& path, SeriesKind kind,
                            std::string entity_id) {
  CsvRows rows = read_csv_rows(path);
  std::vector<double> values;
  if (rows.financial) {
    if (kind == SeriesKind::ClosePrice)
      values = std::move(rows.first);
    else if (kind == SeriesKind::TradeVolume)
      values = std::move(rows.second);
    else
      throw ParseError(path.string() +
                       ": close,volume file cannot provide a query series");
  } else {
    values = std::move(rows.first);
  }
  return DailySeries::create(std::move(entity_id), kind, std::move(rows.dates),
                             std::move(values));
}

void write_series_csv(const DailySeries& series,
                      const std::filesystem::path& path) {
  std::string out = "date,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += series.dates[i].to_string();
    out.push_back(',');
    out += format_value(series.values[i]);
    out.push_back('\n');
  }
  spill(path, out);
}

FinanceSeries read_finance_csv(const std::filesystem::path& path,
                               std::string entity_id) {
  CsvRows rows = read_csv_rows(path);
  if (!rows.financial)
    throw ParseError(path.string() + ": expected a date,close,volume file");
  FinanceSeries out;
  out.close = DailySeries::create(entity_id, SeriesKind::ClosePrice,
                                  rows.dates, std::move(rows.first));
  out.volume =
      DailySeries::create(std::move(entity_id), SeriesKind::TradeVolume,
                          std::move(rows.dates), std::move(rows.second));
  return out;
}

void write_finance_csv(const DailySeries& close, const DailySeries& volume,
                       const std::filesystem::path& path) {
  if (close.dates != volume.dates)
    throw InvalidArgument("write_finance_csv: close and volume calendars "
                          "differ");
  std::string out = "date,close,volume\n";
  for (std::size_t i = 0; i < close.size(); ++i) {
    out += close.dates[i].to_string();
    out.push_back(',');
    out += format_value(close.values[i]);
    out.push_back(',');
    out += format_value(volume.values[i]);
    out.push_back('\n');
  }
  spill(path, out);
}

std::vector<QueryEvent> read_event_log(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto lines = split_lines(text);
  std::vector<QueryEvent> events;
  events.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) parse_fail(path, i + 1, "blank line");
    const auto fields = split_on(lines[i], '\t');
    if (fields.size() != 3)
      parse_fail(path, i + 1, "expected 3 tab separated fields, got " +
                                  std::to_string(fields.size()));
    const std::string_view ts = fields[0];
    // 2010-07-01T13:45:12Z
    if (ts.size() != 20 || ts[10] != 'T' || ts[13] != ':' || ts[16] != ':' ||
        ts[19] != 'Z')
      parse_fail(path, i + 1, "bad timestamp '" + std::string(ts) + "'");
    QueryEvent e;
    e.date = parse_date(ts.substr(0, 10), path, i + 1);
    int hh = 0, mm = 0, ss = 0;
    auto two_digits = [&](std::string_view s, int& v) {
      if (s.size() != 2 || s[0] < '0' || s[0] > '9' || s[1] < '0' ||
          s[1] > '9')
        parse_fail(path, i + 1, "bad timestamp '" + std::string(ts) + "'");
      v = (s[0] - '0') * 10 + (s[1] - '0');
    };
    two_digits(ts.substr(11, 2), hh);
    two_digits(ts.substr(14, 2), mm);
    two_digits(ts.substr(17, 2), ss);
    if (hh > 23 || mm > 59 || ss > 59)
      parse_fail(path, i + 1, "bad time of day '" + std::string(ts) + "'");
    e.seconds = hh * 3600 + mm * 60 + ss;
    if (fields[1].empty()) parse_fail(path, i + 1, "empty user id");
    if (fields[2].empty()) parse_fail(path, i + 1, "empty ticker");
    e.user_id = std::string(fields[1]);
    e.ticker = std::string(fields[2]);
    events.push_back(std::move(e));
  }
  return events;
}

void write_event_log(std::span<const QueryEvent> events,
                     const std::filesystem::path& path) {
  std::string out;
  for (const auto& e : events) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", e.seconds / 3600,
                  (e.seconds / 60) % 60, e.seconds % 60);
    out += e.date.to_string();
    out += buf;
    out.push_back('\t');
    out += e.user_id;
    out.push_back('\t');
    out += e.ticker;
    out.push_back('\n');
  }
  spill(path, out);
}

CleanList read_clean_list(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto lines = split_lines(text);
  CleanList out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string entry = strip_comment_and_trim(lines[i]);
    if (entry.empty()) continue;
    for (char c : entry)
      if (!is_word_char(c) && c != '.' && c != '-')
        parse_fail(path, i + 1, "bad ticker '" + entry + "'");
    const std::string ticker = ascii_upper(entry);
    if (!seen.insert(ticker).second) {
      ++out.duplicates_dropped;
      continue;
    }
    out.tickers.push_back(ticker);
  }
  if (out.tickers.empty())
    throw EmptyList(path.string() + ": no tickers");
  return out;
}

std::vector<std::string> read_suffix_list(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto lines = split_lines(text);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& line : lines) {
    const std::string entry = ascii_lower(strip_comment_and_trim(line));
    if (entry.empty()) continue;
    if (seen.insert(entry).second) out.push_back(entry);
  }
  if (out.empty()) throw EmptyList(path.string() + ": no suffixes");
  return out;
}

QueryMatcherConfig QueryMatcherConfig::defaults() {
  QueryMatcherConfig cfg;
  cfg.legal_suffixes = {"inc", "inc.",  "corp",         "corp.",
                        "co",  "co.",   "ltd",          "ltd.",
                        "incorporated", "corporation",  "limited"};
  return cfg;
}

bool match_query(std::string_view text, std::string_view ticker,
                 std::string_view company_name,
                 const QueryMatcherConfig& cfg) {
  if (cfg.mode == MatchMode::TickerWord) {
    const std::string want = ascii_lower(ticker);
    if (want.empty()) return false;
    for (const auto& token : tokenize(text))
      if (token == want) return true;
    return false;
  }
  // CompanyNameExact. Suffixes pass through the same tokenizer, so the
  // configured "inc." and a query's "inc" coincide.
  std::set<std::string> suffixes;
  for (const auto& s : cfg.legal_suffixes) {
    const auto tokens = tokenize(s);
    if (tokens.size() == 1) suffixes.insert(tokens.front());
  }
  const std::string lhs = canonical_name(text, suffixes);
  const std::string rhs = canonical_name(company_name, suffixes);
  return !lhs.empty() && lhs == rhs;
}

DailySeries aggregate_events_to_series(std::span<const QueryEvent> events,
                                       std::string_view ticker,
                                       CountMode mode) {
  std::map<TradingDate, std::set<std::string>> users_by_day;
  std::map<TradingDate, std::size_t> queries_by_day;
  bool any = false;
  for (const auto& e : events) {
    if (e.ticker != ticker) continue;
    any = true;
    if (mode == CountMode::DistinctUsers)
      users_by_day[e.date].insert(e.user_id);
    else
      ++queries_by_day[e.date];
  }
  if (!any)
    throw NoSuchTicker("aggregate_events_to_series: no events for '" +
                       std::string(ticker) + "'");
  std::vector<TradingDate> dates;
  std::vector<double> values;
  if (mode == CountMode::DistinctUsers) {
    for (const auto& [date, users] : users_by_day) {
      dates.push_back(date);
      values.push_back(static_cast<double>(users.size()));
    }
  } else {
    for (const auto& [date, count] : queries_by_day) {
      dates.push_back(date);
      values.push_back(static_cast<double>(count));
    }
  }
  return DailySeries::create(
      std::string(ticker),
      mode == CountMode::DistinctUsers ? SeriesKind::UserVolume
                                       : SeriesKind::QueryVolume,
      std::move(dates), std::move(values));
}

}  // namespace leadlag
