// Command line front end: discovers per-ticker CSV inputs, runs the
// requested analysis and writes CSV/JSON reports into --out. Exit code 0
// on success, 1 on configuration or IO problems, 2 when some tickers
// failed but the run produced output for the rest.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "leadlag/anticipation.hpp"
#include "leadlag/crosscorr.hpp"
#include "leadlag/errors.hpp"
#include "leadlag/granger.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/parallel.hpp"
#include "leadlag/permutation.hpp"
#include "leadlag/report.hpp"
#include "leadlag/series.hpp"
#include "leadlag/synth.hpp"
#include "leadlag/userstats.hpp"

namespace {

namespace fs = std::filesystem;
using namespace leadlag;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string data_dir;
  std::string clean_list;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string timestamp;
};

unsigned effective_workers(const CommonOpts& o) {
  if (o.workers > 0) return o.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_data_dir) {
  if (with_data_dir) {
    cmd->add_option("--data-dir", o.data_dir,
                    "Directory with <ticker>.query.csv and "
                    "<ticker>.finance.csv files")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--clean-list", o.clean_list,
                    "Restrict the run to the tickers in this list")
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--out", o.out_dir, "Output directory (created if absent)")
      ->required();
  cmd->add_option("--seed", o.seed,
                  "Master seed for every random draw in the run")
      ->envname("LEADLAG_SEED");
  cmd->add_option("--workers", o.workers,
                  "Worker threads; 0 means all hardware threads. Output "
                  "does not depend on this");
  cmd->add_option("--timestamp", o.timestamp,
                  "Timestamp string recorded in the manifest; omitted by "
                  "default so reruns are byte identical");
}

struct TickerData {
  std::string ticker;
  DailySeries query;
  FinanceSeries finance;
  AlignedPair pair;  // query volume against trade volume
};

// Manifest digests are keyed by file name, not full path, so runs over
// relocated copies of one dataset produce identical reports.
struct LoadResult {
  std::vector<TickerData> loaded;
  std::vector<std::pair<std::string, std::string>> failures;
  std::map<std::string, std::string> digests;
};

std::vector<std::string> discover_tickers(const CommonOpts& o,
                                          LoadResult& out) {
  if (!o.clean_list.empty()) {
    const CleanList list = read_clean_list(o.clean_list);
    if (list.duplicates_dropped > 0)
      std::cerr << "warning: " << list.duplicates_dropped
                << " duplicate ticker(s) dropped from " << o.clean_list
                << "\n";
    out.digests[fs::path(o.clean_list).filename().string()] =
        file_digest(o.clean_list);
    return list.tickers;
  }
  std::vector<std::string> tickers;
  for (const auto& entry : fs::directory_iterator(o.data_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::string tail = ".query.csv";
    if (name.size() > tail.size() &&
        name.compare(name.size() - tail.size(), tail.size(), tail) == 0)
      tickers.push_back(name.substr(0, name.size() - tail.size()));
  }
  std::sort(tickers.begin(), tickers.end());
  if (tickers.empty())
    throw IoError("no *.query.csv files in '" + o.data_dir + "'");
  return tickers;
}

LoadResult load_tickers(const CommonOpts& o) {
  LoadResult out;
  const std::vector<std::string> tickers = discover_tickers(o, out);

  struct Slot {
    std::optional<TickerData> data;
    std::string error;
    std::string query_digest, finance_digest;
  };
  std::vector<Slot> slots(tickers.size());
  parallel_for(tickers.size(), effective_workers(o), [&](std::size_t i) {
    const std::string& ticker = tickers[i];
    const fs::path query_path = fs::path(o.data_dir) / (ticker + ".query.csv");
    const fs::path fin_path = fs::path(o.data_dir) / (ticker + ".finance.csv");
    try {
      TickerData d;
      d.ticker = ticker;
      d.query = read_series_csv(query_path, SeriesKind::QueryVolume, ticker);
      d.finance = read_finance_csv(fin_path, ticker);
      d.pair = align(d.query, d.finance.volume).pair;
      slots[i].query_digest = file_digest(query_path);
      slots[i].finance_digest = file_digest(fin_path);
      slots[i].data = std::move(d);
    } catch (const Error& e) {
      slots[i].error = e.what();
    }
  });
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    if (slots[i].data) {
      out.digests[tickers[i] + ".query.csv"] = slots[i].query_digest;
      out.digests[tickers[i] + ".finance.csv"] = slots[i].finance_digest;
      out.loaded.push_back(std::move(*slots[i].data));
    } else {
      out.failures.emplace_back(tickers[i], slots[i].error);
    }
  }
  if (out.loaded.empty()) {
    std::string detail;
    for (const auto& [ticker, reason] : out.failures)
      detail += "\n  " + ticker + ": " + reason;
    throw IoError("no ticker loaded successfully" + detail);
  }
  return out;
}

RunManifest make_manifest(const CommonOpts& o, std::string command,
                          std::map<std::string, std::string> parameters,
                          std::map<std::string, std::string> digests) {
  RunManifest m;
  m.toolkit_version = kVersion;
  m.command = std::move(command);
  m.seed = o.seed;
  m.parameters = std::move(parameters);
  m.input_digests = std::move(digests);
  m.timestamp = o.timestamp;
  return m;
}

fs::path ensure_out_dir(const CommonOpts& o) {
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + o.out_dir + "': " + ec.message());
  return dir;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out.push_back(',');
    out += shortest(x);
  }
  return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t x : v) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(x);
  }
  return out;
}

int exit_code_for(const std::vector<std::pair<std::string, std::string>>&
                      failures) {
  if (failures.empty()) return 0;
  for (const auto& [ticker, reason] : failures)
    std::cerr << "warning: " << ticker << ": " << reason << "\n";
  return 2;
}

// ---------------------------------------------------------------------------
// ccf

struct CcfOpts {
  CommonOpts common;
  int max_lag = 5;
  std::vector<std::size_t> top_drop;
  std::vector<double> top_drop_pct;
  std::size_t histogram_bins = 0;
};

int run_ccf(const CcfOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  LoadResult data = load_tickers(opt.common);

  struct Slot {
    std::optional<CcfResult> result;
    std::vector<double> after;  // one entry per drop spec
    std::string error;
  };
  const std::size_t n_drop = opt.top_drop.size() + opt.top_drop_pct.size();
  std::vector<Slot> slots(data.loaded.size());
  parallel_for(data.loaded.size(), effective_workers(opt.common),
               [&](std::size_t i) {
                 const AlignedPair& pair = data.loaded[i].pair;
                 try {
                   slots[i].result = ccf(pair, opt.max_lag);
                 } catch (const Error& e) {
                   slots[i].error = e.what();
                   return;
                 }
                 for (std::size_t k : opt.top_drop) {
                   try {
                     slots[i].after.push_back(ccf_after_drop(pair, k));
                   } catch (const Error&) {
                     slots[i].after.push_back(
                         std::numeric_limits<double>::quiet_NaN());
                   }
                 }
                 for (double pct : opt.top_drop_pct) {
                   const std::size_t k = static_cast<std::size_t>(
                       pct / 100.0 * static_cast<double>(pair.size()));
                   try {
                     slots[i].after.push_back(ccf_after_drop(pair, k));
                   } catch (const Error&) {
                     slots[i].after.push_back(
                         std::numeric_limits<double>::quiet_NaN());
                   }
                 }
               });

  ReportBundle bundle;
  std::vector<CcfResult> results;
  TopDropTable drop_table;
  for (std::size_t k : opt.top_drop)
    drop_table.drop_labels.push_back("top" + std::to_string(k));
  for (double pct : opt.top_drop_pct)
    drop_table.drop_labels.push_back("top" + shortest(pct) + "pct");
  for (std::size_t i = 0; i < data.loaded.size(); ++i) {
    if (!slots[i].result) {
      data.failures.emplace_back(data.loaded[i].ticker, slots[i].error);
      continue;
    }
    if (n_drop > 0) {
      TopDropRow row;
      row.entity_id = data.loaded[i].ticker;
      row.r0 = slots[i].result->at(0);
      row.r0_after = slots[i].after;
      drop_table.rows.push_back(std::move(row));
    }
    results.push_back(std::move(*slots[i].result));
  }
  std::sort(data.failures.begin(), data.failures.end());
  if (results.empty()) throw IoError("ccf failed for every ticker");

  const CcfTable table = ccf_average(std::move(results));
  emit_ccf_table(table, out_dir / "ccf_table.csv");
  if (n_drop > 0) {
    std::sort(drop_table.rows.begin(), drop_table.rows.end(),
              [](const TopDropRow& a, const TopDropRow& b) {
                return a.entity_id < b.entity_id;
              });
    emit_top_drop_table(drop_table, out_dir / "top_drop.csv");
    bundle.top_drop = std::move(drop_table);
  }
  if (opt.histogram_bins > 0) {
    for (const auto& d : data.loaded) {
      try {
        emit_histogram(d.query.values, opt.histogram_bins,
                       out_dir / (d.ticker + ".query_hist.csv"));
        emit_histogram(d.finance.volume.values, opt.histogram_bins,
                       out_dir / (d.ticker + ".volume_hist.csv"));
      } catch (const ConstantSeries&) {
        // Nothing worth plotting for a flat series.
      }
    }
  }

  std::map<std::string, std::string> params{
      {"max_lag", std::to_string(opt.max_lag)}};
  if (!opt.top_drop.empty()) params["top_drop"] = join_sizes(opt.top_drop);
  if (!opt.top_drop_pct.empty())
    params["top_drop_pct"] = join_doubles(opt.top_drop_pct);
  if (opt.histogram_bins > 0)
    params["histogram_bins"] = std::to_string(opt.histogram_bins);
  bundle.manifest =
      make_manifest(opt.common, "ccf", std::move(params), data.digests);
  bundle.ccf = table;
  bundle.failures = data.failures;
  emit_json_report(bundle, out_dir / "report.json");
  return exit_code_for(data.failures);
}

// ---------------------------------------------------------------------------
// granger

struct GrangerOpts {
  CommonOpts common;
  int lag_order = 1;
  std::string dataset = "Q";
};

int run_granger(const GrangerOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  LoadResult data = load_tickers(opt.common);
  std::vector<AlignedPair> pairs;
  pairs.reserve(data.loaded.size());
  for (const auto& d : data.loaded) pairs.push_back(d.pair);

  const GrangerSummary summary =
      granger_batch(pairs, opt.lag_order, effective_workers(opt.common));
  emit_granger_summary(summary, opt.dataset, out_dir / "granger_summary.csv");

  ReportBundle bundle;
  bundle.manifest = make_manifest(
      opt.common, "granger",
      {{"lag_order", std::to_string(opt.lag_order)},
       {"dataset", opt.dataset}},
      data.digests);
  bundle.granger = summary;
  bundle.failures = data.failures;
  emit_json_report(bundle, out_dir / "report.json");

  auto all_failures = data.failures;
  all_failures.insert(all_failures.end(), summary.failures.begin(),
                      summary.failures.end());
  return exit_code_for(all_failures);
}

// ---------------------------------------------------------------------------
// permtest

struct PermOpts {
  CommonOpts common;
  std::string scenario_name = "global";
  std::string target;
  std::size_t n_perm = 1000;

  Scenario scenario() const {
    if (scenario_name == "fixed-t") return Scenario::FixedT;
    if (scenario_name == "fixed-q") return Scenario::FixedQ;
    return Scenario::Global;
  }
};

int run_permtest(const PermOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  LoadResult data = load_tickers(opt.common);
  std::vector<AlignedPair> pairs;
  pairs.reserve(data.loaded.size());
  for (const auto& d : data.loaded) pairs.push_back(d.pair);

  ReportBundle bundle;
  const Scenario scenario = opt.scenario();
  if (scenario == Scenario::Global) {
    if (!opt.target.empty())
      throw InvalidArgument("--target only applies to fixed-t / fixed-q");
    bundle.permutation.push_back(
        global_reshuffle_test(pairs, opt.n_perm, opt.common.seed));
  } else {
    // One report per requested target; all tickers when none is named.
    std::vector<std::string> targets;
    if (!opt.target.empty()) {
      targets.push_back(opt.target);
    } else {
      for (const auto& p : pairs) targets.push_back(p.entity_id);
    }
    std::vector<PermutationReport> reports(targets.size());
    parallel_for(targets.size(), effective_workers(opt.common),
                 [&](std::size_t i) {
                   reports[i] = per_entity_test(pairs, targets[i], scenario,
                                                opt.n_perm, opt.common.seed);
                 });
    bundle.permutation = std::move(reports);
  }

  std::map<std::string, std::string> params{
      {"scenario", std::string(to_string(scenario))},
      {"n_perm", std::to_string(opt.n_perm)}};
  if (!opt.target.empty()) params["target"] = opt.target;
  bundle.manifest =
      make_manifest(opt.common, "permtest", std::move(params), data.digests);
  bundle.failures = data.failures;
  emit_json_report(bundle, out_dir / "report.json");
  return exit_code_for(data.failures);
}

// ---------------------------------------------------------------------------
// anticipate

struct AnticipateOpts {
  CommonOpts common;
  AnticipationConfig config;
  bool fast = false;
};

int run_anticipate(const AnticipateOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  AnticipationConfig config = opt.config;
  if (opt.fast)
    config.n_boot_test1 = config.n_boot_test2 = config.n_boot_test3 = 999;

  LoadResult data = load_tickers(opt.common);
  struct Slot {
    std::optional<AnticipationReport> report;
    std::string error;
  };
  std::vector<Slot> slots(data.loaded.size());
  parallel_for(data.loaded.size(), effective_workers(opt.common),
               [&](std::size_t i) {
                 try {
                   slots[i].report = run_anticipation_tests(
                       data.loaded[i].pair, config, opt.common.seed);
                 } catch (const Error& e) {
                   slots[i].error = e.what();
                 }
               });

  ReportBundle bundle;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].report)
      bundle.anticipation.push_back(std::move(*slots[i].report));
    else
      data.failures.emplace_back(data.loaded[i].ticker, slots[i].error);
  }
  std::sort(data.failures.begin(), data.failures.end());
  if (bundle.anticipation.empty())
    throw IoError("anticipation tests failed for every ticker");

  bundle.manifest = make_manifest(
      opt.common, "anticipate",
      {{"n_boot_test1", std::to_string(config.n_boot_test1)},
       {"n_boot_test2", std::to_string(config.n_boot_test2)},
       {"n_boot_test3", std::to_string(config.n_boot_test3)}},
      data.digests);
  bundle.failures = data.failures;
  emit_json_report(bundle, out_dir / "report.json");
  return exit_code_for(data.failures);
}

// ---------------------------------------------------------------------------
// userstats

struct UserStatsOpts {
  CommonOpts common;
  std::string events_path;
  std::string ticker;
  int year = 0;
  std::string month;  // YYYY-MM
};

int run_userstats(const UserStatsOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  if ((opt.year == 0) == opt.month.empty())
    throw InvalidArgument("userstats needs exactly one of --year / --month");

  Window window = Window::year(1970);
  bool yearly = false;
  if (!opt.month.empty()) {
    const TradingDate first = TradingDate::parse(opt.month + "-01");
    window = Window::month(first.year, first.month);
  } else {
    window = Window::year(opt.year);
    yearly = true;
  }

  const std::vector<QueryEvent> events = read_event_log(opt.events_path);
  UserStatsSection section;
  section.window_label = window.label();
  section.tickers_per_user = tickers_per_user(events, window);
  if (yearly)
    section.tickers_per_user_monthly_avg =
        tickers_per_user_monthly_average(events, opt.year);
  if (!opt.ticker.empty()) {
    section.ticker = opt.ticker;
    section.active_days = active_days_per_ticker(events, opt.ticker, window);
    section.one_time_fractions = one_time_fraction_series(events, opt.ticker);
  }

  auto write_distribution = [&](const CountDistribution& d,
                                const fs::path& path) {
    std::string out = "count,fraction\n";
    for (std::size_t i = 0; i < d.support.size(); ++i)
      out += std::to_string(d.support[i]) + "," + shortest(d.mass[i]) + "\n";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    f << out;
  };
  write_distribution(*section.tickers_per_user,
                     out_dir / "tickers_per_user.csv");
  if (section.active_days)
    write_distribution(*section.active_days, out_dir / "active_days.csv");
  if (!section.one_time_fractions.empty()) {
    std::string out = "year,month,fraction,n_users\n";
    for (const auto& f : section.one_time_fractions)
      out += std::to_string(f.year) + "," + std::to_string(f.month) + "," +
             shortest(f.fraction) + "," + std::to_string(f.n_users) + "\n";
    std::ofstream f(out_dir / "one_time_fractions.csv",
                    std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write one_time_fractions.csv");
    f << out;
  }

  std::map<std::string, std::string> params{{"window", window.label()}};
  if (!opt.ticker.empty()) params["ticker"] = opt.ticker;
  ReportBundle bundle;
  bundle.manifest = make_manifest(
      opt.common, "userstats", std::move(params),
      {{fs::path(opt.events_path).filename().string(),
        file_digest(opt.events_path)}});
  bundle.userstats = std::move(section);
  emit_json_report(bundle, out_dir / "report.json");
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  CommonOpts common;
  std::size_t entities = 10;
  CoupledDgpConfig dgp;
  std::string noise_name = "gaussian";
  double market = 0.0;
  std::size_t users = 0;
  int months = 12;
  double p_one_ticker = 0.9;
  double p_one_day = 0.9;
  std::string start_date = "2010-01-04";
};

int run_synth(const SynthOpts& opt) {
  const fs::path out_dir = ensure_out_dir(opt.common);
  CoupledDgpConfig cfg = opt.dgp;
  cfg.noise = opt.noise_name == "student-t" ? NoiseKind::StudentT
                                            : NoiseKind::Gaussian;
  cfg.start_date = TradingDate::parse(opt.start_date);
  cfg.positive = true;  // file formats require non-negative values

  const std::vector<AlignedPair> pool =
      gen_entity_pool(opt.entities, cfg, opt.market, opt.common.seed);
  std::string clean = "# synthetic entities\n";
  for (const auto& pair : pool) {
    const DailySeries query = DailySeries::create(
        pair.entity_id, SeriesKind::QueryVolume, pair.dates, pair.q);
    const DailySeries volume = DailySeries::create(
        pair.entity_id, SeriesKind::TradeVolume, pair.dates, pair.t);
    const DailySeries close =
        gen_close_series(pair.dates, pair.entity_id, opt.common.seed);
    write_series_csv(query, out_dir / (pair.entity_id + ".query.csv"));
    write_finance_csv(close, volume,
                      out_dir / (pair.entity_id + ".finance.csv"));
    clean += pair.entity_id + "\n";
  }
  {
    std::ofstream f(out_dir / "clean_list.txt",
                    std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write clean_list.txt");
    f << clean;
  }
  if (opt.users > 0) {
    UserLogConfig ucfg;
    ucfg.n_users = opt.users;
    for (const auto& pair : pool) ucfg.tickers.push_back(pair.entity_id);
    ucfg.p_one_ticker = opt.p_one_ticker;
    ucfg.p_one_day = opt.p_one_day;
    ucfg.start_year = cfg.start_date.year;
    ucfg.start_month = cfg.start_date.month;
    ucfg.months = opt.months;
    write_event_log(gen_user_log(ucfg, opt.common.seed),
                    out_dir / "events.log");
  }

  std::map<std::string, std::string> params{
      {"entities", std::to_string(opt.entities)},
      {"days", std::to_string(cfg.n_days)},
      {"ar_q", shortest(cfg.ar_q)},
      {"ar_t", shortest(cfg.ar_t)},
      {"beta_qt", shortest(cfg.beta_qt)},
      {"beta_tq", shortest(cfg.beta_tq)},
      {"noise", cfg.noise == NoiseKind::Gaussian ? "gaussian" : "student-t"},
      {"sigma", shortest(cfg.sigma)},
      {"market", shortest(opt.market)},
      {"start", opt.start_date}};
  if (cfg.noise == NoiseKind::StudentT) params["nu"] = shortest(cfg.nu);
  if (opt.users > 0) {
    params["users"] = std::to_string(opt.users);
    params["months"] = std::to_string(opt.months);
    params["p_one_ticker"] = shortest(opt.p_one_ticker);
    params["p_one_day"] = shortest(opt.p_one_day);
  }
  ReportBundle bundle;
  bundle.manifest =
      make_manifest(opt.common, "synth", std::move(params), {});
  emit_json_report(bundle, out_dir / "report.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lead-lag analysis between search interest and trading "
               "activity"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int rc = 0;
  auto guard = [&rc](auto&& fn) {
    // Library errors are configuration or data problems: report and exit 1.
    return [&rc, fn = std::forward<decltype(fn)>(fn)]() {
      try {
        rc = fn();
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
      }
    };
  };

  CcfOpts ccf_opt;
  auto* ccf_cmd = app.add_subcommand(
      "ccf", "Lagged cross correlation tables, optionally after dropping "
             "peak volume days");
  add_common(ccf_cmd, ccf_opt.common, true);
  ccf_cmd->add_option("--max-lag", ccf_opt.max_lag, "Largest lag in days")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();
  ccf_cmd->add_option("--top-drop", ccf_opt.top_drop,
                      "Recompute r(0) after dropping this many highest "
                      "volume days (repeatable)");
  ccf_cmd->add_option("--top-drop-pct", ccf_opt.top_drop_pct,
                      "Like --top-drop but as a percentage of the pair "
                      "length (repeatable)");
  ccf_cmd->add_option("--histogram-bins", ccf_opt.histogram_bins,
                      "Also write per-ticker volume histograms with this "
                      "many bins");
  ccf_cmd->callback(guard([&] { return run_ccf(ccf_opt); }));

  GrangerOpts granger_opt;
  auto* granger_cmd = app.add_subcommand(
      "granger", "Granger causality F tests in both directions");
  add_common(granger_cmd, granger_opt.common, true);
  granger_cmd
      ->add_option("--lag", granger_opt.lag_order, "Autoregression order")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
  granger_cmd
      ->add_option("--dataset", granger_opt.dataset,
                   "Dataset label written to the summary CSV")
      ->capture_default_str();
  granger_cmd->callback(guard([&] { return run_granger(granger_opt); }));

  PermOpts perm_opt;
  auto* perm_cmd = app.add_subcommand(
      "permtest", "Permutation null models for the same day correlation");
  add_common(perm_cmd, perm_opt.common, true);
  perm_cmd
      ->add_option("--scenario", perm_opt.scenario_name,
                   "global, fixed-t (replace queries) or fixed-q (replace "
                   "trading)")
      ->check(CLI::IsMember({"global", "fixed-t", "fixed-q"}))
      ->capture_default_str();
  perm_cmd->add_option("--target", perm_opt.target,
                       "Single entity to test (fixed scenarios); default is "
                       "every ticker");
  perm_cmd
      ->add_option("--n-perm", perm_opt.n_perm, "Number of permutations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  perm_cmd->callback(guard([&] { return run_permtest(perm_opt); }));

  AnticipateOpts ant_opt;
  auto* ant_cmd = app.add_subcommand(
      "anticipate", "Bootstrap model comparison tests 1-3 per ticker");
  add_common(ant_cmd, ant_opt.common, true);
  ant_cmd
      ->add_option("--n-boot-test1", ant_opt.config.n_boot_test1,
                   "Bootstrap resamples for test 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ant_cmd
      ->add_option("--n-boot-test2", ant_opt.config.n_boot_test2,
                   "Bootstrap resamples for test 2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ant_cmd
      ->add_option("--n-boot-test3", ant_opt.config.n_boot_test3,
                   "Bootstrap resamples for test 3")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ant_cmd->add_flag("--fast", ant_opt.fast,
                    "Use 999 resamples everywhere for a quick pass");
  ant_cmd->callback(guard([&] { return run_anticipate(ant_opt); }));

  UserStatsOpts user_opt;
  auto* user_cmd = app.add_subcommand(
      "userstats", "Search behaviour distributions from an event log");
  add_common(user_cmd, user_opt.common, false);
  user_cmd
      ->add_option("--events", user_opt.events_path,
                   "Tab separated event log")
      ->required()
      ->check(CLI::ExistingFile);
  user_cmd->add_option("--ticker", user_opt.ticker,
                       "Also compute per-ticker activity statistics");
  user_cmd->add_option("--year", user_opt.year, "Calendar year window");
  user_cmd->add_option("--month", user_opt.month,
                       "Calendar month window as YYYY-MM");
  user_cmd->callback(guard([&] { return run_userstats(user_opt); }));

  SynthOpts synth_opt;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic fixture dataset with known coupling");
  add_common(synth_cmd, synth_opt.common, false);
  synth_cmd
      ->add_option("--entities", synth_opt.entities, "Number of tickers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd
      ->add_option("--days", synth_opt.dgp.n_days, "Trading days per series")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--ar-q", synth_opt.dgp.ar_q, "AR(1) weight of q")
      ->capture_default_str();
  synth_cmd->add_option("--ar-t", synth_opt.dgp.ar_t, "AR(1) weight of t")
      ->capture_default_str();
  synth_cmd
      ->add_option("--beta-qt", synth_opt.dgp.beta_qt,
                   "Coupling of yesterday's q into today's t")
      ->capture_default_str();
  synth_cmd
      ->add_option("--beta-tq", synth_opt.dgp.beta_tq,
                   "Coupling of yesterday's t into today's q")
      ->capture_default_str();
  synth_cmd
      ->add_option("--noise", synth_opt.noise_name,
                   "Innovation distribution, gaussian or student-t")
      ->check(CLI::IsMember({"gaussian", "student-t"}))
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth_opt.dgp.sigma, "Innovation scale")
      ->capture_default_str();
  synth_cmd
      ->add_option("--nu", synth_opt.dgp.nu,
                   "Student t degrees of freedom (with --noise student-t)")
      ->capture_default_str();
  synth_cmd
      ->add_option("--market", synth_opt.market,
                   "Loading of the shared market factor")
      ->capture_default_str();
  synth_cmd
      ->add_option("--start", synth_opt.start_date, "First trading day")
      ->capture_default_str();
  synth_cmd
      ->add_option("--users", synth_opt.users,
                   "Also generate an event log with this many users")
      ->capture_default_str();
  synth_cmd
      ->add_option("--months", synth_opt.months,
                   "Calendar months covered by the event log")
      ->check(CLI::Range(1, 120))
      ->capture_default_str();
  synth_cmd
      ->add_option("--p-one-ticker", synth_opt.p_one_ticker,
                   "Probability a user searches a single ticker")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd
      ->add_option("--p-one-day", synth_opt.p_one_day,
                   "Probability a user-ticker pair is active one day")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->callback(guard([&] { return run_synth(synth_opt); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
