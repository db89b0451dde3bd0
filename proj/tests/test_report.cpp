#include <doctest.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "leadlag/crosscorr.hpp"
#include "leadlag/errors.hpp"
#include "leadlag/report.hpp"
#include "leadlag/rng.hpp"

using namespace leadlag;
using testutil::TempDir;
using testutil::read_text;
using testutil::write_text;

namespace {

RunManifest sample_manifest() {
  RunManifest m;
  m.toolkit_version = "0.1.0";
  m.command = "ccf";
  m.seed = 42;
  m.parameters = {{"max_lag", "5"}};
  m.input_digests = {{"data/a.csv", "00aa11bb22cc33dd"}};
  return m;
}

}  // namespace

TEST_CASE("file digest is stable and content sensitive") {
  TempDir tmp;
  const auto a = tmp.file("a.txt");
  const auto b = tmp.file("b.txt");
  write_text(a, "hello\n");
  write_text(b, "hello\n");
  const std::string da = file_digest(a);
  CHECK(da.size() == 16);
  CHECK(da.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(file_digest(b) == da);
  write_text(b, "hello!\n");
  CHECK(file_digest(b) != da);
}

TEST_CASE("histograms use right closed bins scaled by the maximum") {
  TempDir tmp;
  const auto path = tmp.file("hist.csv");
  emit_histogram(std::vector<double>{1, 2, 4}, 2, path);
  // Rescaled values 0.25, 0.5, 1.0: the first two land in (0, 0.5], the
  // last in (0.5, 1].
  CHECK(read_text(path) ==
        "bin_left,bin_right,count\n"
        "0.0000,0.5000,2\n"
        "0.5000,1.0000,1\n");

  emit_histogram(std::vector<double>{0.0, 0.1, 1.0}, 4, path);
  const std::string text = read_text(path);
  // Zero folds into the first bin; 0.1 lands in (0, 0.25] too.
  CHECK(text.find("0.0000,0.2500,2") != std::string::npos);
  CHECK(text.find("0.7500,1.0000,1") != std::string::npos);

  CHECK_THROWS_AS(emit_histogram(std::vector<double>{3, 3, 3}, 4, path),
                  ConstantSeries);
  CHECK_THROWS_AS(emit_histogram(std::vector<double>{1, 2}, 0, path),
                  InvalidArgument);
  CHECK_THROWS_AS(emit_histogram(std::vector<double>{}, 3, path),
                  InvalidArgument);
  CHECK_THROWS_AS(emit_histogram(std::vector<double>{-2, -1}, 3, path),
                  InvalidArgument);
}

TEST_CASE("ccf tables end with an average row at four decimals") {
  TempDir tmp;
  CcfResult a;
  a.entity_id = "AAA";
  a.max_lag = 1;
  a.lags = {-1, 0, 1};
  a.r = {0.1, 0.5, 0.30004};
  a.n_overlap = {9, 10, 9};
  CcfResult b = a;
  b.entity_id = "BBB";
  b.r = {0.3, 0.7, 0.1};
  const CcfTable table = ccf_average({a, b});

  const auto path = tmp.file("ccf.csv");
  emit_ccf_table(table, path);
  CHECK(read_text(path) ==
        "ticker,r_-1,r_0,r_1\n"
        "AAA,0.1000,0.5000,0.3000\n"
        "BBB,0.3000,0.7000,0.1000\n"
        "AVERAGE,0.2000,0.6000,0.2000\n");
}

TEST_CASE("top drop tables carry one column per drop spec") {
  TempDir tmp;
  TopDropTable table;
  table.drop_labels = {"top5", "top1pct"};
  TopDropRow row;
  row.entity_id = "AAA";
  row.r0 = 0.5;
  row.r0_after = {0.25, 0.375};
  table.rows.push_back(row);
  const auto path = tmp.file("drop.csv");
  emit_top_drop_table(table, path);
  CHECK(read_text(path) ==
        "ticker,r_0,r_0_top5,r_0_top1pct\n"
        "AAA,0.5000,0.2500,0.3750\n");
}

TEST_CASE("granger summaries emit one row per direction") {
  TempDir tmp;
  GrangerSummary s;
  s.lag_order = 3;
  s.q_to_t = {87, 24.1379, 9.1954, 0.0312};
  s.t_to_q = {87, 6.8966, 1.1494, 0.0101};
  const auto path = tmp.file("granger.csv");
  emit_granger_summary(s, "Q", path);
  CHECK(read_text(path) ==
        "dataset,lag,direction,n,pct_p_lt_05,pct_p_lt_01,mean_rss_reduction\n"
        "Q,3,Q->T,87,24.1379,9.1954,0.0312\n"
        "Q,3,T->Q,87,6.8966,1.1494,0.0101\n");
}

TEST_CASE("json reports are deterministic and omit absent sections") {
  ReportBundle bundle;
  bundle.manifest = sample_manifest();
  const std::string once = json_report_string(bundle);
  CHECK(once == json_report_string(bundle));
  CHECK(once.back() == '\n');

  const auto doc = nlohmann::json::parse(once);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("manifest").at("command") == "ccf");
  CHECK(doc.at("manifest").at("seed") == 42);
  CHECK(doc.at("manifest").at("parameters").at("max_lag") == "5");
  CHECK_FALSE(doc.contains("ccf"));
  CHECK_FALSE(doc.contains("granger"));
  CHECK_FALSE(doc.contains("anticipation"));
  // No timestamp was supplied, so none is recorded.
  CHECK_FALSE(doc.at("manifest").contains("timestamp"));

  ReportBundle stamped = bundle;
  stamped.manifest.timestamp = "2010-07-01T00:00:00Z";
  const auto doc2 =
      nlohmann::json::parse(json_report_string(stamped));
  CHECK(doc2.at("manifest").at("timestamp") == "2010-07-01T00:00:00Z");
}

TEST_CASE("json reports carry the analysis sections when present") {
  TempDir tmp;
  ReportBundle bundle;
  bundle.manifest = sample_manifest();

  CcfResult r;
  r.entity_id = "AAA";
  r.max_lag = 1;
  r.lags = {-1, 0, 1};
  r.r = {0.125, 0.5, 0.25};
  r.n_overlap = {9, 10, 9};
  bundle.ccf = ccf_average({r});
  bundle.failures.emplace_back("BBB", "file went missing");

  const auto path = tmp.file("report.json");
  emit_json_report(bundle, path);
  const auto doc = nlohmann::json::parse(read_text(path));
  CHECK(doc.at("ccf").at("mean_r")[1] == 0.5);
  CHECK(doc.at("ccf").at("entities")[0].at("entity_id") == "AAA");
  CHECK(doc.at("failures")[0].at("entity_id") == "BBB");
  CHECK(doc.at("failures")[0].at("reason") == "file went missing");

  // Round trip precision: 0.125 survives exactly, and a re-emit is
  // byte identical.
  CHECK(doc.at("ccf").at("entities")[0].at("r")[0] == 0.125);
  const std::string text = read_text(path);
  emit_json_report(bundle, path);
  CHECK(read_text(path) == text);
}
