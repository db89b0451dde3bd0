#include "leadlag/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "leadlag/errors.hpp"
#include "leadlag/rng.hpp"

namespace leadlag {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

ordered_json manifest_json(const RunManifest& m) {
  ordered_json j;
  j["toolkit_version"] = m.toolkit_version;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["parameters"] = ordered_json::object();
  for (const auto& [k, v] : m.parameters) j["parameters"][k] = v;
  j["input_digests"] = ordered_json::object();
  for (const auto& [k, v] : m.input_digests) j["input_digests"][k] = v;
  if (!m.timestamp.empty()) j["timestamp"] = m.timestamp;
  return j;
}

ordered_json distribution_json(const CountDistribution& d) {
  ordered_json j;
  j["support"] = d.support;
  j["mass"] = d.mass;
  j["n_users"] = d.n_users;
  return j;
}

}  // namespace

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(buf.str())));
  return hex;
}

void emit_ccf_table(const CcfTable& table, const std::filesystem::path& path) {
  std::string out = "ticker";
  for (int lag : table.lags) out += ",r_" + std::to_string(lag);
  out.push_back('\n');
  for (const auto& entity : table.per_entity) {
    out += entity.entity_id;
    for (double r : entity.r) {
      out.push_back(',');
      out += fixed4(r);
    }
    out.push_back('\n');
  }
  out += "AVERAGE";
  for (double r : table.mean_r) {
    out.push_back(',');
    out += fixed4(r);
  }
  out.push_back('\n');
  write_text(path, out);
}

void emit_top_drop_table(const TopDropTable& table,
                         const std::filesystem::path& path) {
  std::string out = "ticker,r_0";
  for (const auto& label : table.drop_labels) out += ",r_0_" + label;
  out.push_back('\n');
  for (const auto& row : table.rows) {
    out += row.entity_id;
    out.push_back(',');
    out += fixed4(row.r0);
    for (double r : row.r0_after) {
      out.push_back(',');
      out += fixed4(r);
    }
    out.push_back('\n');
  }
  write_text(path, out);
}

void emit_granger_summary(const GrangerSummary& summary,
                          std::string_view dataset,
                          const std::filesystem::path& path) {
  std::string out =
      "dataset,lag,direction,n,pct_p_lt_05,pct_p_lt_01,mean_rss_reduction\n";
  auto row = [&](const GrangerSummary::Side& side, std::string_view name) {
    out += std::string(dataset) + "," + std::to_string(summary.lag_order) +
           "," + std::string(name) + "," + std::to_string(side.n) + "," +
           fixed4(side.pct_p_lt_05) + "," + fixed4(side.pct_p_lt_01) + "," +
           fixed4(side.mean_rss_reduction) + "\n";
  };
  row(summary.q_to_t, "Q->T");
  row(summary.t_to_q, "T->Q");
  write_text(path, out);
}

void emit_histogram(std::span<const double> values, std::size_t n_bins,
                    const std::filesystem::path& path) {
  if (n_bins < 1) throw InvalidArgument("emit_histogram: n_bins < 1");
  if (values.empty()) throw InvalidArgument("emit_histogram: empty series");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) throw ConstantSeries("emit_histogram: all values equal");
  if (!(hi > 0.0))
    throw InvalidArgument("emit_histogram: maximum must be positive");
  std::vector<std::size_t> counts(n_bins, 0);
  const double bins = static_cast<double>(n_bins);
  for (double v : values) {
    // Values rescaled by the maximum; bin i covers (i/n, (i+1)/n], with
    // the bottom edge folded into the first bin.
    const double scaled = v / hi;
    double idx = std::ceil(scaled * bins) - 1.0;
    if (idx < 0.0) idx = 0.0;
    if (idx >= bins) idx = bins - 1.0;
    ++counts[static_cast<std::size_t>(idx)];
  }
  std::string out = "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < n_bins; ++i) {
    out += fixed4(static_cast<double>(i) / bins) + "," +
           fixed4(static_cast<double>(i + 1) / bins) + "," +
           std::to_string(counts[i]) + "\n";
  }
  write_text(path, out);
}

std::string json_report_string(const ReportBundle& bundle) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["manifest"] = manifest_json(bundle.manifest);

  if (bundle.ccf) {
    ordered_json j;
    j["max_lag"] = bundle.ccf->max_lag;
    j["lags"] = bundle.ccf->lags;
    j["mean_r"] = bundle.ccf->mean_r;
    j["entities"] = ordered_json::array();
    for (const auto& e : bundle.ccf->per_entity) {
      ordered_json je;
      je["entity_id"] = e.entity_id;
      je["r"] = e.r;
      je["n_overlap"] = e.n_overlap;
      j["entities"].push_back(std::move(je));
    }
    doc["ccf"] = std::move(j);
  }

  if (bundle.top_drop) {
    ordered_json j;
    j["labels"] = bundle.top_drop->drop_labels;
    j["rows"] = ordered_json::array();
    for (const auto& row : bundle.top_drop->rows) {
      ordered_json jr;
      jr["entity_id"] = row.entity_id;
      jr["r_0"] = row.r0;
      jr["r_0_after"] = row.r0_after;
      j["rows"].push_back(std::move(jr));
    }
    doc["top_drop"] = std::move(j);
  }

  if (bundle.granger) {
    const GrangerSummary& s = *bundle.granger;
    ordered_json j;
    j["lag_order"] = s.lag_order;
    auto side = [](const GrangerSummary::Side& v) {
      ordered_json js;
      js["n"] = v.n;
      js["pct_p_lt_05"] = v.pct_p_lt_05;
      js["pct_p_lt_01"] = v.pct_p_lt_01;
      js["mean_rss_reduction"] = v.mean_rss_reduction;
      return js;
    };
    j["q_to_t"] = side(s.q_to_t);
    j["t_to_q"] = side(s.t_to_q);
    j["results"] = ordered_json::array();
    for (const auto& r : s.results) {
      ordered_json jr;
      jr["entity_id"] = r.entity_id;
      jr["direction"] = to_string(r.direction);
      jr["lag_order"] = r.lag_order;
      jr["n_eff"] = r.n_eff;
      jr["f_stat"] = r.f_stat;
      jr["p_value"] = r.p_value;
      jr["rss_restricted"] = r.rss_restricted;
      jr["rss_unrestricted"] = r.rss_unrestricted;
      jr["rss_reduction"] = r.rss_reduction;
      j["results"].push_back(std::move(jr));
    }
    if (!s.failures.empty()) {
      j["failures"] = ordered_json::array();
      for (const auto& [entity, reason] : s.failures) {
        ordered_json jf;
        jf["entity_id"] = entity;
        jf["reason"] = reason;
        j["failures"].push_back(std::move(jf));
      }
    }
    doc["granger"] = std::move(j);
  }

  if (!bundle.permutation.empty()) {
    doc["permutation"] = ordered_json::array();
    for (const auto& p : bundle.permutation) {
      ordered_json j;
      j["scenario"] = to_string(p.scenario);
      if (!p.target.empty()) j["target"] = p.target;
      j["n_permutations"] = p.n_permutations;
      j["observed"] = p.observed;
      j["empirical_p"] = p.empirical_p;
      ordered_json js;
      js["min"] = p.null_summary.min;
      js["max"] = p.null_summary.max;
      js["mean"] = p.null_summary.mean;
      js["p05"] = p.null_summary.p05;
      js["p25"] = p.null_summary.p25;
      js["median"] = p.null_summary.median;
      js["p75"] = p.null_summary.p75;
      js["p95"] = p.null_summary.p95;
      j["null"] = std::move(js);
      doc["permutation"].push_back(std::move(j));
    }
  }

  if (!bundle.anticipation.empty()) {
    doc["anticipation"] = ordered_json::array();
    for (const auto& a : bundle.anticipation) {
      ordered_json j;
      j["entity_id"] = a.entity_id;
      j["seed"] = a.seed;
      j["n_boot_test1"] = a.config.n_boot_test1;
      j["n_boot_test2"] = a.config.n_boot_test2;
      j["n_boot_test3"] = a.config.n_boot_test3;
      ordered_json t1;
      t1["delta_qt"] = a.test1.delta_qt;
      t1["delta_tq"] = a.test1.delta_tq;
      t1["delta_qt_raw"] = a.test1.delta_qt_raw;
      t1["delta_tq_raw"] = a.test1.delta_tq_raw;
      t1["p_qt"] = a.test1.p_qt;
      t1["p_tq"] = a.test1.p_tq;
      t1["redraws"] = a.test1.redraws;
      j["test1"] = std::move(t1);
      ordered_json t2;
      t2["rss_qt"] = a.test2.rss_qt;
      t2["rss_tq"] = a.test2.rss_tq;
      t2["pct95_qt"] = a.test2.pct95_qt;
      t2["pct95_tq"] = a.test2.pct95_tq;
      t2["verdict"] = to_string(a.test2.verdict);
      j["test2"] = std::move(t2);
      ordered_json t3;
      t3["u_qt"] = a.test3.u_qt;
      t3["u_tq"] = a.test3.u_tq;
      t3["p_qt"] = a.test3.p_qt;
      t3["p_tq"] = a.test3.p_tq;
      j["test3"] = std::move(t3);
      doc["anticipation"].push_back(std::move(j));
    }
  }

  if (bundle.userstats) {
    const UserStatsSection& u = *bundle.userstats;
    ordered_json j;
    j["window"] = u.window_label;
    if (u.tickers_per_user)
      j["tickers_per_user"] = distribution_json(*u.tickers_per_user);
    if (u.tickers_per_user_monthly_avg)
      j["tickers_per_user_monthly_avg"] =
          distribution_json(*u.tickers_per_user_monthly_avg);
    if (!u.ticker.empty()) j["ticker"] = u.ticker;
    if (u.active_days) j["active_days"] = distribution_json(*u.active_days);
    if (!u.one_time_fractions.empty()) {
      j["one_time_fractions"] = ordered_json::array();
      for (const auto& f : u.one_time_fractions) {
        ordered_json jf;
        jf["year"] = f.year;
        jf["month"] = f.month;
        jf["fraction"] = f.fraction;
        jf["n_users"] = f.n_users;
        j["one_time_fractions"].push_back(std::move(jf));
      }
    }
    doc["userstats"] = std::move(j);
  }

  if (!bundle.failures.empty()) {
    doc["failures"] = ordered_json::array();
    for (const auto& [entity, reason] : bundle.failures) {
      ordered_json jf;
      jf["entity_id"] = entity;
      jf["reason"] = reason;
      doc["failures"].push_back(std::move(jf));
    }
  }
  return doc.dump(2) + "\n";
}

void emit_json_report(const ReportBundle& bundle,
                      const std::filesystem::path& path) {
  write_text(path, json_report_string(bundle));
}

}  // namespace leadlag
