#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leadlag/anticipation.hpp"
#include "leadlag/crosscorr.hpp"
#include "leadlag/granger.hpp"
#include "leadlag/permutation.hpp"
#include "leadlag/userstats.hpp"

namespace leadlag {

// Run manifest embedded in every JSON report. Reports are pure functions
// of (inputs, parameters, seed): rerunning with an equal manifest yields
// byte identical files. The timestamp is whatever the caller supplies
// (empty by default) so that reruns stay reproducible.
struct RunManifest {
  std::string toolkit_version;
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::string timestamp;
};

std::string file_digest(const std::filesystem::path& path);

// Per entity r(0) before and after removing the top volume days.
struct TopDropRow {
  std::string entity_id;
  double r0 = 0.0;
  std::vector<double> r0_after;  // one per drop spec, NaN when it failed
};

struct TopDropTable {
  std::vector<std::string> drop_labels;  // "top5", "top5pct", ...
  std::vector<TopDropRow> rows;          // sorted by entity id
};

struct UserStatsSection {
  std::string window_label;
  std::optional<CountDistribution> tickers_per_user;
  std::optional<CountDistribution> tickers_per_user_monthly_avg;
  std::string ticker;  // for the per ticker statistics below
  std::optional<CountDistribution> active_days;
  std::vector<MonthlyFraction> one_time_fractions;
};

// Everything a run may want to publish. Absent sections are omitted from
// the JSON document; an empty bundle still emits the manifest.
struct ReportBundle {
  RunManifest manifest;
  std::optional<CcfTable> ccf;
  std::optional<TopDropTable> top_drop;
  std::optional<GrangerSummary> granger;
  std::vector<PermutationReport> permutation;
  std::vector<AnticipationReport> anticipation;
  std::optional<UserStatsSection> userstats;
  std::vector<std::pair<std::string, std::string>> failures;  // entity, reason
};

// CSV, one row per entity plus a final AVERAGE row, correlations fixed to
// four decimals. Columns: ticker,r_-L,...,r_L.
void emit_ccf_table(const CcfTable& table, const std::filesystem::path& path);

void emit_top_drop_table(const TopDropTable& table,
                         const std::filesystem::path& path);

// CSV keyed by (dataset, lag, direction) with rejection percentages and the
// mean RSS reduction.
void emit_granger_summary(const GrangerSummary& summary,
                          std::string_view dataset,
                          const std::filesystem::path& path);

// Histogram of a series rescaled by its maximum onto [0, 1], n_bins equal
// width bins, each bin left open and right closed except the first which
// keeps zero. CSV columns: bin_left,bin_right,count. Throws ConstantSeries
// when all values are equal and InvalidArgument for n_bins < 1.
void emit_histogram(std::span<const double> values, std::size_t n_bins,
                    const std::filesystem::path& path);

// Single JSON document with schema_version, the manifest and every present
// section. Key order is fixed and numbers keep full round trip precision.
void emit_json_report(const ReportBundle& bundle,
                      const std::filesystem::path& path);

std::string json_report_string(const ReportBundle& bundle);

}  // namespace leadlag
