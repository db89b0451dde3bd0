#include "leadlag/anticipation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leadlag/errors.hpp"
#include "leadlag/stats.hpp"

namespace leadlag {

namespace {

// Redraw bookkeeping shared by the bootstrap loops. A draw whose fit turns
// out rank deficient is replaced by the next draw from the same stream;
// the overall attempt budget stops pathological inputs from spinning.
struct RedrawBudget {
  std::size_t attempts = 0;
  std::size_t redraws = 0;
  std::size_t limit = 0;

  void charge() {
    if (++attempts > limit)
      throw RedrawExhausted(
          "bootstrap redraw budget exhausted after " +
          std::to_string(attempts - 1) + " attempts");
  }
};

double rss_of(const RegressionFrame& frame, std::size_t n_cols) {
  std::vector<std::vector<double>> cols(frame.cols.begin(),
                                        frame.cols.begin() + n_cols);
  return ols(frame.y, cols, true).rss;
}

// RSS of the restricted (first column only) and full nested model,
// fitted on the same rows.
struct NestedRss {
  double restricted = 0.0;
  double unrestricted = 0.0;
};

NestedRss nested_rss(const RegressionFrame& frame) {
  return {rss_of(frame, 1), rss_of(frame, 2)};
}

void check_pair(const AlignedPair& pair, std::size_t n_boot) {
  if (n_boot == 0) throw InvalidArgument("n_boot must be positive");
  // The widest model has three parameters; ask for a little headroom.
  if (pair.size() < 6)
    throw SeriesTooShort("anticipation tests: need at least 6 rows, have " +
                         std::to_string(pair.size()));
}

double per_row_delta(const NestedRss& r, std::size_t rows) {
  return (r.restricted - r.unrestricted) / static_cast<double>(rows);
}

// One bootstrap reduction for a nested frame, redrawing singular samples.
double boot_delta(const RegressionFrame& frame, Rng rng, RedrawBudget& budget) {
  for (;;) {
    budget.charge();
    RegressionFrame sample = resample_rows(frame, rng);
    try {
      return per_row_delta(nested_rss(sample), sample.rows());
    } catch (const RankDeficient&) {
      ++budget.redraws;
    }
  }
}

double boot_rss(const RegressionFrame& frame, std::size_t n_cols, Rng rng,
                RedrawBudget& budget) {
  for (;;) {
    budget.charge();
    RegressionFrame sample = resample_rows(frame, rng);
    try {
      return rss_of(sample, n_cols);
    } catch (const RankDeficient&) {
      ++budget.redraws;
    }
  }
}

// Paired RSS draws for the nested pair, both models on the same rows.
NestedRss boot_nested(const RegressionFrame& frame, Rng rng,
                      RedrawBudget& budget) {
  for (;;) {
    budget.charge();
    RegressionFrame sample = resample_rows(frame, rng);
    try {
      return nested_rss(sample);
    } catch (const RankDeficient&) {
      ++budget.redraws;
    }
  }
}

// Empirical rank p: how unusual is this direction's reduction against the
// bootstrap reductions of the opposite direction? Counting the bootstrap
// values strictly above the statistic puts the floor at 1 / (n_boot + 1).
double rank_p(double stat, const std::vector<double>& opposite_boot) {
  std::size_t above = 0;
  for (double v : opposite_boot)
    if (v > stat) ++above;
  return static_cast<double>(above + 1) /
         static_cast<double>(opposite_boot.size() + 1);
}

std::vector<double> standardized(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= n;
  if (var == 0.0)
    throw ZeroVariance("anticipation test 2: constant series");
  const double sd = std::sqrt(var);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return out;
}

// Single cross regressor frame: response[i] against other[i-1] only.
RegressionFrame cross_frame(const std::vector<double>& response,
                            const std::vector<double>& other) {
  RegressionFrame frame;
  frame.y.assign(response.begin() + 1, response.end());
  frame.cols.emplace_back(other.begin(), other.end() - 1);
  return frame;
}

// Nearest rank percentile: sorted[ceil(q n) - 1].
double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = std::ceil(q * static_cast<double>(v.size()));
  std::size_t i = pos <= 1.0 ? 0 : static_cast<std::size_t>(pos) - 1;
  if (i >= v.size()) i = v.size() - 1;
  return v[i];
}

}  // namespace

RegressionFrame lag1_frame(std::span<const double> response,
                           std::span<const double> other) {
  if (response.size() != other.size())
    throw InvalidArgument("lag1_frame: length mismatch");
  if (response.size() < 3)
    throw SeriesTooShort("lag1_frame: need at least 3 points");
  RegressionFrame frame;
  frame.y.assign(response.begin() + 1, response.end());
  frame.cols.emplace_back(response.begin(), response.end() - 1);
  frame.cols.emplace_back(other.begin(), other.end() - 1);
  return frame;
}

RegressionFrame resample_rows(const RegressionFrame& frame, Rng& rng) {
  const std::size_t n = frame.rows();
  if (n == 0) throw InvalidArgument("resample_rows: empty frame");
  RegressionFrame out;
  out.y.reserve(n);
  out.cols.assign(frame.cols.size(), {});
  for (auto& c : out.cols) c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = rng.next_index(n);
    out.y.push_back(frame.y[row]);
    for (std::size_t j = 0; j < frame.cols.size(); ++j)
      out.cols[j].push_back(frame.cols[j][row]);
  }
  return out;
}

Test1Result anticipation_test1(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng) {
  check_pair(pair, n_boot);
  const RegressionFrame frame_qt = lag1_frame(pair.t, pair.q);
  const RegressionFrame frame_tq = lag1_frame(pair.q, pair.t);

  Test1Result out;
  const NestedRss real_qt = nested_rss(frame_qt);
  const NestedRss real_tq = nested_rss(frame_tq);
  out.delta_qt_raw = real_qt.restricted - real_qt.unrestricted;
  out.delta_tq_raw = real_tq.restricted - real_tq.unrestricted;
  out.delta_qt = per_row_delta(real_qt, frame_qt.rows());
  out.delta_tq = per_row_delta(real_tq, frame_tq.rows());

  RedrawBudget budget;
  budget.limit = 100 * n_boot;
  std::vector<double> boot_qt(n_boot), boot_tq(n_boot);
  const Rng qt_stream = rng.stream("qt");
  const Rng tq_stream = rng.stream("tq");
  for (std::size_t i = 0; i < n_boot; ++i) {
    boot_qt[i] = boot_delta(frame_qt, qt_stream.stream(i), budget);
    boot_tq[i] = boot_delta(frame_tq, tq_stream.stream(i), budget);
  }
  out.p_qt = rank_p(out.delta_qt, boot_tq);
  out.p_tq = rank_p(out.delta_tq, boot_qt);
  out.redraws = budget.redraws;
  return out;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::QtoT: return "Q->T";
    case Verdict::TtoQ: return "T->Q";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Test2Result anticipation_test2(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng) {
  check_pair(pair, n_boot);
  // Standardizing both sides puts the two cross model residuals on one
  // scale, which the verdict comparison needs.
  const std::vector<double> qs = standardized(pair.q);
  const std::vector<double> ts = standardized(pair.t);
  const RegressionFrame frame_qt = cross_frame(ts, qs);  // t_now ~ q_prev
  const RegressionFrame frame_tq = cross_frame(qs, ts);  // q_now ~ t_prev

  Test2Result out;
  out.rss_qt = rss_of(frame_qt, 1);
  out.rss_tq = rss_of(frame_tq, 1);

  RedrawBudget budget;
  budget.limit = 100 * n_boot;
  std::vector<double> boot_qt(n_boot), boot_tq(n_boot);
  const Rng qt_stream = rng.stream("qt");
  const Rng tq_stream = rng.stream("tq");
  for (std::size_t i = 0; i < n_boot; ++i) {
    boot_qt[i] = boot_rss(frame_qt, 1, qt_stream.stream(i), budget);
    boot_tq[i] = boot_rss(frame_tq, 1, tq_stream.stream(i), budget);
  }
  out.pct95_qt = percentile(boot_qt, 0.95);
  out.pct95_tq = percentile(boot_tq, 0.95);

  // A direction is supported when the opposing model's real residual lies
  // at or beyond this direction's 95th bootstrap percentile. Supporting
  // both ways is contradictory and stays inconclusive.
  const bool support_qt = out.rss_tq >= out.pct95_qt;
  const bool support_tq = out.rss_qt >= out.pct95_tq;
  if (support_qt && !support_tq)
    out.verdict = Verdict::QtoT;
  else if (support_tq && !support_qt)
    out.verdict = Verdict::TtoQ;
  else
    out.verdict = Verdict::Inconclusive;
  return out;
}

Test3Result anticipation_test3(const AlignedPair& pair, std::size_t n_boot,
                               Rng rng) {
  check_pair(pair, n_boot);
  const RegressionFrame frame_qt = lag1_frame(pair.t, pair.q);
  const RegressionFrame frame_tq = lag1_frame(pair.q, pair.t);

  RedrawBudget budget;
  budget.limit = 100 * n_boot;
  const double p_floor = 1.0 / static_cast<double>(n_boot + 1);

  auto run_side = [&](const RegressionFrame& frame, std::string_view label,
                      double& u_out, double& p_out) {
    std::vector<double> rss_restricted(n_boot), rss_unrestricted(n_boot);
    const Rng side_stream = rng.stream(label);
    for (std::size_t i = 0; i < n_boot; ++i) {
      const NestedRss draw = boot_nested(frame, side_stream.stream(i), budget);
      rss_restricted[i] = draw.restricted;
      rss_unrestricted[i] = draw.unrestricted;
    }
    const MannWhitneyResult mw = mann_whitney_u(
        rss_unrestricted, rss_restricted, TailAlternative::Less);
    u_out = mw.u;
    p_out = std::clamp(mw.p_value, p_floor, 1.0);
  };

  Test3Result out;
  run_side(frame_qt, "qt", out.u_qt, out.p_qt);
  run_side(frame_tq, "tq", out.u_tq, out.p_tq);
  return out;
}

AnticipationReport run_anticipation_tests(const AlignedPair& pair,
                                          const AnticipationConfig& config,
                                          std::uint64_t master_seed) {
  const Rng base = Rng(master_seed).stream(pair.entity_id);
  AnticipationReport report;
  report.entity_id = pair.entity_id;
  report.config = config;
  report.seed = master_seed;
  report.test1 =
      anticipation_test1(pair, config.n_boot_test1, base.stream("test1"));
  report.test2 =
      anticipation_test2(pair, config.n_boot_test2, base.stream("test2"));
  report.test3 =
      anticipation_test3(pair, config.n_boot_test3, base.stream("test3"));
  return report;
}

}  // namespace leadlag
