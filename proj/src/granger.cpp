#include "leadlag/granger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leadlag/errors.hpp"
#include "leadlag/parallel.hpp"
#include "leadlag/stats.hpp"

namespace leadlag {

std::string_view to_string(Direction direction) {
  return direction == Direction::QtoT ? "Q->T" : "T->Q";
}

GrangerResult granger_test(const AlignedPair& pair, Direction direction,
                           int lag_order) {
  if (lag_order < 1) throw InvalidArgument("granger_test: lag_order < 1");
  const std::size_t p = static_cast<std::size_t>(lag_order);
  const std::size_t n = pair.size();
  // n_eff rows remain after dropping the first p (no full lag history),
  // and the unrestricted model burns 2p + 1 parameters.
  if (n < 3 * p + 2)
    throw SeriesTooShort("granger_test: need at least " +
                         std::to_string(3 * p + 2) + " rows, have " +
                         std::to_string(n));
  const std::vector<double>& resp =
      direction == Direction::QtoT ? pair.t : pair.q;
  const std::vector<double>& other =
      direction == Direction::QtoT ? pair.q : pair.t;

  const std::size_t n_eff = n - p;
  std::vector<double> y(resp.begin() + p, resp.end());
  std::vector<std::vector<double>> cols;
  cols.reserve(2 * p);
  for (std::size_t l = 1; l <= p; ++l)
    cols.emplace_back(resp.begin() + (p - l), resp.end() - l);
  for (std::size_t l = 1; l <= p; ++l)
    cols.emplace_back(other.begin() + (p - l), other.end() - l);

  const std::vector<std::vector<double>> own_lags(cols.begin(),
                                                  cols.begin() + p);
  const OlsFit restricted = ols(y, own_lags, true);
  const OlsFit unrestricted = ols(y, cols, true);

  GrangerResult out;
  out.entity_id = pair.entity_id;
  out.direction = direction;
  out.lag_order = lag_order;
  out.n_eff = n_eff;
  out.rss_restricted = restricted.rss;
  out.rss_unrestricted = unrestricted.rss;
  out.rss_reduction =
      restricted.rss > 0.0
          ? (restricted.rss - unrestricted.rss) / restricted.rss
          : 0.0;

  const double df2 = static_cast<double>(n_eff) - 2.0 * lag_order - 1.0;
  if (unrestricted.rss <= 0.0) {
    // Perfect unrestricted fit; the F statistic degenerates upward.
    out.f_stat = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    return out;
  }
  const double num = (restricted.rss - unrestricted.rss) / lag_order;
  out.f_stat = std::max(0.0, num / (unrestricted.rss / df2));
  out.p_value =
      1.0 - f_cdf(out.f_stat, lag_order, static_cast<int>(df2));
  return out;
}

GrangerSummary granger_batch(const std::vector<AlignedPair>& pairs,
                             int lag_order, unsigned workers) {
  GrangerSummary summary;
  summary.lag_order = lag_order;

  struct Slot {
    std::vector<GrangerResult> results;
    std::string error;
  };
  std::vector<Slot> slots(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    try {
      slots[i].results.push_back(
          granger_test(pairs[i], Direction::QtoT, lag_order));
      slots[i].results.push_back(
          granger_test(pairs[i], Direction::TtoQ, lag_order));
    } catch (const Error& e) {
      slots[i].results.clear();
      slots[i].error = e.what();
    }
  });

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!slots[i].error.empty()) {
      summary.failures.emplace_back(pairs[i].entity_id, slots[i].error);
      continue;
    }
    for (auto& r : slots[i].results) summary.results.push_back(std::move(r));
  }
  std::sort(summary.results.begin(), summary.results.end(),
            [](const GrangerResult& a, const GrangerResult& b) {
              if (a.entity_id != b.entity_id) return a.entity_id < b.entity_id;
              return a.direction < b.direction;
            });
  std::sort(summary.failures.begin(), summary.failures.end());

  auto fill = [&](Direction d, GrangerSummary::Side& side) {
    std::size_t n = 0, lt05 = 0, lt01 = 0;
    double reduction = 0.0;
    for (const auto& r : summary.results) {
      if (r.direction != d) continue;
      ++n;
      if (r.p_value < 0.05) ++lt05;
      if (r.p_value < 0.01) ++lt01;
      reduction += r.rss_reduction;
    }
    side.n = n;
    if (n > 0) {
      side.pct_p_lt_05 = 100.0 * static_cast<double>(lt05) / n;
      side.pct_p_lt_01 = 100.0 * static_cast<double>(lt01) / n;
      side.mean_rss_reduction = reduction / static_cast<double>(n);
    }
  };
  fill(Direction::QtoT, summary.q_to_t);
  fill(Direction::TtoQ, summary.t_to_q);
  return summary;
}

}  // namespace leadlag
