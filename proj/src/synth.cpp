#include "leadlag/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "leadlag/errors.hpp"
#include "leadlag/rng.hpp"

namespace leadlag {

namespace {

constexpr std::size_t kBurnIn = 200;

double draw_noise(const CoupledDgpConfig& cfg, Rng& rng) {
  if (cfg.noise == NoiseKind::Gaussian) return cfg.sigma * rng.next_gaussian();
  return cfg.sigma * rng.next_student_t(cfg.nu);
}

std::vector<TradingDate> weekday_calendar(TradingDate start, std::size_t n) {
  std::vector<TradingDate> dates;
  dates.reserve(n);
  TradingDate d = start.is_weekday() ? start : start.next_weekday();
  for (std::size_t i = 0; i < n; ++i) {
    dates.push_back(d);
    d = d.next_weekday();
  }
  return dates;
}

AlignedPair simulate(const CoupledDgpConfig& cfg, Rng rng,
                     std::span<const double> factor, double loading,
                     std::string entity_id) {
  const std::size_t total = kBurnIn + cfg.n_days;
  Rng innovations = rng.stream("innovations");
  std::vector<double> xq(total + 1, 0.0), xt(total + 1, 0.0);
  for (std::size_t i = 1; i <= total; ++i) {
    const double f = loading != 0.0 ? loading * factor[i - 1] : 0.0;
    const double eq = draw_noise(cfg, innovations);
    const double et = draw_noise(cfg, innovations);
    xq[i] = cfg.ar_q * xq[i - 1] + cfg.beta_tq * xt[i - 1] + f + eq;
    xt[i] = cfg.ar_t * xt[i - 1] + cfg.beta_qt * xq[i - 1] + f + et;
  }
  AlignedPair pair;
  pair.entity_id = std::move(entity_id);
  pair.dates = weekday_calendar(cfg.start_date, cfg.n_days);
  pair.q.reserve(cfg.n_days);
  pair.t.reserve(cfg.n_days);
  for (std::size_t i = kBurnIn + 1; i <= total; ++i) {
    if (cfg.positive) {
      pair.q.push_back(std::exp(xq[i] / cfg.positive_scale));
      pair.t.push_back(std::exp(xt[i] / cfg.positive_scale));
    } else {
      pair.q.push_back(xq[i]);
      pair.t.push_back(xt[i]);
    }
  }
  return pair;
}

std::vector<double> factor_path(Rng rng, std::size_t n) {
  Rng stream = rng.stream("market_factor");
  std::vector<double> f(n);
  for (auto& v : f) v = stream.next_gaussian();
  return f;
}

}  // namespace

double CoupledDgpConfig::spectral_radius() const {
  // Eigenvalues of [[ar_q, beta_tq], [beta_qt, ar_t]].
  const double tr = ar_q + ar_t;
  const double det = ar_q * ar_t - beta_tq * beta_qt;
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::fabs(0.5 * (tr + root)),
                    std::fabs(0.5 * (tr - root)));
  }
  return std::sqrt(det);  // complex pair, |lambda|^2 = det
}

void CoupledDgpConfig::validate() const {
  if (n_days < 2) throw InvalidArgument("dgp: n_days must be at least 2");
  if (!(sigma > 0.0)) throw InvalidArgument("dgp: sigma must be positive");
  if (noise == NoiseKind::StudentT && !(nu > 0.0))
    throw InvalidArgument("dgp: nu must be positive");
  if (!(positive_scale > 0.0))
    throw InvalidArgument("dgp: positive_scale must be positive");
  if (!TradingDate::valid(start_date.year, start_date.month, start_date.day))
    throw InvalidArgument("dgp: invalid start date");
  const double radius = spectral_radius();
  if (!(radius < 1.0 - 1e-9))
    throw NonStationaryConfig("dgp: spectral radius " +
                              std::to_string(radius) + " is not below 1");
}

AlignedPair gen_coupled_pair(const CoupledDgpConfig& cfg, std::uint64_t seed,
                             std::string entity_id) {
  cfg.validate();
  const Rng root(seed);
  std::vector<double> factor;
  if (cfg.market_loading != 0.0)
    factor = factor_path(root, kBurnIn + cfg.n_days);
  // Derive the stream before the call; the id is moved out by the last
  // argument and the evaluation order between the two is unspecified.
  const Rng entity_stream = root.stream(entity_id);
  return simulate(cfg, entity_stream, factor, cfg.market_loading,
                  std::move(entity_id));
}

std::vector<AlignedPair> gen_entity_pool(std::size_t k,
                                         const CoupledDgpConfig& cfg,
                                         double market_strength,
                                         std::uint64_t seed) {
  cfg.validate();
  if (k == 0) throw InvalidArgument("gen_entity_pool: k must be positive");
  const Rng root(seed);
  // One factor path shared by the whole pool; entities differ only in
  // their innovation streams, keyed by entity id.
  std::vector<double> factor;
  if (market_strength != 0.0)
    factor = factor_path(root, kBurnIn + cfg.n_days);
  std::vector<AlignedPair> pool;
  pool.reserve(k);
  int width = 3;
  for (std::size_t v = k; v >= 1000 && width < 20; v /= 10) ++width;
  for (std::size_t i = 1; i <= k; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "E%0*zu", width, i);
    std::string id(buf);
    pool.push_back(
        simulate(cfg, root.stream(id), factor, market_strength, id));
  }
  return pool;
}

DailySeries gen_close_series(std::span<const TradingDate> dates,
                             std::string entity_id, std::uint64_t seed) {
  Rng rng = Rng(seed).stream("close").stream(entity_id);
  std::vector<double> values;
  values.reserve(dates.size());
  double w = 0.0;
  for (std::size_t i = 0; i < dates.size(); ++i) {
    w += 0.02 * rng.next_gaussian();
    values.push_back(100.0 * std::exp(w));
  }
  return DailySeries::create(std::move(entity_id), SeriesKind::ClosePrice,
                             {dates.begin(), dates.end()}, std::move(values));
}

std::vector<QueryEvent> gen_user_log(const UserLogConfig& cfg,
                                     std::uint64_t seed) {
  if (cfg.n_users == 0) throw InvalidArgument("user log: n_users == 0");
  if (cfg.tickers.empty()) throw InvalidArgument("user log: no tickers");
  if (cfg.p_one_ticker < 1.0 && cfg.tickers.size() < 2)
    throw InvalidArgument("user log: multi ticker users need 2+ tickers");
  if (cfg.p_one_ticker < 0.0 || cfg.p_one_ticker > 1.0 ||
      cfg.p_one_day < 0.0 || cfg.p_one_day > 1.0)
    throw InvalidArgument("user log: probabilities outside [0, 1]");
  if (cfg.months < 1 || cfg.start_month < 1 || cfg.start_month > 12 ||
      !TradingDate::valid(cfg.start_year, cfg.start_month, 1))
    throw InvalidArgument("user log: bad month range");

  const Rng root(seed);
  std::vector<QueryEvent> events;
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "u%06zu", u + 1);
    const std::string user_id(buf);
    Rng rng = root.stream(user_id);

    // All of a user's activity falls in one month, so per month and whole
    // range behaviour statistics see the same planted fractions.
    const int month_offset = static_cast<int>(rng.next_index(
        static_cast<std::size_t>(cfg.months)));
    const int month0 = (cfg.start_month - 1) + month_offset;
    const int year = cfg.start_year + month0 / 12;
    const int month = month0 % 12 + 1;
    int days_in_month = 31;
    while (!TradingDate::valid(year, month, days_in_month)) --days_in_month;

    std::size_t n_tickers = 1;
    if (rng.next_double() >= cfg.p_one_ticker)
      n_tickers = 2 + rng.next_index(std::min<std::size_t>(
                          3, cfg.tickers.size() - 1));
    std::vector<std::size_t> ticker_idx(cfg.tickers.size());
    for (std::size_t i = 0; i < ticker_idx.size(); ++i) ticker_idx[i] = i;
    for (std::size_t i = 0; i < n_tickers; ++i) {
      const std::size_t j = i + rng.next_index(ticker_idx.size() - i);
      std::swap(ticker_idx[i], ticker_idx[j]);
    }

    for (std::size_t ti = 0; ti < n_tickers; ++ti) {
      const std::string& ticker = cfg.tickers[ticker_idx[ti]];
      std::size_t n_days = 1;
      if (rng.next_double() >= cfg.p_one_day)
        n_days = 2 + rng.next_index(3);
      n_days = std::min(n_days, static_cast<std::size_t>(days_in_month));
      // Distinct days of the month via a partial shuffle.
      std::vector<int> days(static_cast<std::size_t>(days_in_month));
      for (std::size_t i = 0; i < days.size(); ++i)
        days[i] = static_cast<int>(i) + 1;
      for (std::size_t i = 0; i < n_days; ++i) {
        const std::size_t j = i + rng.next_index(days.size() - i);
        std::swap(days[i], days[j]);
      }
      for (std::size_t di = 0; di < n_days; ++di) {
        QueryEvent e;
        e.date = TradingDate{static_cast<std::int16_t>(year),
                             static_cast<std::int8_t>(month),
                             static_cast<std::int8_t>(days[di])};
        e.seconds = static_cast<std::int32_t>(rng.next_index(86400));
        e.user_id = user_id;
        e.ticker = ticker;
        events.push_back(std::move(e));
        // Occasionally a second query the same day; it must not change
        // any distinct day statistic.
        if (rng.next_double() < 0.2) {
          QueryEvent extra = events.back();
          extra.seconds = static_cast<std::int32_t>(rng.next_index(86400));
          events.push_back(std::move(extra));
        }
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const QueryEvent& a, const QueryEvent& b) {
              if (a.date != b.date) return a.date < b.date;
              if (a.seconds != b.seconds) return a.seconds < b.seconds;
              if (a.user_id != b.user_id) return a.user_id < b.user_id;
              return a.ticker < b.ticker;
            });
  return events;
}

}  // namespace leadlag
