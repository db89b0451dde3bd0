#include "leadlag/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "leadlag/errors.hpp"
#include "leadlag/rng.hpp"
#include "leadlag/stats.hpp"

namespace leadlag {

namespace {

// Re-paired combinations need a reasonable overlap before r(0) says
// anything; shorter intersections are redrawn.
constexpr std::size_t kMinSharedDates = 30;
constexpr std::size_t kRedrawFactor = 1000;

// Spellings match the CLI's --scenario values so reports echo what the
// user typed.
std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Global: return "global";
    case Scenario::FixedT: return "fixed-t";
    case Scenario::FixedQ: return "fixed-q";
  }
  return "global";
}

// r(0) of q from one pair against t from another, matched on dates.
// Returns false when the overlap is below the threshold.
bool cross_r0(const AlignedPair& qa, const AlignedPair& tb, double& out) {
  std::vector<double> qv, tv;
  std::size_t iq = 0;
  for (std::size_t it = 0; it < tb.size(); ++it) {
    while (iq < qa.size() && qa.dates[iq] < tb.dates[it]) ++iq;
    if (iq == qa.size()) break;
    if (qa.dates[iq] == tb.dates[it]) {
      qv.push_back(qa.q[iq]);
      tv.push_back(tb.t[it]);
      ++iq;
    }
  }
  if (qv.size() < kMinSharedDates) return false;
  out = pearson(qv, tv);
  return true;
}

double observed_macro_average(const std::vector<AlignedPair>& pairs) {
  double sum = 0.0;
  for (const auto& p : pairs) sum += pearson(p.q, p.t);
  return sum / static_cast<double>(pairs.size());
}

NullSummary summarize(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  auto pct = [&](double q) {
    const double pos = std::ceil(q * static_cast<double>(values.size()));
    std::size_t i = pos <= 1.0 ? 0 : static_cast<std::size_t>(pos) - 1;
    if (i >= values.size()) i = values.size() - 1;
    return values[i];
  };
  NullSummary s;
  s.min = values.front();
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  s.p05 = pct(0.05);
  s.p25 = pct(0.25);
  s.median = pct(0.50);
  s.p75 = pct(0.75);
  s.p95 = pct(0.95);
  return s;
}

double empirical_p(const std::vector<double>& null_values, double observed) {
  std::size_t at_least = 0;
  for (double v : null_values)
    if (v >= observed) ++at_least;
  return static_cast<double>(at_least + 1) /
         static_cast<double>(null_values.size() + 1);
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  return scenario_name(scenario);
}

PermutationReport global_reshuffle_test(const std::vector<AlignedPair>& pairs,
                                        std::size_t n_perm,
                                        std::uint64_t seed) {
  if (pairs.size() < 2)
    throw TooFewEntities("global reshuffle: need at least 2 entities");
  if (n_perm == 0) throw InvalidArgument("global reshuffle: n_perm == 0");
  const std::size_t k = pairs.size();

  PermutationReport report;
  report.scenario = Scenario::Global;
  report.n_permutations = n_perm;
  report.observed = observed_macro_average(pairs);

  const Rng root = Rng(seed).stream("global_reshuffle");
  std::vector<std::size_t> sigma(k);
  report.null_values.reserve(n_perm);
  for (std::size_t j = 0; j < n_perm; ++j) {
    Rng draw = root.stream(j);
    std::size_t tries = 0;
    for (;;) {
      if (++tries > kRedrawFactor)
        throw RedrawExhausted("global reshuffle: no usable derangement for "
                              "permutation " + std::to_string(j));
      // Uniform permutation, rejected until it has no fixed point so no
      // entity keeps its own partner.
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      for (std::size_t i = k - 1; i > 0; --i)
        std::swap(sigma[i], sigma[draw.next_index(i + 1)]);
      bool derangement = true;
      for (std::size_t i = 0; i < k; ++i)
        if (sigma[i] == i) {
          derangement = false;
          break;
        }
      if (!derangement) continue;

      double sum = 0.0;
      bool usable = true;
      for (std::size_t i = 0; i < k; ++i) {
        double r0;
        if (!cross_r0(pairs[i], pairs[sigma[i]], r0)) {
          usable = false;
          break;
        }
        sum += r0;
      }
      if (!usable) continue;
      report.null_values.push_back(sum / static_cast<double>(k));
      break;
    }
  }
  report.null_summary = summarize(report.null_values);
  report.empirical_p = empirical_p(report.null_values, report.observed);
  return report;
}

PermutationReport per_entity_test(const std::vector<AlignedPair>& pairs,
                                  std::string_view target, Scenario scenario,
                                  std::size_t n_perm, std::uint64_t seed) {
  if (scenario == Scenario::Global)
    throw InvalidArgument("per_entity_test: scenario must fix one side");
  if (n_perm == 0) throw InvalidArgument("per_entity_test: n_perm == 0");
  std::size_t target_idx = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].entity_id == target) {
      target_idx = i;
      break;
    }
  if (target_idx == pairs.size())
    throw NoSuchTicker("per_entity_test: unknown entity '" +
                       std::string(target) + "'");
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (i != target_idx) others.push_back(i);
  if (others.size() < 2)
    throw TooFewEntities("per_entity_test: need at least 2 other entities");

  const AlignedPair& target_pair = pairs[target_idx];
  PermutationReport report;
  report.scenario = scenario;
  report.target = std::string(target);
  report.n_permutations = n_perm;
  report.observed = pearson(target_pair.q, target_pair.t);

  const Rng root = Rng(seed).stream("per_entity").stream(target);
  report.null_values.reserve(n_perm);
  for (std::size_t j = 0; j < n_perm; ++j) {
    Rng draw = root.stream(j);
    std::size_t tries = 0;
    for (;;) {
      if (++tries > kRedrawFactor)
        throw RedrawExhausted("per_entity_test: no usable replacement for "
                              "draw " + std::to_string(j));
      const AlignedPair& other = pairs[others[draw.next_index(others.size())]];
      double r0;
      const bool ok = scenario == Scenario::FixedT
                          ? cross_r0(other, target_pair, r0)
                          : cross_r0(target_pair, other, r0);
      if (!ok) continue;
      report.null_values.push_back(r0);
      break;
    }
  }
  report.null_summary = summarize(report.null_values);
  report.empirical_p = empirical_p(report.null_values, report.observed);
  return report;
}

}  // namespace leadlag
