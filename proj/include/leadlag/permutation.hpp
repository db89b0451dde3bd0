#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/series.hpp"

namespace leadlag {

// Permutation null models for the same day correlation r(0).
//
// Observed statistic: the macro average of each entity's own r(0). Null
// draws re-pair query and trade series across entities, re-align each
// re-paired combination on its shared dates, and average again. A re-paired
// combination with fewer than 30 shared dates triggers a redraw.

enum class Scenario { Global, FixedT, FixedQ };

std::string_view to_string(Scenario scenario);

struct NullSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double p05 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
};

struct PermutationReport {
  Scenario scenario = Scenario::Global;
  std::string target;  // entity under test for per entity scenarios
  std::size_t n_permutations = 0;
  double observed = 0.0;
  NullSummary null_summary;
  std::vector<double> null_values;  // one per permutation, draw order
  double empirical_p = 1.0;         // (1 + #{null >= observed}) / (n + 1)
};

// Scenario Global: every permutation re-pairs all entities at once with a
// random derangement (no entity keeps its own partner). Requires at least
// two entities with distinct ids.
PermutationReport global_reshuffle_test(const std::vector<AlignedPair>& pairs,
                                        std::size_t n_perm,
                                        std::uint64_t seed);

// Scenario FixedT keeps the target's trade series and substitutes query
// series drawn from random other entities; FixedQ is the mirror image.
// Requires at least two other entities to draw from (TooFewEntities).
PermutationReport per_entity_test(const std::vector<AlignedPair>& pairs,
                                  std::string_view target, Scenario scenario,
                                  std::size_t n_perm, std::uint64_t seed);

}  // namespace leadlag
