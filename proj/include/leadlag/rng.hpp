#pragma once

#include <cstdint>
#include <string_view>

namespace leadlag {

// Counter-based pseudo random generator built on the splitmix64 finalizer.
// Output i of a stream is a pure function of (key, i), so independent
// streams can be derived for every entity, purpose and resample iteration
// and consumed in any order. Two runs with the same master seed produce
// the same draws regardless of how work is scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derived child streams. The child key depends only on the parent key
  // and the label, never on how much the parent has been consumed.
  Rng stream(std::uint64_t index) const;
  Rng stream(std::string_view label) const;

  std::uint64_t next_u64();
  double next_double();             // uniform on [0, 1)
  double next_open_double();        // uniform on (0, 1]
  std::size_t next_index(std::size_t n);  // uniform on [0, n), n > 0
  double next_gaussian();           // standard normal, Box-Muller
  double next_student_t(double nu); // Student t with nu > 0 degrees of freedom

 private:
  struct FromKey {};
  Rng(FromKey, std::uint64_t key) : key_(key) {}

  double next_gamma(double shape);  // Marsaglia-Tsang, unit scale

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// 64-bit FNV-1a hash, also used for input digests in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace leadlag
