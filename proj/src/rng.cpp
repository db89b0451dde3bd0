#include "leadlag/rng.hpp"

#include <cmath>
#include <numbers>

#include "leadlag/errors.hpp"

namespace leadlag {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kIndexSalt = 0xA24BAED4963EE407ull;
constexpr std::uint64_t kLabelSalt = 0x9FB21C651E98DF25ull;

// splitmix64 finalizer. Bijective on 64-bit words, which keeps derived
// stream keys collision free for distinct inputs of the same shape.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) : key_(mix(seed + kGamma)) {}

Rng Rng::stream(std::uint64_t index) const {
  return Rng(FromKey{}, mix(key_ ^ mix(index + kIndexSalt)));
}

Rng Rng::stream(std::string_view label) const {
  return Rng(FromKey{}, mix(key_ ^ (fnv1a64(label) + kLabelSalt)));
}

std::uint64_t Rng::next_u64() { return mix(key_ + (++counter_) * kGamma); }

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_double() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::size_t Rng::next_index(std::size_t n) {
  if (n == 0) throw InvalidArgument("next_index needs n > 0");
  const std::uint64_t bound = n;
  // Lemire's multiply-shift with rejection of the biased low range.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold)
      return static_cast<std::size_t>(m >> 64);
  }
}

double Rng::next_gaussian() {
  // Box-Muller, cosine branch only: two uniforms per draw, no carry state,
  // so a stream's output depends on nothing but its counter.
  const double u1 = next_open_double();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::next_gamma(double shape) {
  if (shape < 1.0) {
    const double u = next_open_double();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia and Tsang squeeze method.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = next_gaussian();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = next_open_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::next_student_t(double nu) {
  if (!(nu > 0.0)) throw InvalidArgument("student t needs nu > 0");
  const double z = next_gaussian();
  const double chi2 = 2.0 * next_gamma(0.5 * nu);
  return z / std::sqrt(chi2 / nu);
}

}  // namespace leadlag
