#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "leadlag/rng.hpp"

using leadlag::Rng;

TEST_CASE("identical seeds give identical sequences") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  bool all_equal = true;
  Rng a2(42);
  for (int i = 0; i < 10; ++i)
    if (a2.next_u64() != c.next_u64()) all_equal = false;
  CHECK_FALSE(all_equal);
}

TEST_CASE("child streams do not depend on parent consumption") {
  Rng fresh(7);
  const std::uint64_t want = fresh.stream("boot").next_u64();

  Rng used(7);
  for (int i = 0; i < 50; ++i) used.next_u64();
  CHECK(used.stream("boot").next_u64() == want);

  // Distinct labels and indices give distinct streams.
  Rng root(7);
  CHECK(root.stream("boot").next_u64() != root.stream("perm").next_u64());
  CHECK(root.stream(0).next_u64() != root.stream(1).next_u64());
  CHECK(root.stream("a").stream(3).next_u64() !=
        root.stream("b").stream(3).next_u64());
}

TEST_CASE("next_double stays in the half open unit interval") {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.05));

  Rng rng2(2);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng2.next_open_double();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("next_index is unbiased across small ranges") {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  const int draws = 14000;
  for (int i = 0; i < draws; ++i) {
    const std::size_t k = rng.next_index(7);
    REQUIRE(k < 7);
    ++counts[k];
  }
  const double expected = draws / 7.0;
  for (int c : counts) {
    CHECK(c > expected * 0.85);
    CHECK(c < expected * 1.15);
  }
  Rng rng2(4);
  for (int i = 0; i < 20; ++i) CHECK(rng2.next_index(1) == 0);
}

TEST_CASE("gaussian draws have unit variance") {
  Rng rng(5);
  const int n = 20000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sq += g * g;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("student t draws are symmetric and finite") {
  Rng rng(6);
  int negative = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double t = rng.next_student_t(3.0);
    REQUIRE(std::isfinite(t));
    if (t < 0.0) ++negative;
  }
  CHECK(std::abs(negative / static_cast<double>(n) - 0.5) < 0.02);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(leadlag::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(leadlag::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(leadlag::fnv1a64("foobar") == 0x85944171f73967e8ull);
}
