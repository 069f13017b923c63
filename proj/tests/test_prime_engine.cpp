#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sqfl/errors.hpp"
#include "sqfl/prime_engine.hpp"

using namespace sqfl;

TEST_CASE("prime table agrees with trial division") {
  const auto t = build_prime_table(20000);
  const auto ref = oracle::primes_upto(20000);
  REQUIRE(t.primes().size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(t.primes()[i] == ref[i]);
  for (std::uint64_t n = 0; n <= 20000; n += 7) CHECK(t.is_prime(n) == oracle::is_prime(n));
  for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(t.mobius_value(n) == oracle::mobius(n));
  for (std::uint64_t n = 2; n <= 5000; ++n) CHECK(t.least_prime_factor(n) == oracle::prime_factors(n).front());
}

TEST_CASE("known prime counts") {
  const auto t = build_prime_table(1'000'000);
  CHECK(t.count_up_to(10) == 4);
  CHECK(t.count_up_to(100) == 25);
  CHECK(t.count_up_to(1000) == 168);
  CHECK(t.count_up_to(1'000'000) == 78498);
  CHECK(prime_count(t, 1.9) == 0);
  CHECK(prime_count(t, 2.0) == 1);
  CHECK(prime_count(t, 100.5) == 25);
  CHECK_THROWS_AS(prime_count(t, 2e6), RangeError);
}

TEST_CASE("segmented part of the table matches the linear sieve") {
  PrimeTableOptions small;
  small.memory_budget_bytes = 400'000;  // forces short side tables
  small.segment_size = 1000;
  const auto seg = build_prime_table(300'000, small);
  const auto full = build_prime_table(300'000);
  CHECK(seg.side_limit() < seg.limit());
  REQUIRE(seg.primes().size() == full.primes().size());
  CHECK(std::equal(seg.primes().begin(), seg.primes().end(), full.primes().begin()));
}

TEST_CASE("memory budget too small for the prime list") {
  PrimeTableOptions tiny;
  tiny.memory_budget_bytes = 1000;
  CHECK_THROWS_AS(build_prime_table(10'000'000, tiny), CapacityError);
}

TEST_CASE("range sieve") {
  const auto ps = primes_in_range(1000, 1100);
  std::vector<std::uint64_t> ref;
  for (std::uint64_t n = 1001; n <= 1100; ++n)
    if (oracle::is_prime(n)) ref.push_back(n);
  CHECK(ps == ref);
  CHECK(primes_in_range(2, 3) == std::vector<std::uint64_t>{3});  // (a, b]
  CHECK(primes_in_range(5, 4).empty());
  RangeSieveOptions narrow;
  narrow.max_width = 10;
  CHECK_THROWS_AS(primes_in_range(0, 100, narrow), CapacityError);
}

TEST_CASE("rough count edge cases") {
  const auto t = build_prime_table(10000);
  CHECK(rough_count(0, 5, t) == 0);
  CHECK(rough_count(1, 5, t) == 1);
  CHECK(rough_count(100, 1.5, t) == 100);
  CHECK(rough_count(100, 100, t) == 1);
  CHECK(rough_count(100, 7, t) == 1 + 21);  // 1 and the primes 11..97
  CHECK_THROWS_AS(rough_count(100000, 20000, t), RangeError);
}

TEST_CASE("rough count: recursion, sieve and brute force agree for y <= 10^4") {
  const auto t = build_prime_table(10000);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> ydist(0, 10000);
  std::uniform_real_distribution<double> zdist(0.5, 120.0);
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t y = ydist(rng);
    const double z = zdist(rng);
    const auto ref = oracle::rough(y, z);
    CHECK(rough_count(y, z, t, RoughMethod::recursion) == ref);
    CHECK(rough_count(y, z, t, RoughMethod::sieve) == ref);
    CHECK(rough_count(y, z, t) == ref);
  }
}

TEST_CASE("rough count is nonincreasing in z and nondecreasing in y") {
  const auto t = build_prime_table(1'000'000);
  std::uint64_t prev = rough_count(1'000'000, 2, t);
  for (double z : {3.0, 10.0, 31.6, 100.0, 1000.0, 1e4}) {
    const auto cur = rough_count(1'000'000, z, t);
    CHECK(cur <= prev);
    prev = cur;
  }
  prev = 0;
  for (std::uint64_t y = 0; y <= 1'000'000; y += 99'991) {
    const auto cur = rough_count(y, 50, t);
    CHECK(cur >= prev);
    prev = cur;
  }
  // Large y against the recursion: primes above 1000 plus 1, above sqrt(y).
  CHECK(rough_count(1'000'000, 1000, t) == 1 + 78498 - 168);
}
