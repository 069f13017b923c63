#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sqfl/errors.hpp"
#include "sqfl/multiplicative.hpp"
#include "sqfl/prime_engine.hpp"

using namespace sqfl;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = build_prime_table(100'000);
  return t;
}
} // namespace

TEST_CASE("rational arithmetic") {
  const Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a + Rational(1, 2) == Rational(-1));
  CHECK(a * Rational(2, 3) == Rational(-1));
  CHECK(a - a == Rational(0));
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  const Rational big(std::int64_t{1} << 62, 3);
  CHECK_THROWS_AS(big * big, OverflowError);
}

TEST_CASE("arithmetic functions against brute force") {
  const auto& t = table();
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(mobius(n, t) == oracle::mobius(n));
    CHECK(omega(n, t) == oracle::prime_factors(n).size());
    CHECK(euler_phi(n, t) == oracle::euler_phi(n));
  }
  // Beyond the side table: trial division path.
  const std::uint64_t big = 99'991ull * 99'989ull * 2;
  CHECK(mobius(big, t) == -1);
  CHECK(omega(big, t) == 3);
  CHECK(mobius(99'991ull * 99'991ull, t) == 0);
}

TEST_CASE("dedekind psi and sieve weight") {
  const auto& t = table();
  CHECK(dedekind_psi(1, t) == 1);
  CHECK(dedekind_psi(6, t) == 12);
  CHECK(dedekind_psi(30, t) == 72);
  CHECK_THROWS_AS(dedekind_psi(12, t), DomainError);
  CHECK(sieve_weight(6, t) == Rational(1, 2));
  CHECK(sieve_weight(2310, t) == Rational(2310, 6912));
  CHECK_THROWS_AS(sieve_weight(8, t), DomainError);
  CHECK(principal_character(9, 6) == 0);
  CHECK(principal_character(5, 6) == 1);
  CHECK(principal_character(7, 1) == 1);
}

TEST_CASE("multiplicativity on coprime pairs") {
  const auto& t = table();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 300);
  int checked = 0;
  while (checked < 400) {
    const std::uint64_t a = dist(rng), b = dist(rng);
    if (std::gcd(a, b) != 1) continue;
    ++checked;
    CHECK(mobius(a * b, t) == mobius(a, t) * mobius(b, t));
    CHECK(euler_phi(a * b, t) == euler_phi(a, t) * euler_phi(b, t));
    if (oracle::is_squarefree(a) && oracle::is_squarefree(b)) {
      CHECK(dedekind_psi(a * b, t) == dedekind_psi(a, t) * dedekind_psi(b, t));
      CHECK(sieve_weight(a * b, t) == sieve_weight(a, t) * sieve_weight(b, t));
    }
  }
}

TEST_CASE("sum of phi over divisors is n, sum of mu over divisors is [n = 1]") {
  const auto& t = table();
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    std::uint64_t phi_sum = 0;
    int mu_sum = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      phi_sum += euler_phi(d, t);
      mu_sum += mobius(d, t);
      if (d * d != n) {
        phi_sum += euler_phi(n / d, t);
        mu_sum += mobius(n / d, t);
      }
    }
    CHECK(phi_sum == n);
    CHECK(mu_sum == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("square-free divisors") {
  const auto& t = table();
  CHECK(squarefree_divisors(30, t) == std::vector<std::uint64_t>{1, 2, 3, 5, 6, 10, 15, 30});
  CHECK(squarefree_divisors(1, t) == std::vector<std::uint64_t>{1});
  CHECK(squarefree_divisors(2310, t).size() == 32);
  CHECK_THROWS_AS(squarefree_divisors(12, t), DomainError);
  CHECK(divisors_from_primes({5, 2}) == std::vector<std::uint64_t>{1, 2, 5, 10});
}

TEST_CASE("factorize beyond the table") {
  const auto t = build_prime_table(100);
  CHECK(factorize(97ull * 89, t).distinct_primes == std::vector<std::uint64_t>{89, 97});
  CHECK_THROWS_AS(factorize(1'000'003ull * 999'983ull, t), RangeError);
}
