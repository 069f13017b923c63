#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sqfl/counting.hpp"
#include "sqfl/errors.hpp"
#include "sqfl/numeric.hpp"
#include "sqfl/prime_engine.hpp"

using namespace sqfl;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = build_prime_table(1'000'000);
  return t;
}
} // namespace

TEST_CASE("Q(x) against the square-free sieve") {
  const auto& t = table();
  const auto sf = oracle::squarefree_flags(20000);
  std::uint64_t running = 0;
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    if (sf[n]) ++running;
    CHECK(count_squarefree(static_cast<double>(n), t).exact == running);
  }
  CHECK(count_squarefree(10, t).exact == 7);
  CHECK_THROWS_AS(count_squarefree(0.5, t), DomainError);
  CHECK(count_squarefree(10.9, t).exact == 7);
  CHECK(count_squarefree(1e6, t).exact == 607926);
  const auto b = count_squarefree(10, t);
  CHECK(b.main_term == doctest::Approx(10 / kZeta2).epsilon(1e-15));
  CHECK(b.residual == doctest::Approx(7 - 10 / kZeta2));
  CHECK_THROWS_AS(count_squarefree(-1, t), DomainError);
  CHECK_THROWS_AS(count_squarefree(NAN, t), DomainError);
  CHECK_THROWS_AS(count_squarefree(1e13, t), RangeError);
}

TEST_CASE("|A_d| against brute force") {
  const auto& t = table();
  for (std::uint64_t d : {1, 2, 3, 5, 6, 7, 10, 30, 31, 210, 2310}) {
    for (std::uint64_t x : {1, 5, 100, 1234, 5000}) {
      CHECK(count_ad(static_cast<double>(x), d, t).exact == oracle::count_ad(x, d));
    }
  }
  CHECK(count_ad(100, 101, t).exact == 0);
  CHECK_THROWS_AS(count_ad(0.5, 1, t), DomainError);
  CHECK_THROWS_AS(count_ad(100, 4, t), DomainError);
  CHECK(count_ad(1000, 6, t).main_term == doctest::Approx(1000 / (kZeta2 * 12)));
}

TEST_CASE("square-free coprime count") {
  const auto& t = table();
  const std::uint64_t ps[] = {2, 3, 7};
  std::uint64_t ref = 0;
  for (std::uint64_t m = 1; m <= 5000; ++m)
    if (oracle::is_squarefree(m) && m % 2 && m % 3 && m % 7) ++ref;
  CHECK(count_squarefree_coprime(5000, ps, t) == ref);
}

TEST_CASE("lambda spec validation") {
  const auto& t = table();
  CHECK_THROWS_AS(LambdaSpec({1, 0}).validate(), DomainError);
  CHECK_THROWS_AS(LambdaSpec({1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(LambdaSpec({-1, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(SiftingContext::build(t, 1e7, {1, 0.5}), RangeError);
  const auto ctx = SiftingContext::build(t, 30, {1, 0.5});
  CHECK(ctx.P().size() == 3);
  CHECK(ctx.P_prime().size() == 7);
  CHECK(ctx.P_prime().front() == 7);
}

TEST_CASE("Q_P and A(y) against brute force") {
  const auto& t = table();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> xd(1, 3000), ed(0.2, 0.9), cd(0.5, 2.0);
  for (int i = 0; i < 40; ++i) {
    const double x = std::floor(xd(rng)) + 0.5 * (i % 2);
    const LambdaSpec spec{cd(rng), ed(rng)};
    if (spec(x) < 1) continue;
    const auto ctx = SiftingContext::build(t, x, spec);
    const auto n = static_cast<std::uint64_t>(x);
    const double lam = ctx.lambda_value();
    CHECK(count_qp(ctx) == oracle::count_qp(n, lam));
    CHECK(sifted_count(ctx) == oracle::count_qp(n, lam));
    const double y = std::floor(x * 0.37);
    CHECK(count_a(y, ctx) == oracle::count_a(static_cast<std::uint64_t>(y), lam));
  }
}

TEST_CASE("count-qp example and include_one") {
  const auto& t = table();
  const auto ctx = SiftingContext::build(t, 30, {1, 0.5});
  CHECK(count_qp(ctx) == 8);
  CountOptions no_one;
  no_one.include_one = false;
  CHECK(count_qp(ctx, no_one) == 7);
  CHECK(sifted_count(ctx, no_one) == 7);
  CHECK(count_a(30, ctx) - count_a(30, ctx, no_one) == 1);
  CHECK_THROWS_AS(count_a(31, ctx), DomainError);
}

TEST_CASE("sifted count equals Q_P with several threads") {
  const auto& t = table();
  for (double x : {100.0, 500.0, 1000.0, 5000.0, 10000.0, 200000.0}) {
    for (double e : {0.3, 0.5, 0.7}) {
      const auto ctx = SiftingContext::build(t, x, {1, e});
      CountOptions par;
      par.threads = 4;
      const auto q = count_qp(ctx);
      CHECK(q == count_qp(ctx, par));
      CHECK(q == sifted_count(ctx, par));
    }
  }
}

TEST_CASE("sandwich pi(y) - pi(x^eps) <= A(y) <= Phi(y, x^eps)") {
  const auto& t = table();
  const auto ctx = SiftingContext::build(t, 50000, {1, 0.4});
  const double lam = ctx.lambda_value();
  for (double y = lam; y <= 50000; y *= 1.37) {
    const auto a = count_a(y, ctx);
    CHECK(prime_count(t, y) - prime_count(t, lam) <= a);
    CHECK(a <= rough_count(static_cast<std::uint64_t>(y), lam, t));
  }
}

TEST_CASE("divisor enumeration") {
  const auto& t = table();
  const auto ctx = SiftingContext::build(t, 100, {1, 0.5});  // P' = 11..97
  const auto ds = p_divisors(ctx, 100);
  REQUIRE(!ds.empty());
  CHECK(ds.front() == PDivisor{1, 1, 0});
  CHECK(ds.size() == 1 + 21);  // no product of two primes > 10 is <= 100
  const auto big = SiftingContext::build(t, 1e6, {1, 0.3});
  CHECK_THROWS_AS(p_divisors(big, 1e6, 1000), CapacityError);
  CountOptions capped;
  capped.divisor_cap = 1000;
  CHECK_THROWS_AS(sifted_count(big, capped), CapacityError);
  const std::uint64_t ps[] = {2, 3, 5, 7};
  CHECK(count_products_up_to(ps, 30) == 10);  // 2 3 5 7 6 10 14 15 21 30
}
