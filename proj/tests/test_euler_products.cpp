#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqfl/counting.hpp"
#include "sqfl/errors.hpp"
#include "sqfl/euler_products.hpp"
#include "sqfl/interval.hpp"
#include "sqfl/numeric.hpp"
#include "sqfl/prime_engine.hpp"

using namespace sqfl;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = build_prime_table(200'000);
  return t;
}

// Straight long-double product, for comparison only.
long double naive_product(double y, long double (*factor)(long double)) {
  long double v = 1;
  for (std::uint64_t p : oracle::primes_upto(static_cast<std::uint64_t>(y))) v *= factor(static_cast<long double>(p));
  return v;
}
} // namespace

TEST_CASE("interval arithmetic encloses the exact result") {
  const auto a = Interval::exact(1.0) / Interval::exact(3.0);
  CHECK(a.lo < a.hi);
  CHECK(a.contains(1.0 / 3.0));
  const auto l = Interval::log(10.0);
  CHECK(l.contains(std::log(10.0)));
  const auto q = Interval::quotient(2, 3);
  CHECK(q.lo <= 2.0 / 3.0);
  CHECK(q.hi >= 2.0 / 3.0);
}

TEST_CASE("products against a long double oracle") {
  const auto& t = table();
  for (double y : {2.0, 10.0, 97.0, 1000.0, 65537.0}) {
    const auto m = mertens_product(y, t);
    const auto s = psi_ratio_product(y, t);
    const auto z = zeta2_partial(y, t);
    CHECK(m.value == doctest::Approx(naive_product(y, [](long double p) { return 1 - 1 / p; })).epsilon(1e-13));
    CHECK(s.value == doctest::Approx(naive_product(y, [](long double p) { return p / (p + 1); })).epsilon(1e-13));
    CHECK(z.value == doctest::Approx(naive_product(y, [](long double p) { return p * p / (p * p - 1); })).epsilon(1e-13));
  }
}

TEST_CASE("known product values") {
  const auto& t = table();
  CHECK(mertens_product(2, t).value == 0.5);
  CHECK(mertens_product(10, t).value == doctest::Approx(8.0 / 35.0).epsilon(1e-15));
  CHECK(psi_ratio_product(6, t).value == doctest::Approx(2.0 / 3 * 3 / 4 * 5 / 6).epsilon(1e-15));
  CHECK(zeta2_partial(2, t).value == 4.0 / 3.0);
  CHECK(zeta2_partial(3.5, t).value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(mertens_product(100, t).source == BoundSource::rosser_schoenfeld);
  CHECK(to_string(BoundSource::zeta2_range) == "zeta2_range");
  CHECK_THROWS_AS(mertens_product(1.5, t), DomainError);
  CHECK_THROWS_AS(zeta2_partial(1e7, t), RangeError);
}

TEST_CASE("bounds bracket the products") {
  const auto& t = table();
  for (double y : {3.0, 10.0, 100.0, 1000.0, 1e5}) {
    CHECK(mertens_product(y, t).strictly_inside());
    CHECK(psi_ratio_product(y, t).strictly_inside());
    const auto z = zeta2_partial(y, t);
    CHECK(z.lower <= z.value);
    CHECK(z.value < z.upper);
  }
}

TEST_CASE("enclosure scans up to 2*10^5") {
  const auto& t = table();
  for (auto kind : {ProductKind::mertens, ProductKind::psi_ratio, ProductKind::zeta2}) {
    const auto scan = verify_enclosure(kind, 200'000, t);
    CHECK(scan.boundaries_checked == t.count_up_to(200'000));
    CHECK(scan.violations == 0);
    CHECK(scan.double_violations == 0);
    // The zeta2 lower bound 4/3 is attained at y = 2.
    CHECK(scan.min_lower_gap >= 0);
    if (kind != ProductKind::zeta2) CHECK(scan.min_lower_gap > 0);
    CHECK(scan.min_upper_gap > 0);
    if (kind == ProductKind::zeta2) {
      CHECK(scan.monotone);
      CHECK(scan.exact_at_two);
    }
  }
}

TEST_CASE("requirement check") {
  const auto& t = table();
  const auto r = requirement_check(2, 2.5, 3, 14, t);
  CHECK(r.lhs == 1.5);
  CHECK(r.passed);
  CHECK(r.slack == doctest::Approx(r.rhs - r.lhs));
  // A tiny kappa' fails where the product over several primes is large.
  CHECK_FALSE(requirement_check(2, 1000, 0.1, 0.01, t).passed);
  CHECK_THROWS_AS(requirement_check(1.5, 10, 3, 14, t), DomainError);
  CHECK_THROWS_AS(requirement_check(10, 5, 3, 14, t), DomainError);
}

TEST_CASE("sieve density product") {
  const auto& t = table();
  const auto ctx = SiftingContext::build(t, 30, {1, 0.5});
  CHECK(sieve_density_product(ctx) ==
        doctest::Approx(7.0 / 8 * 11 / 12 * 13 / 14 * 17 / 18 * 19 / 20 * 23 / 24 * 29 / 30).epsilon(1e-15));
  const auto wide = SiftingContext::build(t, 10, {20, 0.5});
  CHECK(sieve_density_product(wide) == 1.0);
}
