#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sqfl/prime_engine.hpp"

namespace sqfl {

// Threshold lambda(x) = coefficient * x^exponent.
struct LambdaSpec {
  double coefficient = 1.0;
  double exponent = 0.5;

  // DomainError unless coefficient > 0 and exponent in (0, 1).
  void validate() const;
  double operator()(double x) const;
};

struct CountBreakdown {
  std::uint64_t exact = 0;
  double main_term = 0.0;
  double residual = 0.0;  // exact - main_term
};

// The prime universe [2, x] split at lambda(x): P = primes <= lambda(x) and
// P' = primes in (lambda(x), x]. Both are views into the table, so the table
// must outlive the context. P(y) = prod of P' primes is never formed.
class SiftingContext {
public:
  // Needs table.limit() >= floor(x) and lambda(x) >= 1.
  static SiftingContext build(const PrimeTable& table, double x, LambdaSpec lambda);

  double x() const { return x_; }
  std::uint64_t n() const { return n_; }
  const LambdaSpec& lambda() const { return lambda_; }
  double lambda_value() const { return lambda_value_; }
  std::span<const std::uint64_t> P() const { return primes_.subspan(0, split_); }
  std::span<const std::uint64_t> P_prime() const { return primes_.subspan(split_); }
  const PrimeTable& table() const { return *table_; }

private:
  const PrimeTable* table_ = nullptr;
  double x_ = 0;
  std::uint64_t n_ = 0;
  LambdaSpec lambda_;
  double lambda_value_ = 0;
  std::span<const std::uint64_t> primes_;  // all primes <= x
  std::size_t split_ = 0;
};

struct CountOptions {
  bool include_one = true;
  // Worker count for root-level DFS partitioning; 0 = hardware concurrency.
  unsigned threads = 1;
  // Upper bound on enumerated divisors of P(x).
  std::uint64_t divisor_cap = 100'000'000;
};

// Q(x) = sum_{l <= sqrt x} mu(l) floor(x / l^2); main term x / zeta(2).
// Needs the Moebius side table up to sqrt(x).
CountBreakdown count_squarefree(double x, const PrimeTable& table);

// #{m <= M square-free, gcd(m, D) = 1} where D is the product of `primes`
// (distinct, any order).
std::uint64_t count_squarefree_coprime(std::uint64_t m, std::span<const std::uint64_t> primes,
                                       const PrimeTable& table);

// |A_d| = #{n <= x square-free : d | n}; main term x / (zeta(2) psi(d)).
CountBreakdown count_ad(double x, std::uint64_t d, const PrimeTable& table);

// Q_P(x): square-free n <= x with every prime factor in P.
std::uint64_t count_qp(const SiftingContext& ctx, const CountOptions& options = {});

// S(A, P', x) = sum_{d | P(x), d <= x} mu(d) |A_d|, exact inclusion-exclusion.
std::uint64_t sifted_count(const SiftingContext& ctx, const CountOptions& options = {});

// A(y) = #{n <= y : n | P(x)}; y <= x.
std::uint64_t count_a(double y, const SiftingContext& ctx, const CountOptions& options = {});

struct PDivisor {
  std::uint64_t d;
  int mu;
  unsigned omega;
  bool operator==(const PDivisor&) const = default;
};

// Every square-free product of distinct P' primes that is <= bound, in DFS
// preorder over ascending primes, starting with d = 1. CapacityError once
// more than divisor_cap values would be produced.
void enumerate_p_divisors(const SiftingContext& ctx, double bound, const std::function<void(const PDivisor&)>& visit,
                          std::uint64_t divisor_cap = 100'000'000);

std::vector<PDivisor> p_divisors(const SiftingContext& ctx, double bound, std::uint64_t divisor_cap = 100'000'000);

// Number of square-free products (> 1) of distinct primes from `primes`
// (ascending) that are <= limit. Counts the last level in bulk by binary
// search instead of visiting it.
std::uint64_t count_products_up_to(std::span<const std::uint64_t> primes, std::uint64_t limit, unsigned threads = 1);

} // namespace sqfl
