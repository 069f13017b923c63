#include "sqfl/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "sqfl/errors.hpp"
#include "sqfl/multiplicative.hpp"
#include "sqfl/numeric.hpp"
#include "sqfl/parallel.hpp"

namespace sqfl {

void LambdaSpec::validate() const {
  if (!std::isfinite(coefficient) || coefficient <= 0)
    throw DomainError("lambda coefficient must be a positive real");
  if (!std::isfinite(exponent) || exponent <= 0 || exponent >= 1)
    throw DomainError("lambda exponent must lie in (0, 1)");
}

double LambdaSpec::operator()(double x) const { return coefficient * std::pow(x, exponent); }

SiftingContext SiftingContext::build(const PrimeTable& table, double x, LambdaSpec lambda) {
  lambda.validate();
  if (!std::isfinite(x) || x < 1) throw DomainError("x must be a real >= 1");
  SiftingContext ctx;
  ctx.table_ = &table;
  ctx.x_ = x;
  ctx.n_ = floor_to_count(x, "x");
  if (ctx.n_ > table.limit())
    throw RangeError("sifting context needs primes up to " + std::to_string(ctx.n_) + ", table limit is " +
                     std::to_string(table.limit()));
  ctx.lambda_ = lambda;
  ctx.lambda_value_ = lambda(x);
  if (ctx.lambda_value_ < 1) throw DomainError("lambda(x) must be >= 1");
  const auto all = table.primes();
  const std::size_t upto_x = static_cast<std::size_t>(table.count_up_to(ctx.n_));
  ctx.primes_ = all.subspan(0, upto_x);
  const double lam = ctx.lambda_value_;
  ctx.split_ = static_cast<std::size_t>(
      std::upper_bound(ctx.primes_.begin(), ctx.primes_.end(), lam,
                       [](double v, std::uint64_t p) { return v < static_cast<double>(p); }) -
      ctx.primes_.begin());
  return ctx;
}

namespace {

std::uint64_t squarefree_upto(std::uint64_t m, const PrimeTable& table) {
  if (m == 0) return 0;
  const std::uint64_t root = isqrt(m);
  if (root > table.side_limit())
    throw RangeError("Q(" + std::to_string(m) + ") needs the Moebius table up to " + std::to_string(root) +
                     ", side table ends at " + std::to_string(table.side_limit()));
  std::int64_t total = 0;
  for (std::uint64_t l = 1; l <= root; ++l) {
    const int mu = table.mobius_value(l);
    if (mu != 0) total += mu * static_cast<std::int64_t>(m / (l * l));
  }
  return static_cast<std::uint64_t>(total);
}

// f(M, S) = f(M, S \ {p}) - f(M / p, S): square-free m coprime to S \ {p}
// either avoid p or are p times a square-free m' coprime to all of S.
std::uint64_t coprime_rec(std::uint64_t m, std::span<const std::uint64_t> primes, const PrimeTable& table) {
  if (m == 0) return 0;
  if (primes.empty()) return squarefree_upto(m, table);
  const std::uint64_t p = primes.back();
  return coprime_rec(m, primes.first(primes.size() - 1), table) - coprime_rec(m / p, primes, table);
}

std::uint64_t count_products_from(std::span<const std::uint64_t> primes, std::size_t start, std::uint64_t limit) {
  const auto end_it = std::upper_bound(primes.begin() + static_cast<std::ptrdiff_t>(start), primes.end(), limit);
  const std::size_t end = static_cast<std::size_t>(end_it - primes.begin());
  if (end <= start) return 0;
  std::uint64_t total = end - start;
  for (std::size_t i = start; i < end && i + 1 < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (primes[i + 1] > limit / p) break;
    total += count_products_from(primes, i + 1, limit / p);
  }
  return total;
}

} // namespace

CountBreakdown count_squarefree(double x, const PrimeTable& table) {
  if (!std::isfinite(x) || x < 1) throw DomainError("count_squarefree needs x >= 1");
  const std::uint64_t n = floor_to_count(x, "x");
  CountBreakdown out;
  out.exact = squarefree_upto(n, table);
  out.main_term = x / kZeta2;
  out.residual = static_cast<double>(out.exact) - out.main_term;
  return out;
}

std::uint64_t count_squarefree_coprime(std::uint64_t m, std::span<const std::uint64_t> primes,
                                       const PrimeTable& table) {
  return coprime_rec(m, primes, table);
}

CountBreakdown count_ad(double x, std::uint64_t d, const PrimeTable& table) {
  if (!std::isfinite(x) || x < 1) throw DomainError("count_ad needs x >= 1");
  if (d == 0) throw DomainError("d must be a positive integer");
  const auto f = factorize(d, table);
  if (!f.squarefree) throw DomainError(std::to_string(d) + " is not square-free");
  const std::uint64_t n = floor_to_count(x, "x");
  std::uint64_t psi = 1;
  for (std::uint64_t p : f.distinct_primes) psi = checked_mul(psi, p + 1);

  CountBreakdown out;
  out.exact = d > n ? 0 : coprime_rec(n / d, f.distinct_primes, table);
  out.main_term = x / (kZeta2 * static_cast<double>(psi));
  out.residual = static_cast<double>(out.exact) - out.main_term;
  return out;
}

std::uint64_t count_products_up_to(std::span<const std::uint64_t> primes, std::uint64_t limit, unsigned threads) {
  if (primes.empty() || limit < primes.front()) return 0;
  const std::size_t end = static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), limit) - primes.begin());
  // Root partition: subtree i holds every product whose smallest prime is primes[i].
  std::size_t roots = 0;
  while (roots < end && roots + 1 < primes.size() && primes[roots + 1] <= limit / primes[roots]) ++roots;
  std::vector<std::uint64_t> partial(roots, 0);
  parallel_for(roots, threads, [&](std::size_t i) {
    partial[i] = count_products_from(primes, i + 1, limit / primes[i]);
  });
  return end + std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t count_qp(const SiftingContext& ctx, const CountOptions& options) {
  return count_products_up_to(ctx.P(), ctx.n(), options.threads) + (options.include_one ? 1 : 0);
}

std::uint64_t count_a(double y, const SiftingContext& ctx, const CountOptions& options) {
  if (std::isnan(y)) throw DomainError("y is NaN");
  if (y > ctx.x()) throw DomainError("count_a needs y <= x");
  if (y < 1) return 0;
  const std::uint64_t m = static_cast<std::uint64_t>(std::floor(y));
  return count_products_up_to(ctx.P_prime(), m, options.threads) + (options.include_one ? 1 : 0);
}

namespace {

struct DivisorWalker {
  std::span<const std::uint64_t> primes;
  std::uint64_t cap;
  const std::function<void(const PDivisor&)>& visit;
  std::uint64_t emitted = 0;

  void emit(std::uint64_t d, unsigned w) {
    if (++emitted > cap)
      throw CapacityError("divisor enumeration exceeded cap of " + std::to_string(cap) + " terms");
    visit(PDivisor{d, (w % 2 == 0) ? 1 : -1, w});
  }

  void walk(std::uint64_t d, unsigned w, std::size_t start, std::uint64_t bound) {
    for (std::size_t i = start; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (p > bound / d) break;
      emit(d * p, w + 1);
      walk(d * p, w + 1, i + 1, bound);
    }
  }
};

} // namespace

void enumerate_p_divisors(const SiftingContext& ctx, double bound, const std::function<void(const PDivisor&)>& visit,
                          std::uint64_t divisor_cap) {
  if (std::isnan(bound)) throw DomainError("bound is NaN");
  if (bound > ctx.x()) throw DomainError("divisor bound must not exceed x");
  if (bound < 1) return;
  DivisorWalker walker{ctx.P_prime(), divisor_cap, visit};
  walker.emit(1, 0);
  walker.walk(1, 0, 0, static_cast<std::uint64_t>(std::floor(bound)));
}

std::vector<PDivisor> p_divisors(const SiftingContext& ctx, double bound, std::uint64_t divisor_cap) {
  std::vector<PDivisor> out;
  enumerate_p_divisors(ctx, bound, [&](const PDivisor& v) { out.push_back(v); }, divisor_cap);
  return out;
}

namespace {

// Signed sum of mu(d) |A_d| over the subtree rooted at d (d included).
std::int64_t sift_subtree(std::span<const std::uint64_t> primes, std::vector<std::uint64_t>& stack, std::uint64_t d,
                          std::size_t start, std::uint64_t n, const PrimeTable& table) {
  const std::uint64_t ad = coprime_rec(n / d, stack, table);
  std::int64_t total = (stack.size() % 2 == 0) ? static_cast<std::int64_t>(ad) : -static_cast<std::int64_t>(ad);
  for (std::size_t i = start; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (p > n / d) break;
    stack.push_back(p);
    total += sift_subtree(primes, stack, d * p, i + 1, n, table);
    stack.pop_back();
  }
  return total;
}

} // namespace

std::uint64_t sifted_count(const SiftingContext& ctx, const CountOptions& options) {
  const std::uint64_t n = ctx.n();
  const auto primes = ctx.P_prime();
  const std::uint64_t terms = count_products_up_to(primes, n, options.threads) + 1;
  if (terms > options.divisor_cap)
    throw CapacityError("sifted_count needs A(x) = " + std::to_string(terms) + " divisor terms, cap is " +
                        std::to_string(options.divisor_cap));
  const PrimeTable& table = ctx.table();
  std::int64_t total = static_cast<std::int64_t>(squarefree_upto(n, table));
  const std::size_t end = static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), n) - primes.begin());
  std::vector<std::int64_t> partial(end, 0);
  parallel_for(end, options.threads, [&](std::size_t i) {
    std::vector<std::uint64_t> stack{primes[i]};
    partial[i] = sift_subtree(primes, stack, primes[i], i + 1, n, table);
  });
  total = std::accumulate(partial.begin(), partial.end(), total);
  if (total < 0) throw Error("inclusion-exclusion produced a negative count");
  const std::uint64_t sifted = static_cast<std::uint64_t>(total);
  return options.include_one ? sifted : sifted - 1;
}

} // namespace sqfl
