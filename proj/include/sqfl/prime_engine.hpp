#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sqfl {

struct PrimeTableOptions {
  // Upper bound on the bytes held by the table (prime list + side tables).
  std::uint64_t memory_budget_bytes = 512ull << 20;
  // Values per segment when primes above the side-table range are sieved.
  std::size_t segment_size = std::size_t{1} << 20;
};

// Primes up to `limit`, plus least-prime-factor and Moebius tables over
// [0, side_limit]. side_limit == limit unless the memory budget forced the
// side tables to be shorter; the prime list always reaches `limit`.
class PrimeTable {
public:
  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::uint64_t side_limit() const { return side_limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }

  // pi(n) for n <= limit.
  std::uint64_t count_up_to(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  // Side-table lookups; n in [2, side_limit] for lpf, [1, side_limit] for mu.
  std::uint64_t least_prime_factor(std::uint64_t n) const;
  int mobius_value(std::uint64_t n) const;

  std::size_t memory_bytes() const;

private:
  friend PrimeTable build_prime_table(std::uint64_t, const PrimeTableOptions&);

  std::uint64_t limit_ = 0;
  std::uint64_t side_limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint32_t> lpf_;
  std::vector<std::int8_t> mu_;
};

// Linear sieve up to the side-table range, segmented sieve beyond it.
// Throws CapacityError if even the bare prime list does not fit the budget.
PrimeTable build_prime_table(std::uint64_t limit, const PrimeTableOptions& options = {});

// pi(y). RangeError if y exceeds the table limit.
std::uint64_t prime_count(const PrimeTable& table, double y);

enum class RoughMethod { automatic, recursion, sieve };

// Phi(y, z): #{1 <= n <= y : every prime factor of n exceeds z}. n = 1 is
// always counted. Needs primes up to min(y, z) in the table.
std::uint64_t rough_count(std::uint64_t y, double z, const PrimeTable& table,
                          RoughMethod method = RoughMethod::automatic);

struct RangeSieveOptions {
  std::size_t segment_size = std::size_t{1} << 20;
  // Widest (a, b] interval accepted.
  std::uint64_t max_width = std::uint64_t{1} << 34;
};

// Calls visit(p) for each prime p in (a, b], ascending.
template <class Visit>
void for_each_prime_in_range(double a, double b, Visit&& visit, const RangeSieveOptions& options = {});

std::vector<std::uint64_t> primes_in_range(double a, double b, const RangeSieveOptions& options = {});

namespace detail {
struct RangeBounds {
  std::uint64_t lo;  // first candidate (inclusive)
  std::uint64_t hi;  // last candidate (inclusive); lo > hi means empty
};
RangeBounds range_bounds(double a, double b, const RangeSieveOptions& options);
std::vector<std::uint64_t> small_primes(std::uint64_t limit);
} // namespace detail

template <class Visit>
void for_each_prime_in_range(double a, double b, Visit&& visit, const RangeSieveOptions& options) {
  auto [lo, hi] = detail::range_bounds(a, b, options);
  if (lo > hi) return;
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = detail::small_primes(root);
  const std::uint64_t seg = options.segment_size;
  std::vector<unsigned char> composite(seg);
  for (std::uint64_t start = lo; start <= hi; start += seg) {
    const std::uint64_t end = std::min(hi, start + seg - 1);
    const std::size_t len = static_cast<std::size_t>(end - start + 1);
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(len), 0);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t m = first; m <= end; m += p) composite[m - start] = 1;
    }
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t n = start + i;
      if (n >= 2 && !composite[i]) visit(n);
    }
    if (end == hi) break;
  }
}

} // namespace sqfl
