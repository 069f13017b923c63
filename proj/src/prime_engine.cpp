#include "sqfl/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqfl/errors.hpp"
#include "sqfl/numeric.hpp"

namespace sqfl {

namespace detail {

RangeBounds range_bounds(double a, double b, const RangeSieveOptions& options) {
  if (std::isnan(a) || std::isnan(b) || std::isinf(b))
    throw DomainError("prime range bounds must be finite");
  if (options.segment_size == 0) throw DomainError("segment size must be positive");
  if (b < 2 || b <= a) return {1, 0};
  const std::uint64_t hi = floor_to_count(b, "range end");
  const std::uint64_t lo = a < 1 ? 2 : static_cast<std::uint64_t>(std::floor(a)) + 1;
  if (lo > hi) return {1, 0};
  if (hi - lo + 1 > options.max_width)
    throw CapacityError("prime range width " + std::to_string(hi - lo + 1) +
                        " exceeds budget " + std::to_string(options.max_width));
  return {std::max<std::uint64_t>(lo, 2), hi};
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t m = i * i; m <= limit; m += i) composite[m] = true;
  }
  return out;
}

} // namespace detail

namespace {

// Rosser-Schoenfeld: pi(x) < 1.25506 x / ln x for x > 1.
std::uint64_t prime_count_upper_estimate(std::uint64_t n) {
  if (n < 17) return 7;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(1.25506 * x / std::log(x)) + 1;
}

} // namespace

std::uint64_t PrimeTable::count_up_to(std::uint64_t n) const {
  if (n > limit_)
    throw RangeError("pi(" + std::to_string(n) + ") beyond table limit " + std::to_string(limit_));
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_)
    throw RangeError("primality of " + std::to_string(n) + " beyond table limit " + std::to_string(limit_));
  if (n <= side_limit_ && n >= 2) return lpf_[n] == n;
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::uint64_t PrimeTable::least_prime_factor(std::uint64_t n) const {
  if (n < 2 || n > side_limit_)
    throw RangeError("lpf(" + std::to_string(n) + ") outside side table [2, " + std::to_string(side_limit_) + "]");
  return lpf_[n];
}

int PrimeTable::mobius_value(std::uint64_t n) const {
  if (n < 1 || n > side_limit_)
    throw RangeError("mu(" + std::to_string(n) + ") outside side table [1, " + std::to_string(side_limit_) + "]");
  return mu_[n];
}

std::size_t PrimeTable::memory_bytes() const {
  return primes_.capacity() * sizeof(std::uint64_t) + lpf_.capacity() * sizeof(std::uint32_t) + mu_.capacity();
}

PrimeTable build_prime_table(std::uint64_t limit, const PrimeTableOptions& options) {
  if (limit < 1) throw DomainError("prime table limit must be >= 1");
  if (limit > 0xFFFFFFFFull * 4)
    throw CapacityError("prime table limit " + std::to_string(limit) + " exceeds supported range");

  const std::uint64_t list_bytes = prime_count_upper_estimate(limit) * sizeof(std::uint64_t);
  if (list_bytes > options.memory_budget_bytes)
    throw CapacityError("prime list up to " + std::to_string(limit) + " needs ~" + std::to_string(list_bytes) +
                        " bytes, budget is " + std::to_string(options.memory_budget_bytes));

  constexpr std::uint64_t kSideBytesPerEntry = sizeof(std::uint32_t) + sizeof(std::int8_t);
  const std::uint64_t side_budget = (options.memory_budget_bytes - list_bytes) / kSideBytesPerEntry;
  const std::uint64_t side_limit = std::min({limit, side_budget > 0 ? side_budget - 1 : 0, std::uint64_t{0xFFFFFFFFull}});

  PrimeTable t;
  t.limit_ = limit;
  t.side_limit_ = side_limit;
  t.primes_.reserve(static_cast<std::size_t>(prime_count_upper_estimate(limit)));

  // Linear sieve: each composite is struck exactly once, by its least prime.
  const std::size_t n = static_cast<std::size_t>(side_limit) + 1;
  t.lpf_.assign(n, 0);
  t.mu_.assign(n, 0);
  if (n > 1) t.mu_[1] = 1;
  for (std::uint64_t i = 2; i <= side_limit; ++i) {
    if (t.lpf_[i] == 0) {
      t.lpf_[i] = static_cast<std::uint32_t>(i);
      t.mu_[i] = -1;
      t.primes_.push_back(i);
    }
    const std::uint64_t li = t.lpf_[i];
    for (std::uint64_t p : t.primes_) {
      if (p > li || p * i > side_limit) break;
      t.lpf_[p * i] = static_cast<std::uint32_t>(p);
      t.mu_[p * i] = (p == li) ? 0 : static_cast<std::int8_t>(-t.mu_[i]);
    }
  }

  if (side_limit < limit) {
    RangeSieveOptions ro;
    ro.segment_size = options.segment_size;
    ro.max_width = limit;
    for_each_prime_in_range(static_cast<double>(side_limit), static_cast<double>(limit),
                            [&](std::uint64_t p) { t.primes_.push_back(p); }, ro);
  }
  t.primes_.shrink_to_fit();
  return t;
}

std::uint64_t prime_count(const PrimeTable& table, double y) {
  if (std::isnan(y)) throw DomainError("prime_count argument is NaN");
  if (y < 2) return 0;
  if (y >= static_cast<double>(table.limit()) + 1.0)
    throw RangeError("prime_count(" + std::to_string(y) + ") beyond table limit " + std::to_string(table.limit()));
  return table.count_up_to(static_cast<std::uint64_t>(std::floor(y)));
}

namespace {

// Legendre phi(y, a) = #{n <= y : no prime factor among the first a primes}.
class LegendrePhi {
public:
  explicit LegendrePhi(const PrimeTable& table) : table_(table), primes_(table.primes()) {
    // Periodic tables for the first few primes: phi(y, k) = (y / Q) phi(Q, k) + phi(y mod Q, k).
    const std::size_t k_max = std::min<std::size_t>(kSmall, primes_.size());
    std::uint64_t modulus = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
      modulus *= primes_[k - 1];
      std::vector<std::uint32_t> cum(modulus + 1, 0);
      for (std::uint64_t r = 1; r <= modulus; ++r) {
        bool rough = true;
        for (std::size_t j = 0; j < k; ++j)
          if (r % primes_[j] == 0) {
            rough = false;
            break;
          }
        cum[r] = cum[r - 1] + (rough ? 1 : 0);
      }
      periodic_.push_back({modulus, std::move(cum)});
    }
  }

  std::uint64_t phi(std::uint64_t y, std::size_t a) const {
    if (a == 0 || y == 0) return y;
    if (a <= periodic_.size()) {
      const auto& [q, cum] = periodic_[a - 1];
      return (y / q) * cum[q] + cum[y % q];
    }
    const std::uint64_t pa = primes_[a - 1];
    if (pa >= y) return 1;
    if (y <= table_.limit() && pa > y / pa) return table_.count_up_to(y) - a + 1;
    // phi(y, a) = phi(y, k) - sum_{k < i <= a} phi(y / p_i, i - 1)
    const std::size_t k = periodic_.size();
    std::uint64_t result = phi(y, k);
    for (std::size_t i = k + 1; i <= a; ++i) {
      const std::uint64_t p = primes_[i - 1];
      if (p > y) break;
      result -= phi(y / p, i - 1);
    }
    return result;
  }

private:
  static constexpr std::size_t kSmall = 6;  // 2*3*5*7*11*13 = 30030
  struct Periodic {
    std::uint64_t modulus;
    std::vector<std::uint32_t> cum;
  };
  const PrimeTable& table_;
  std::span<const std::uint64_t> primes_;
  std::vector<Periodic> periodic_;
};

std::uint64_t rough_count_sieve(std::uint64_t y, std::uint64_t zi, const PrimeTable& table) {
  std::vector<unsigned char> struck(y + 1, 0);
  for (std::uint64_t p : table.primes()) {
    if (p > zi) break;
    for (std::uint64_t m = p; m <= y; m += p) struck[m] = 1;
  }
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= y; ++n) count += struck[n] ? 0 : 1;
  return count;
}

} // namespace

std::uint64_t rough_count(std::uint64_t y, double z, const PrimeTable& table, RoughMethod method) {
  if (std::isnan(z)) throw DomainError("rough_count threshold is NaN");
  if (y == 0) return 0;
  if (z < 2) return y;
  // Every n in [2, y] has P^-(n) <= y, so only n = 1 survives once z >= y.
  if (z >= static_cast<double>(y)) return 1;
  const std::uint64_t zi = static_cast<std::uint64_t>(std::floor(z));
  if (zi > table.limit())
    throw RangeError("rough_count needs primes up to " + std::to_string(zi) + ", table limit is " +
                     std::to_string(table.limit()));
  const std::size_t a = static_cast<std::size_t>(table.count_up_to(zi));

  if (method == RoughMethod::automatic) method = y <= (1u << 16) ? RoughMethod::sieve : RoughMethod::recursion;
  if (method == RoughMethod::sieve) {
    if (y > (std::uint64_t{1} << 32)) throw CapacityError("direct rough-number sieve limited to y <= 2^32");
    return rough_count_sieve(y, zi, table);
  }
  return LegendrePhi(table).phi(y, a);
}

std::vector<std::uint64_t> primes_in_range(double a, double b, const RangeSieveOptions& options) {
  std::vector<std::uint64_t> out;
  for_each_prime_in_range(a, b, [&](std::uint64_t p) { out.push_back(p); }, options);
  return out;
}

} // namespace sqfl
