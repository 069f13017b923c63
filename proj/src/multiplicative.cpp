#include "sqfl/multiplicative.hpp"

#include <algorithm>
#include <numeric>

#include "sqfl/errors.hpp"
#include "sqfl/numeric.hpp"

namespace sqfl {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(__int128 num, __int128 den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

void require_squarefree(const FactorizationView& f) {
  if (!f.squarefree) throw DomainError(std::to_string(f.n) + " is not square-free");
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw OverflowError("rational arithmetic overflow");
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

FactorizationView factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw DomainError("cannot factor 0");
  FactorizationView f;
  f.n = n;
  std::uint64_t rest = n;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.distinct_primes.push_back(p);
    if (e > 1) f.squarefree = false;
  };

  if (rest <= table.side_limit()) {
    while (rest > 1) take(table.least_prime_factor(rest));
    return f;
  }

  for (std::uint64_t p : table.primes()) {
    if (p > rest / p) break;
    if (rest % p == 0) {
      take(p);
      if (rest <= table.side_limit()) {
        while (rest > 1) take(table.least_prime_factor(rest));
        return f;
      }
    }
  }
  if (rest > 1) {
    // rest has no prime factor <= min(sqrt(rest), limit); it is prime only if
    // the table reached sqrt(rest).
    const std::uint64_t root = isqrt(rest);
    if (root > table.limit())
      throw RangeError("factorizing " + std::to_string(n) + " needs primes up to " + std::to_string(root) +
                       ", table limit is " + std::to_string(table.limit()));
    f.distinct_primes.push_back(rest);
  }
  return f;
}

int mobius(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw DomainError("mu(0) undefined");
  if (n <= table.side_limit()) return table.mobius_value(n);
  const auto f = factorize(n, table);
  if (!f.squarefree) return 0;
  return f.distinct_primes.size() % 2 == 0 ? 1 : -1;
}

unsigned omega(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw DomainError("omega(0) undefined");
  return static_cast<unsigned>(factorize(n, table).distinct_primes.size());
}

std::uint64_t dedekind_psi(std::uint64_t d, const PrimeTable& table) {
  const auto f = factorize(d, table);
  require_squarefree(f);
  std::uint64_t psi = 1;
  for (std::uint64_t p : f.distinct_primes) psi = checked_mul(psi, p + 1);
  return psi;
}

std::uint64_t euler_phi(std::uint64_t d, const PrimeTable& table) {
  const auto f = factorize(d, table);
  std::uint64_t phi = d;
  for (std::uint64_t p : f.distinct_primes) phi = phi / p * (p - 1);
  return phi;
}

int principal_character(std::uint64_t n, std::uint64_t d) {
  if (n == 0 || d == 0) throw DomainError("principal character needs n, d >= 1");
  return std::gcd(n, d) == 1 ? 1 : 0;
}

Rational sieve_weight(std::uint64_t d, const PrimeTable& table) {
  const auto f = factorize(d, table);
  require_squarefree(f);
  Rational w(1);
  for (std::uint64_t p : f.distinct_primes)
    w = w * Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(p + 1));
  return w;
}

std::vector<std::uint64_t> divisors_from_primes(const std::vector<std::uint64_t>& primes) {
  if (primes.size() > 30)
    throw CapacityError("divisor enumeration capped at omega <= 30, got " + std::to_string(primes.size()));
  std::vector<std::uint64_t> divs{1};
  divs.reserve(std::size_t{1} << primes.size());
  for (std::uint64_t p : primes) {
    const std::size_t k = divs.size();
    for (std::size_t i = 0; i < k; ++i) divs.push_back(checked_mul(divs[i], p));
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::uint64_t> squarefree_divisors(std::uint64_t d, const PrimeTable& table) {
  const auto f = factorize(d, table);
  require_squarefree(f);
  return divisors_from_primes(f.distinct_primes);
}

} // namespace sqfl
