#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "sqfl/prime_engine.hpp"

namespace sqfl {

// Exact reduced fraction num/den with den > 0. Arithmetic throws
// OverflowError instead of wrapping.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct FactorizationView {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> distinct_primes;  // ascending
  bool squarefree = true;
};

// Uses the lpf side table when n is inside it, otherwise trial division by
// tabled primes up to sqrt(n). RangeError if the table is too short for that.
FactorizationView factorize(std::uint64_t n, const PrimeTable& table);

int mobius(std::uint64_t n, const PrimeTable& table);
unsigned omega(std::uint64_t n, const PrimeTable& table);

// psi(d) = d prod_{p|d} (1 + 1/p). DomainError unless d is square-free.
std::uint64_t dedekind_psi(std::uint64_t d, const PrimeTable& table);
std::uint64_t euler_phi(std::uint64_t d, const PrimeTable& table);

// chi_d(n) for the principal character modulo d.
int principal_character(std::uint64_t n, std::uint64_t d);

// w(d) = prod_{p|d} (1 + 1/p)^{-1} = d / psi(d).
Rational sieve_weight(std::uint64_t d, const PrimeTable& table);

// All 2^omega(d) divisors of square-free d, ascending. CapacityError past omega(d) = 30.
std::vector<std::uint64_t> squarefree_divisors(std::uint64_t d, const PrimeTable& table);

// Same, from an already known prime list.
std::vector<std::uint64_t> divisors_from_primes(const std::vector<std::uint64_t>& primes);

} // namespace sqfl
