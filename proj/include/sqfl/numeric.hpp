#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "sqfl/errors.hpp"

namespace sqfl {

inline constexpr double kPi = 3.14159265358979323846;
// zeta(2) = pi^2/6
inline constexpr double kZeta2 = 1.6449340668482264365;
inline constexpr double kEulerGamma = 0.57721566490153286061;
// e^{-gamma}
inline constexpr double kExpMinusGamma = 0.56145948356688516982;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("64-bit overflow in product");
  return r;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// Real argument x >= 1 to the integer floor(x). Counting functions take real
// x but everything below 2^53 is an exact integer in a double.
inline std::uint64_t floor_to_count(double x, const char* what) {
  if (!std::isfinite(x) || x < 0)
    throw DomainError(std::string(what) + " must be a finite nonnegative real");
  if (x >= 9007199254740992.0)
    throw CapacityError(std::string(what) + " exceeds 2^53");
  return static_cast<std::uint64_t>(std::floor(x));
}

// Neumaier compensated summation.
class CompensatedSum {
public:
  void add(double v) {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Running product in double-double. Each factor is a correctly rounded
// double; the accumulated product keeps ~106 bits so long prime products do
// not drift.
class CompensatedProduct {
public:
  void multiply(double f) {
    double p = hi_ * f;
    double e = std::fma(hi_, f, -p);
    e += lo_ * f;
    hi_ = p + e;
    lo_ = e - (hi_ - p);
  }
  double value() const { return hi_ + lo_; }

private:
  double hi_ = 1.0;
  double lo_ = 0.0;
};

} // namespace sqfl
