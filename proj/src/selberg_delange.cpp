#include "sqfl/selberg_delange.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqfl/errors.hpp"
#include "sqfl/multiplicative.hpp"
#include "sqfl/numeric.hpp"

namespace sqfl {

namespace {

constexpr double kXiRadius = 0.70710678118654752440;  // 1/sqrt 2
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::span<const std::uint64_t> truncated_primes(std::uint64_t truncation_prime, const PrimeTable& table) {
  if (truncation_prime < 2) throw DomainError("truncation prime must be >= 2");
  if (truncation_prime > table.limit())
    throw RangeError("truncation at " + std::to_string(truncation_prime) + " beyond table limit " +
                     std::to_string(table.limit()));
  return table.primes().first(static_cast<std::size_t>(table.count_up_to(truncation_prime)));
}

std::vector<std::uint64_t> squarefree_primes(std::uint64_t d, const PrimeTable& table) {
  if (d == 0) throw DomainError("d must be a positive integer");
  auto f = factorize(d, table);
  if (!f.squarefree) throw DomainError(std::to_string(d) + " is not square-free");
  return f.distinct_primes;
}

bool divides(const std::vector<std::uint64_t>& d_primes, std::uint64_t p) {
  for (std::uint64_t q : d_primes)
    if (q == p) return true;
  return false;
}

// sum_{n > P} n^{-a} <= int_P^inf t^{-a} dt for a > 1.
double integer_tail(double P, double a) { return std::pow(P, 1 - a) / (a - 1); }

double f_value(Complex z, Complex xi) { return std::abs((1.0 + xi * z) * std::exp(z * std::log(1.0 - xi))); }

} // namespace

Complex generalized_binomial(Complex z, unsigned k) {
  Complex c = 1.0;
  for (unsigned j = 1; j <= k; ++j) c = c * (z - static_cast<double>(j - 1)) / static_cast<double>(j);
  return c;
}

SeriesCoeffs g_coeffs(bool divides_d, Complex z, unsigned nu_max) {
  if (nu_max > 64) throw DomainError("nu_max limited to 64");
  // (1 - xi)^z = sum_k binom(z, k) (-xi)^k
  std::vector<Complex> binom(nu_max + 1);
  Complex c = 1.0;
  for (unsigned k = 0; k <= nu_max; ++k) {
    if (k > 0) c = c * (z - static_cast<double>(k - 1)) / static_cast<double>(k);
    binom[k] = (k % 2 == 0) ? c : -c;
  }
  SeriesCoeffs out;
  if (divides_d) {
    out.coefficients = std::move(binom);
    return out;
  }
  out.coefficients.resize(nu_max + 1);
  out.coefficients[0] = binom[0];
  for (unsigned k = 1; k <= nu_max; ++k) out.coefficients[k] = binom[k] + z * binom[k - 1];
  return out;
}

SDEval F_d_eval(std::uint64_t d, double s, Complex z, std::uint64_t truncation_prime, const PrimeTable& table) {
  if (!(s > 1)) throw DomainError("F_d(s; z) needs s > 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("z must be finite");
  const auto d_primes = squarefree_primes(d, table);
  const auto primes = truncated_primes(truncation_prime, table);
  Complex value = 1.0;
  std::size_t factors = 0;
  if (z != 0.0) {
    for (std::uint64_t p : primes) {
      if (divides(d_primes, p)) continue;
      value *= 1.0 + z * std::pow(static_cast<double>(p), -s);
      ++factors;
    }
  }
  SDEval out{value, truncation_prime, 0.0};
  if (z == 0.0) return out;
  // |prod_{p > P} (1 + a_p) - 1| <= exp(sum |a_p|) - 1, sum_{p > P} p^{-s} <= sum_{n > P} n^{-s}.
  const double tail_sum = std::abs(z) * integer_tail(static_cast<double>(truncation_prime), s);
  out.tail_bound = std::abs(value) * (std::expm1(tail_sum) * (1 + 8 * kEps) + 8 * kEps * static_cast<double>(factors + 1));
  return out;
}

SDEval G_d_eval(std::uint64_t d, double s, Complex z, std::uint64_t truncation_prime, const PrimeTable& table) {
  if (!(s > 0.5)) throw DomainError("G_d(s; z) needs s > 1/2");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("z must be finite");
  const auto d_primes = squarefree_primes(d, table);
  const auto primes = truncated_primes(truncation_prime, table);
  SDEval out{1.0, truncation_prime, 0.0};
  if (z == 0.0) return out;

  const bool z_is_one = z == Complex(1.0, 0.0);
  Complex value = 1.0;
  std::size_t factors = 0;
  for (std::uint64_t p : primes) {
    const double ps = std::pow(static_cast<double>(p), -s);
    const double chi = divides(d_primes, p) ? 0.0 : 1.0;
    if (z_is_one)
      value *= (1.0 + chi * ps) * (1.0 - ps);
    else
      value *= (1.0 + chi * z * ps) * std::exp(z * std::log1p(-ps));
    ++factors;
  }
  out.value = value;

  const double P = static_cast<double>(truncation_prime);
  // Primes of d beyond the truncation contribute (1 - p^{-s})^z.
  double divisor_tail = 0;
  for (std::uint64_t q : d_primes)
    if (q > truncation_prime) divisor_tail += -std::abs(z) * std::log1p(-std::pow(static_cast<double>(q), -s));

  double rel;
  if (z_is_one) {
    // Coprime factors are 1 - p^{-2s} in (0, 1]; the tail lies in (1 - S, 1].
    const double S = integer_tail(P, 2 * s) +
                     (divisor_tail > 0 ? -std::expm1(-divisor_tail) : 0.0);
    rel = S;
  } else {
    // |g(p^nu)| <= M 2^{nu/2} with the rigorous Cauchy constant, so each
    // coprime factor differs from 1 by at most 2M / (p^s (p^s - sqrt 2)).
    const double M = M_constant_upper(std::abs(z));
    const double ps_min = std::pow(P + 1, s);
    const double S = 2 * M * integer_tail(P, 2 * s) / (1 - kSqrt2 / ps_min) + divisor_tail;
    rel = std::expm1(S);
  }
  const double rounding = 16 * kEps * static_cast<double>(factors + 1);
  out.tail_bound = std::abs(value) * (rel * (1 + 8 * kEps) + rounding);
  return out;
}

double lambda0_closed_form(std::uint64_t d, const PrimeTable& table) {
  const auto d_primes = squarefree_primes(d, table);
  double w = 1.0;
  for (std::uint64_t p : d_primes) w *= static_cast<double>(p) / static_cast<double>(p + 1);
  return w / kZeta2;
}

double M_constant_upper(double A) {
  return (1 + kXiRadius * A) * std::pow(1 - kXiRadius, -A);
}

MConstantEstimate M_constant(double A, unsigned grid_density) {
  if (!std::isfinite(A) || A < 0) throw DomainError("A must be a nonnegative real");
  if (A > 4) throw DomainError("M_constant supports A <= 4");
  if (grid_density < 4) throw DomainError("grid density must be >= 4");

  const double step = 2 * kPi / grid_density;
  MConstantEstimate out;
  out.A = A;
  out.grid_density = grid_density;
  out.z_spacing = A * step;
  out.xi_spacing = kXiRadius * step;

  double best = -1;
  unsigned best_i = 0, best_j = 0;
  for (unsigned i = 0; i < grid_density; ++i) {
    const Complex z = std::polar(A, i * step);
    for (unsigned j = 0; j < grid_density; ++j) {
      const double v = f_value(z, std::polar(kXiRadius, j * step));
      if (v > best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }
  out.grid_max = best;
  out.z_at_max = std::polar(A, best_i * step);
  out.xi_at_max = std::polar(kXiRadius, best_j * step);

  // One refinement pass over the neighbouring grid cells.
  constexpr int kRefine = 20;
  for (int a = -kRefine; a <= kRefine; ++a) {
    const double tz = best_i * step + a * step / kRefine;
    const Complex z = std::polar(A, tz);
    for (int b = -kRefine; b <= kRefine; ++b) {
      const double tx = best_j * step + b * step / kRefine;
      const Complex xi = std::polar(kXiRadius, tx);
      const double v = f_value(z, xi);
      if (v > best) {
        best = v;
        out.z_at_max = z;
        out.xi_at_max = xi;
      }
    }
  }
  out.estimate = best;
  return out;
}

CoeffBoundReport coeff_bound_check(Complex z, unsigned nu_lo, unsigned nu_hi, double M) {
  const auto g = g_coeffs(false, z, nu_hi);
  CoeffBoundReport r;
  for (unsigned nu = std::max(nu_lo, 2u); nu <= nu_hi; ++nu) {
    const double bound = M * std::pow(2.0, nu / 2.0);
    const double mag = std::abs(g.coefficients[nu]);
    ++r.checked;
    r.worst_ratio = std::max(r.worst_ratio, mag / bound);
    if (!(mag <= bound)) {
      if (r.passed) r.first_failure = nu;
      r.passed = false;
    }
  }
  return r;
}

} // namespace sqfl
