#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqfl/prime_engine.hpp"

namespace sqfl {

using Complex = std::complex<double>;

// Power-series coefficients c_0 = 1, c_1, ..., c_{nu_max}.
struct SeriesCoeffs {
  std::vector<Complex> coefficients;
};

// binom(z, k) by binom(z, k) = binom(z, k-1) (z - k + 1) / k.
Complex generalized_binomial(Complex z, unsigned k);

// Local factor of G_d(s; z) at p as a series in xi = p^{-s}:
//   divides == false ((p, d) = 1):  (1 + z xi)(1 - xi)^z
//   divides == true  (p | d):       (1 - xi)^z
// The nu-th coefficient is g_{d,z}(p^nu). DomainError for nu_max > 64.
SeriesCoeffs g_coeffs(bool divides, Complex z, unsigned nu_max);

struct SDEval {
  Complex value;
  std::uint64_t truncation_prime = 0;
  // Bound on |true value - value|: tail of the Euler product beyond the
  // truncation prime plus floating-point accumulation.
  double tail_bound = 0;
};

// F_d(s; z) = prod_p (1 + chi_d(p) z / p^s), s > 1, truncated at primes
// <= truncation_prime.
SDEval F_d_eval(std::uint64_t d, double s, Complex z, std::uint64_t truncation_prime, const PrimeTable& table);

// G_d(s; z) = prod_p (1 + chi_d(p) z / p^s)(1 - 1/p^s)^z, s > 1/2, principal
// branch of the power.
SDEval G_d_eval(std::uint64_t d, double s, Complex z, std::uint64_t truncation_prime, const PrimeTable& table);

// lambda_0(1) = G_d(1; 1) = (1 / zeta(2)) prod_{p|d} (1 + 1/p)^{-1} = d / (zeta(2) psi(d)).
double lambda0_closed_form(std::uint64_t d, const PrimeTable& table);

struct MConstantEstimate {
  double A = 0;
  unsigned grid_density = 0;
  double estimate = 0;     // max found; a lower estimate of the sup
  double z_spacing = 0;    // arc length between neighbouring z grid points
  double xi_spacing = 0;   // arc length between neighbouring xi grid points
  double grid_max = 0;     // max over the coarse grid before refinement
  Complex z_at_max;
  Complex xi_at_max;
};

// M(A) = sup_{|z| <= A, |xi| <= 1/sqrt 2} |(1 + xi z)(1 - xi)^z|.
//
// The function is holomorphic in z for fixed xi and in xi for fixed z, so by
// the maximum modulus principle the sup is attained on the torus |z| = A,
// |xi| = 1/sqrt 2. The search grids that torus with grid_density angles per
// circle, then refines once around the grid argmax. Ties keep the lowest grid
// index.
MConstantEstimate M_constant(double A, unsigned grid_density);

// (1 + rA)(1 - r)^{-A} with r = 1/sqrt 2: an upper bound for M(A) from
// |1 + xi z| <= 1 + r|z| and |log(1 - xi)| <= -log(1 - r).
double M_constant_upper(double A);

struct CoeffBoundReport {
  bool passed = true;
  unsigned checked = 0;
  unsigned first_failure = 0;  // nu of the first failure, 0 if none
  double worst_ratio = 0;      // max over nu of |g(p^nu)| / (M 2^{nu/2})
};

// Checks |g_{d,z}(p^nu)| <= M 2^{nu/2} for nu in [max(nu_lo, 2), nu_hi],
// coprime case.
CoeffBoundReport coeff_bound_check(Complex z, unsigned nu_lo, unsigned nu_hi, double M);

} // namespace sqfl
