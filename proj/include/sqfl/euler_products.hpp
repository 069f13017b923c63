#pragma once

#include <cstdint>
#include <string_view>

#include "sqfl/counting.hpp"
#include "sqfl/prime_engine.hpp"

namespace sqfl {

enum class BoundSource { rosser_schoenfeld, psi_ratio, zeta2_range };

std::string_view to_string(BoundSource source);

struct ProductBounds {
  double y = 0;
  double value = 0;
  double lower = 0;
  double upper = 0;
  BoundSource source = BoundSource::rosser_schoenfeld;

  bool strictly_inside() const { return lower < value && value < upper; }
};

// prod_{p <= y} (1 - 1/p) against (e^-gamma / ln y)(1 -/+ 1/ln^2 y).
ProductBounds mertens_product(double y, const PrimeTable& table);

// prod_{p <= y} (1 - 1/(p+1)) against (4/3)(e^-gamma/ln y)(1 - 1/ln^2 y) and
// (pi^2/6)(e^-gamma/ln y)(1 + 1/ln^2 y).
ProductBounds psi_ratio_product(double y, const PrimeTable& table);

// prod_{p <= y} (1 - 1/p^2)^{-1} against [4/3, pi^2/6).
ProductBounds zeta2_partial(double y, const PrimeTable& table);

// prod_{lambda(x) < p <= x} (1 - 1/(p+1)). Empty product (1) when lambda(x) >= x.
double sieve_density_product(const SiftingContext& ctx);

struct RequirementReport {
  double eta = 0, xi = 0, kappa = 0, kappa_prime = 0;
  double lhs = 0;  // prod_{eta <= p <= xi} (1 - 1/(p+1))^{-1}
  double rhs = 0;  // (ln xi / ln eta)^kappa (1 + kappa' / ln eta)
  double slack = 0;
  bool passed = false;
};

// Dimension condition of the fundamental lemma with w(p) = p/(p+1).
RequirementReport requirement_check(double eta, double xi, double kappa, double kappa_prime, const PrimeTable& table);

enum class ProductKind { mertens, psi_ratio, zeta2 };

// Outcome of checking the closed-form enclosure of one product at every prime
// boundary up to y_max, in outward-rounded interval arithmetic. The product is
// constant on [p_k, p_{k+1}) while both bounds decrease in y, so the lower
// bound is checked at y = p_k and the upper bound in the limit y -> p_{k+1}^-
// (or at y_max for the last prime); together they cover every real y in
// [2, y_max].
struct EnclosureScan {
  ProductKind kind = ProductKind::mertens;
  double y_max = 0;
  std::uint64_t boundaries_checked = 0;
  std::uint64_t violations = 0;         // interval pass
  std::uint64_t double_violations = 0;  // same checks on the plain doubles, zero tolerance
  std::uint64_t first_violation = 0;  // prime at which the first violation occurred, 0 if none
  double min_lower_gap = 0;           // min over y of (product.lo - lower.hi) / product
  double min_upper_gap = 0;           // min over y of (upper.lo - product.hi) / product
  bool monotone = true;               // zeta2 only: strictly increasing in y
  bool exact_at_two = true;           // zeta2 only: value at y = 2 equals 4/3 exactly
};

EnclosureScan verify_enclosure(ProductKind kind, double y_max, const PrimeTable& table);

} // namespace sqfl
