#include "sqfl/euler_products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqfl/errors.hpp"
#include "sqfl/interval.hpp"
#include "sqfl/numeric.hpp"

namespace sqfl {

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::rosser_schoenfeld: return "rosser_schoenfeld";
    case BoundSource::psi_ratio: return "psi_ratio";
    case BoundSource::zeta2_range: return "zeta2_range";
  }
  return "unknown";
}

namespace {

std::span<const std::uint64_t> primes_upto(double y, const PrimeTable& table, const char* what) {
  if (std::isnan(y) || y < 2) throw DomainError(std::string(what) + " needs y >= 2");
  if (y >= static_cast<double>(table.limit()) + 1.0)
    throw RangeError(std::string(what) + " needs primes up to " + std::to_string(y) + ", table limit is " +
                     std::to_string(table.limit()));
  const std::uint64_t yi = static_cast<std::uint64_t>(std::floor(y));
  return table.primes().first(static_cast<std::size_t>(table.count_up_to(yi)));
}

double mertens_factor(std::uint64_t p) { return static_cast<double>(p - 1) / static_cast<double>(p); }
double psi_factor(std::uint64_t p) { return static_cast<double>(p) / static_cast<double>(p + 1); }
double zeta2_factor(std::uint64_t p) {
  const double q = static_cast<double>(p) * static_cast<double>(p);
  return q / (q - 1.0);
}

// Closed-form bounds in plain double arithmetic.
struct PointBounds {
  double lower, upper;
};

PointBounds mertens_bounds(double y) {
  const double l = std::log(y);
  const double base = kExpMinusGamma / l;
  return {base * (1 - 1 / (l * l)), base * (1 + 1 / (l * l))};
}

PointBounds psi_bounds(double y) {
  const double l = std::log(y);
  const double base = kExpMinusGamma / l;
  return {(4.0 / 3.0) * base * (1 - 1 / (l * l)), kZeta2 * base * (1 + 1 / (l * l))};
}

} // namespace

ProductBounds mertens_product(double y, const PrimeTable& table) {
  CompensatedProduct prod;
  for (std::uint64_t p : primes_upto(y, table, "mertens_product")) prod.multiply(mertens_factor(p));
  const auto b = mertens_bounds(y);
  return {y, prod.value(), b.lower, b.upper, BoundSource::rosser_schoenfeld};
}

ProductBounds psi_ratio_product(double y, const PrimeTable& table) {
  CompensatedProduct prod;
  for (std::uint64_t p : primes_upto(y, table, "psi_ratio_product")) prod.multiply(psi_factor(p));
  const auto b = psi_bounds(y);
  return {y, prod.value(), b.lower, b.upper, BoundSource::psi_ratio};
}

ProductBounds zeta2_partial(double y, const PrimeTable& table) {
  CompensatedProduct prod;
  for (std::uint64_t p : primes_upto(y, table, "zeta2_partial")) prod.multiply(zeta2_factor(p));
  return {y, prod.value(), 4.0 / 3.0, kZeta2, BoundSource::zeta2_range};
}

double sieve_density_product(const SiftingContext& ctx) {
  CompensatedProduct prod;
  for (std::uint64_t p : ctx.P_prime()) prod.multiply(psi_factor(p));
  return prod.value();
}

RequirementReport requirement_check(double eta, double xi, double kappa, double kappa_prime, const PrimeTable& table) {
  if (std::isnan(eta) || eta < 2) throw DomainError("requirement_check needs eta >= 2");
  if (std::isnan(xi) || xi < eta) throw DomainError("requirement_check needs eta <= xi");
  if (!std::isfinite(kappa) || !std::isfinite(kappa_prime)) throw DomainError("kappa and kappa' must be finite");
  const auto primes = primes_upto(xi, table, "requirement_check");
  CompensatedProduct prod;
  for (std::uint64_t p : primes)
    if (static_cast<double>(p) >= eta) prod.multiply(static_cast<double>(p + 1) / static_cast<double>(p));
  RequirementReport r{eta, xi, kappa, kappa_prime};
  r.lhs = prod.value();
  const double le = std::log(eta);
  r.rhs = std::pow(std::log(xi) / le, kappa) * (1 + kappa_prime / le);
  r.slack = r.rhs - r.lhs;
  r.passed = r.lhs < r.rhs;
  return r;
}

namespace {

Interval factor_interval(ProductKind kind, std::uint64_t p) {
  const double pd = static_cast<double>(p);
  switch (kind) {
    case ProductKind::mertens: return Interval::quotient(pd - 1, pd);
    case ProductKind::psi_ratio: return Interval::quotient(pd, pd + 1);
    case ProductKind::zeta2: {
      // p^2 and p^2 - 1 are exact doubles for p < 2^26.
      const double q = pd * pd;
      return Interval::quotient(q, q - 1);
    }
  }
  return Interval::exact(1);
}

double point_factor(ProductKind kind, std::uint64_t p) {
  switch (kind) {
    case ProductKind::mertens: return mertens_factor(p);
    case ProductKind::psi_ratio: return psi_factor(p);
    case ProductKind::zeta2: return zeta2_factor(p);
  }
  return 1.0;
}

struct BoundPair {
  Interval lower;
  Interval upper;
};

BoundPair bounds_interval(ProductKind kind, double y) {
  const Interval l = Interval::log(y);
  const Interval one = Interval::exact(1);
  const Interval inv_l2 = one / (l * l);
  const Interval base = Interval::around(kExpMinusGamma) / l;
  switch (kind) {
    case ProductKind::mertens: return {base * (one - inv_l2), base * (one + inv_l2)};
    case ProductKind::psi_ratio:
      return {Interval::quotient(4, 3) * base * (one - inv_l2), Interval::around(kZeta2) * base * (one + inv_l2)};
    case ProductKind::zeta2: return {Interval::quotient(4, 3), Interval::around(kZeta2)};
  }
  return {};
}

} // namespace

EnclosureScan verify_enclosure(ProductKind kind, double y_max, const PrimeTable& table) {
  const auto primes = primes_upto(y_max, table, "verify_enclosure");
  EnclosureScan scan;
  scan.kind = kind;
  scan.y_max = y_max;
  scan.min_lower_gap = std::numeric_limits<double>::infinity();
  scan.min_upper_gap = std::numeric_limits<double>::infinity();

  Interval prod = Interval::exact(1);
  // zeta2: product of the factors after p = 2, which must stay > 1.
  Interval tail = Interval::exact(1);
  double previous_value = 0;
  CompensatedProduct value;

  for (std::size_t k = 0; k < primes.size(); ++k) {
    const std::uint64_t p = primes[k];
    const Interval f = factor_interval(kind, p);
    prod = prod * f;
    value.multiply(point_factor(kind, p));
    const double y_here = static_cast<double>(p);
    const double y_next = k + 1 < primes.size() ? static_cast<double>(primes[k + 1]) : y_max;
    ++scan.boundaries_checked;

    bool ok = true;
    double lower_gap, upper_gap;
    if (kind == ProductKind::zeta2) {
      if (p == 2) {
        scan.exact_at_two = value.value() == 4.0 / 3.0;
        ok = scan.exact_at_two;
        lower_gap = 0;
      } else {
        tail = tail * f;
        ok = tail.lo > 1.0;
        lower_gap = tail.lo - 1.0;
      }
      const Interval upper = Interval::around(kZeta2);
      ok = ok && prod.hi < upper.lo;
      upper_gap = (upper.lo - prod.hi) / prod.hi;
      if (value.value() <= previous_value) scan.monotone = false;
      previous_value = value.value();
      if (!(value.value() >= 4.0 / 3.0 && value.value() < kZeta2)) ++scan.double_violations;
    } else {
      const Interval lower = bounds_interval(kind, y_here).lower;
      const Interval upper = bounds_interval(kind, y_next).upper;
      ok = prod.lo > lower.hi && prod.hi < upper.lo;
      lower_gap = (prod.lo - lower.hi) / prod.lo;
      upper_gap = (upper.lo - prod.hi) / prod.hi;
      const auto point = kind == ProductKind::mertens ? mertens_bounds : psi_bounds;
      if (!(point(y_here).lower < value.value() && value.value() < point(y_next).upper)) ++scan.double_violations;
    }
    scan.min_lower_gap = std::min(scan.min_lower_gap, lower_gap);
    scan.min_upper_gap = std::min(scan.min_upper_gap, upper_gap);
    if (!ok) {
      if (scan.violations == 0) scan.first_violation = p;
      ++scan.violations;
    }
  }
  return scan;
}

} // namespace sqfl
