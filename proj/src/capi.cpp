#include "sqfl/sqfl.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "sqfl/counting.hpp"
#include "sqfl/errors.hpp"
#include "sqfl/euler_products.hpp"
#include "sqfl/experiments.hpp"
#include "sqfl/multiplicative.hpp"
#include "sqfl/numeric.hpp"
#include "sqfl/prime_engine.hpp"
#include "sqfl/report.hpp"
#include "sqfl/selberg_delange.hpp"

struct sqfl_session {
  sqfl::PrimeTableOptions table_options;
  std::unique_ptr<sqfl::PrimeTable> table;
  unsigned threads = 0;
  std::uint64_t divisor_cap = 100'000'000;
  std::string last_error;

  // Grows the table so that it covers `limit`; never shrinks it.
  const sqfl::PrimeTable& primes(std::uint64_t limit) {
    limit = std::max<std::uint64_t>(limit, 1u << 16);
    if (!table || table->limit() < limit) {
      if (table) limit = std::max(limit, table->limit());
      table = std::make_unique<sqfl::PrimeTable>(sqfl::build_prime_table(limit, table_options));
    }
    return *table;
  }

  sqfl::CountOptions count_options(bool include_one = true) const {
    sqfl::CountOptions o;
    o.include_one = include_one;
    o.threads = threads;
    o.divisor_cap = divisor_cap;
    return o;
  }
};

struct sqfl_report {
  sqfl::ScanReport report;
  std::string csv;
  std::string json;
};

namespace {

template <class Fn>
sqfl_status guarded(sqfl_session* session, Fn&& fn) {
  if (session) session->last_error.clear();
  auto fail = [&](sqfl_status status, const char* what) {
    if (session) session->last_error = what;
    return status;
  };
  try {
    fn();
    return SQFL_OK;
  } catch (const sqfl::DomainError& e) {
    return fail(SQFL_ERROR_DOMAIN, e.what());
  } catch (const sqfl::RangeError& e) {
    return fail(SQFL_ERROR_RANGE, e.what());
  } catch (const sqfl::CapacityError& e) {
    return fail(SQFL_ERROR_CAPACITY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SQFL_ERROR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(SQFL_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(SQFL_ERROR_INTERNAL, "unknown error");
  }
}

std::uint64_t count_limit(double x) {
  if (!std::isfinite(x) || x < 0) throw sqfl::DomainError("argument must be a finite nonnegative real");
  return sqfl::floor_to_count(x, "argument");
}

std::uint64_t root_limit(double x) { return sqfl::isqrt(count_limit(x)) + 1; }

sqfl::LambdaSpec to_spec(sqfl_lambda l) { return {l.coefficient, l.exponent}; }

sqfl_product_bounds to_c(const sqfl::ProductBounds& b) {
  return {b.y, b.value, b.lower, b.upper, static_cast<sqfl_bound_source>(b.source)};
}

sqfl_sd_eval to_c(const sqfl::SDEval& e) {
  return {e.value.real(), e.value.imag(), e.truncation_prime, e.tail_bound};
}

double grid_max(const std::vector<double>& grid) {
  double m = 1;
  for (double x : grid) {
    if (!std::isfinite(x) || x < 1) throw sqfl::DomainError("grid values must be reals >= 1");
    m = std::max(m, x);
  }
  return m;
}

template <class T>
std::vector<T> to_vector(const T* data, size_t n, const char* what) {
  if (n > 0 && !data) throw std::invalid_argument(std::string(what) + " is null");
  return std::vector<T>(data, data + n);
}

sqfl_status finish_report(sqfl_session* session, sqfl::ScanReport&& report, sqfl_report** out) {
  return guarded(session, [&] {
    auto r = std::make_unique<sqfl_report>();
    r->report = std::move(report);
    *out = r.release();
  });
}

} // namespace

#define SQFL_REQUIRE(cond)                                     \
  do {                                                         \
    if (!(cond)) {                                             \
      if (session) session->last_error = "invalid argument: " #cond; \
      return SQFL_ERROR_INVALID_ARGUMENT;                      \
    }                                                          \
  } while (0)

extern "C" {

const char* sqfl_version(void) { return sqfl::kVersion.data(); }

const char* sqfl_status_name(sqfl_status status) {
  switch (status) {
    case SQFL_OK: return "ok";
    case SQFL_ERROR_DOMAIN: return "domain error";
    case SQFL_ERROR_CAPACITY: return "capacity error";
    case SQFL_ERROR_RANGE: return "range error";
    case SQFL_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case SQFL_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sqfl_status sqfl_session_create(sqfl_session** out) {
  if (!out) return SQFL_ERROR_INVALID_ARGUMENT;
  *out = new (std::nothrow) sqfl_session();
  return *out ? SQFL_OK : SQFL_ERROR_CAPACITY;
}

void sqfl_session_destroy(sqfl_session* session) { delete session; }

const char* sqfl_session_last_error(const sqfl_session* session) {
  return session ? session->last_error.c_str() : "null session";
}

sqfl_status sqfl_session_set_threads(sqfl_session* session, unsigned threads) {
  SQFL_REQUIRE(session);
  session->threads = threads;
  return SQFL_OK;
}

sqfl_status sqfl_session_set_divisor_cap(sqfl_session* session, uint64_t cap) {
  SQFL_REQUIRE(session);
  SQFL_REQUIRE(cap > 0);
  session->divisor_cap = cap;
  return SQFL_OK;
}

sqfl_status sqfl_session_set_memory_budget(sqfl_session* session, uint64_t bytes) {
  SQFL_REQUIRE(session);
  SQFL_REQUIRE(bytes > 0);
  session->table_options.memory_budget_bytes = bytes;
  return SQFL_OK;
}

sqfl_status sqfl_session_reserve_primes(sqfl_session* session, uint64_t limit) {
  SQFL_REQUIRE(session);
  return guarded(session, [&] { session->primes(limit); });
}

sqfl_status sqfl_prime_count(sqfl_session* session, double y, uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto& t = session->primes(y < 2 ? 2 : count_limit(y));
    *out = sqfl::prime_count(t, y);
  });
}

sqfl_status sqfl_rough_count(sqfl_session* session, uint64_t y, double z, uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    if (std::isnan(z)) throw sqfl::DomainError("z is NaN");
    std::uint64_t need = z < 2 ? 2 : std::min<std::uint64_t>(y, count_limit(std::min(z, 9e15)));
    if (y <= 50'000'000) need = std::max(need, y);
    *out = sqfl::rough_count(y, z, session->primes(need));
  });
}

sqfl_status sqfl_mobius(sqfl_session* session, uint64_t n, int* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = sqfl::mobius(n, session->primes(sqfl::isqrt(n) + 1)); });
}

sqfl_status sqfl_omega(sqfl_session* session, uint64_t n, unsigned* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = sqfl::omega(n, session->primes(sqfl::isqrt(n) + 1)); });
}

sqfl_status sqfl_dedekind_psi(sqfl_session* session, uint64_t d, uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = sqfl::dedekind_psi(d, session->primes(sqfl::isqrt(d) + 1)); });
}

sqfl_status sqfl_euler_phi(sqfl_session* session, uint64_t d, uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = sqfl::euler_phi(d, session->primes(sqfl::isqrt(d) + 1)); });
}

sqfl_status sqfl_sieve_weight(sqfl_session* session, uint64_t d, int64_t* num, int64_t* den) {
  SQFL_REQUIRE(session && num && den);
  return guarded(session, [&] {
    const auto w = sqfl::sieve_weight(d, session->primes(sqfl::isqrt(d) + 1));
    *num = w.num();
    *den = w.den();
  });
}

sqfl_status sqfl_count_squarefree(sqfl_session* session, double x, sqfl_count_breakdown* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto r = sqfl::count_squarefree(x, session->primes(root_limit(x)));
    *out = {r.exact, r.main_term, r.residual};
  });
}

sqfl_status sqfl_count_ad(sqfl_session* session, double x, uint64_t d, sqfl_count_breakdown* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto r = sqfl::count_ad(x, d, session->primes(std::max(root_limit(x), sqfl::isqrt(d) + 1)));
    *out = {r.exact, r.main_term, r.residual};
  });
}

sqfl_status sqfl_count_qp(sqfl_session* session, double x, sqfl_lambda lambda, int include_one, uint64_t* out,
                          double* lambda_value) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto ctx = sqfl::SiftingContext::build(session->primes(count_limit(x)), x, to_spec(lambda));
    *out = sqfl::count_qp(ctx, session->count_options(include_one != 0));
    if (lambda_value) *lambda_value = ctx.lambda_value();
  });
}

sqfl_status sqfl_sifted_count(sqfl_session* session, double x, sqfl_lambda lambda, uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto ctx = sqfl::SiftingContext::build(session->primes(count_limit(x)), x, to_spec(lambda));
    *out = sqfl::sifted_count(ctx, session->count_options());
  });
}

sqfl_status sqfl_count_a(sqfl_session* session, double x, sqfl_lambda lambda, double y, int include_one,
                         uint64_t* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto ctx = sqfl::SiftingContext::build(session->primes(count_limit(x)), x, to_spec(lambda));
    *out = sqfl::count_a(y, ctx, session->count_options(include_one != 0));
  });
}

sqfl_status sqfl_mertens_product(sqfl_session* session, double y, sqfl_product_bounds* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = to_c(sqfl::mertens_product(y, session->primes(count_limit(y)))); });
}

sqfl_status sqfl_psi_ratio_product(sqfl_session* session, double y, sqfl_product_bounds* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = to_c(sqfl::psi_ratio_product(y, session->primes(count_limit(y)))); });
}

sqfl_status sqfl_zeta2_partial(sqfl_session* session, double y, sqfl_product_bounds* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = to_c(sqfl::zeta2_partial(y, session->primes(count_limit(y)))); });
}

sqfl_status sqfl_sieve_density_product(sqfl_session* session, double x, sqfl_lambda lambda, double* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto ctx = sqfl::SiftingContext::build(session->primes(count_limit(x)), x, to_spec(lambda));
    *out = sqfl::sieve_density_product(ctx);
  });
}

sqfl_status sqfl_requirement_check(sqfl_session* session, double eta, double xi, double kappa, double kappa_prime,
                                   sqfl_requirement* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto& t = session->primes(std::isnan(xi) || xi < 2 ? 2 : count_limit(xi));
    const auto r = sqfl::requirement_check(eta, xi, kappa, kappa_prime, t);
    *out = {r.lhs, r.rhs, r.slack, r.passed ? 1 : 0};
  });
}

sqfl_status sqfl_g_coeffs(int divides, double z_re, double z_im, unsigned nu_max, double* re_out, double* im_out) {
  if (!re_out || !im_out) return SQFL_ERROR_INVALID_ARGUMENT;
  sqfl_session* session = nullptr;
  return guarded(session, [&] {
    const auto g = sqfl::g_coeffs(divides != 0, {z_re, z_im}, nu_max);
    for (std::size_t i = 0; i < g.coefficients.size(); ++i) {
      re_out[i] = g.coefficients[i].real();
      im_out[i] = g.coefficients[i].imag();
    }
  });
}

sqfl_status sqfl_f_eval(sqfl_session* session, uint64_t d, double s, double z_re, double z_im,
                        uint64_t truncation_prime, sqfl_sd_eval* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto& t = session->primes(std::max(truncation_prime, sqfl::isqrt(d) + 1));
    *out = to_c(sqfl::F_d_eval(d, s, {z_re, z_im}, truncation_prime, t));
  });
}

sqfl_status sqfl_g_eval(sqfl_session* session, uint64_t d, double s, double z_re, double z_im,
                        uint64_t truncation_prime, sqfl_sd_eval* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] {
    const auto& t = session->primes(std::max(truncation_prime, sqfl::isqrt(d) + 1));
    *out = to_c(sqfl::G_d_eval(d, s, {z_re, z_im}, truncation_prime, t));
  });
}

sqfl_status sqfl_lambda0(sqfl_session* session, uint64_t d, double* out) {
  SQFL_REQUIRE(session && out);
  return guarded(session, [&] { *out = sqfl::lambda0_closed_form(d, session->primes(sqfl::isqrt(d) + 1)); });
}

sqfl_status sqfl_m_constant(double A, unsigned grid_density, sqfl_m_estimate* out) {
  if (!out) return SQFL_ERROR_INVALID_ARGUMENT;
  sqfl_session* session = nullptr;
  return guarded(session, [&] {
    const auto m = sqfl::M_constant(A, grid_density);
    *out = {m.estimate,          m.grid_max,         m.z_spacing,         m.xi_spacing,
            m.z_at_max.real(),   m.z_at_max.imag(),  m.xi_at_max.real(),  m.xi_at_max.imag(),
            sqfl::M_constant_upper(A)};
  });
}

sqfl_status sqfl_scan_proposition(sqfl_session* session, const double* eps, size_t n_eps, const double* x_grid,
                                  size_t n_x, double lambda_coefficient, double max_x, int include_one,
                                  sqfl_report** out) {
  SQFL_REQUIRE(session && out);
  sqfl::ScanReport report;
  const auto status = guarded(session, [&] {
    sqfl::PropositionScanParams p;
    p.eps_list = to_vector(eps, n_eps, "epsilon list");
    p.x_grid = to_vector(x_grid, n_x, "x grid");
    p.lambda_coefficient = lambda_coefficient;
    p.max_x = max_x;
    p.include_one = include_one != 0;
    p.threads = session->threads;
    double need = 1;
    for (double x : p.x_grid)
      if (x <= max_x) need = std::max(need, x);
    grid_max(p.x_grid);
    report = sqfl::proposition_ratio_scan(p, session->primes(count_limit(need)));
  });
  return status == SQFL_OK ? finish_report(session, std::move(report), out) : status;
}

sqfl_status sqfl_scan_lemma22(sqfl_session* session, const double* x_grid, size_t n_x, const uint64_t* d_sample,
                              size_t n_d, double delta, double eta, sqfl_report** out) {
  SQFL_REQUIRE(session && out);
  sqfl::ScanReport report;
  const auto status = guarded(session, [&] {
    sqfl::Lemma22ScanParams p;
    p.x_grid = to_vector(x_grid, n_x, "x grid");
    if (n_d > 0) p.d_sample = to_vector(d_sample, n_d, "d sample");
    p.delta = delta;
    p.eta = eta;
    p.threads = session->threads;
    std::uint64_t need = root_limit(grid_max(p.x_grid));
    for (std::uint64_t d : p.d_sample) need = std::max(need, sqfl::isqrt(d) + 1);
    report = sqfl::lemma22_error_scan(p, session->primes(need));
  });
  return status == SQFL_OK ? finish_report(session, std::move(report), out) : status;
}

sqfl_status sqfl_scan_lemma23(sqfl_session* session, const double* x_grid, size_t n_x, const uint64_t* d_sample,
                              size_t n_d, sqfl_report** out) {
  SQFL_REQUIRE(session && out);
  sqfl::ScanReport report;
  const auto status = guarded(session, [&] {
    sqfl::Lemma23ScanParams p;
    if (n_x > 0) p.x_grid = to_vector(x_grid, n_x, "x grid");
    if (n_d > 0) p.d_sample = to_vector(d_sample, n_d, "d sample");
    p.threads = session->threads;
    std::uint64_t need = root_limit(grid_max(p.x_grid));
    for (std::uint64_t d : p.d_sample) need = std::max(need, sqfl::isqrt(d) + 1);
    report = sqfl::lemma23_error_scan(p, session->primes(need));
  });
  return status == SQFL_OK ? finish_report(session, std::move(report), out) : status;
}

sqfl_status sqfl_scan_abel(sqfl_session* session, const double* x_grid, size_t n_x, double epsilon, double c,
                           double lambda_coefficient, sqfl_report** out) {
  SQFL_REQUIRE(session && out);
  sqfl::ScanReport report;
  const auto status = guarded(session, [&] {
    sqfl::AbelScanParams p;
    p.x_grid = to_vector(x_grid, n_x, "x grid");
    p.epsilon = epsilon;
    p.c = c;
    p.lambda_coefficient = lambda_coefficient;
    p.divisor_cap = session->divisor_cap;
    p.threads = session->threads;
    report = sqfl::abel_scan(p, session->primes(count_limit(grid_max(p.x_grid))));
  });
  return status == SQFL_OK ? finish_report(session, std::move(report), out) : status;
}

sqfl_status sqfl_scan_a_ratio(sqfl_session* session, const double* x_grid, size_t n_x, double epsilon,
                              unsigned samples, sqfl_report** out) {
  SQFL_REQUIRE(session && out);
  sqfl::ScanReport report;
  const auto status = guarded(session, [&] {
    sqfl::ARatioScanParams p;
    p.x_grid = to_vector(x_grid, n_x, "x grid");
    p.epsilon = epsilon;
    p.samples = samples;
    p.threads = session->threads;
    report = sqfl::a_ratio_scan(p, session->primes(count_limit(grid_max(p.x_grid))));
  });
  return status == SQFL_OK ? finish_report(session, std::move(report), out) : status;
}

sqfl_status sqfl_report_render(sqfl_report* report, sqfl_format format, const char** text) {
  if (!report || !text) return SQFL_ERROR_INVALID_ARGUMENT;
  sqfl_session* session = nullptr;
  return guarded(session, [&] {
    if (format == SQFL_FORMAT_CSV) {
      if (report->csv.empty()) report->csv = sqfl::to_csv(report->report);
      *text = report->csv.c_str();
    } else if (format == SQFL_FORMAT_JSON) {
      if (report->json.empty()) report->json = sqfl::to_json(report->report);
      *text = report->json.c_str();
    } else {
      throw sqfl::DomainError("unknown report format");
    }
  });
}

sqfl_status sqfl_report_summary_number(const sqfl_report* report, const char* key, double* out) {
  if (!report || !key || !out) return SQFL_ERROR_INVALID_ARGUMENT;
  const auto& s = report->report.summary;
  const auto it = s.find(key);
  if (it == s.end()) return SQFL_ERROR_INVALID_ARGUMENT;
  if (it->is_boolean()) {
    *out = it->get<bool>() ? 1.0 : 0.0;
  } else if (it->is_number()) {
    *out = it->get<double>();
  } else if (it->is_null()) {
    *out = std::nan("");
  } else {
    return SQFL_ERROR_INVALID_ARGUMENT;
  }
  return SQFL_OK;
}

size_t sqfl_report_row_count(const sqfl_report* report) { return report ? report->report.rows.size() : 0; }

void sqfl_report_destroy(sqfl_report* report) { delete report; }

} // extern "C"
