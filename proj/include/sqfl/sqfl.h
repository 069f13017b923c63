/* C interface to the square-free counting library.
 *
 * All state lives in an opaque session, which owns a lazily grown prime
 * table. Every call returns an sqfl_status; on failure the message is
 * available from sqfl_session_last_error until the next call on the same
 * session. A session must not be used from two threads at once.
 */
#ifndef SQFL_SQFL_H
#define SQFL_SQFL_H

#include <stddef.h>
#include <stdint.h>

#if defined(SQFL_BUILDING_LIBRARY)
#define SQFL_API __attribute__((visibility("default")))
#else
#define SQFL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqfl_status {
  SQFL_OK = 0,
  SQFL_ERROR_DOMAIN = 2,
  SQFL_ERROR_CAPACITY = 3,
  SQFL_ERROR_RANGE = 4,
  SQFL_ERROR_INVALID_ARGUMENT = 5,
  SQFL_ERROR_INTERNAL = 6
} sqfl_status;

typedef enum sqfl_format { SQFL_FORMAT_CSV = 0, SQFL_FORMAT_JSON = 1 } sqfl_format;

typedef struct sqfl_session sqfl_session;
typedef struct sqfl_report sqfl_report;

typedef struct sqfl_lambda {
  double coefficient; /* C in lambda(x) = C x^eps */
  double exponent;    /* eps in (0, 1) */
} sqfl_lambda;

typedef struct sqfl_count_breakdown {
  uint64_t exact;
  double main_term;
  double residual;
} sqfl_count_breakdown;

typedef enum sqfl_bound_source {
  SQFL_BOUND_ROSSER_SCHOENFELD = 0,
  SQFL_BOUND_PSI_RATIO = 1,
  SQFL_BOUND_ZETA2_RANGE = 2
} sqfl_bound_source;

typedef struct sqfl_product_bounds {
  double y;
  double value;
  double lower;
  double upper;
  sqfl_bound_source source;
} sqfl_product_bounds;

typedef struct sqfl_requirement {
  double lhs;
  double rhs;
  double slack;
  int passed;
} sqfl_requirement;

typedef struct sqfl_sd_eval {
  double value_re;
  double value_im;
  uint64_t truncation_prime;
  double tail_bound;
} sqfl_sd_eval;

typedef struct sqfl_m_estimate {
  double estimate;
  double grid_max;
  double z_spacing;
  double xi_spacing;
  double z_re, z_im;
  double xi_re, xi_im;
  double rigorous_upper;
} sqfl_m_estimate;

SQFL_API const char* sqfl_version(void);
SQFL_API const char* sqfl_status_name(sqfl_status status);

SQFL_API sqfl_status sqfl_session_create(sqfl_session** out);
SQFL_API void sqfl_session_destroy(sqfl_session* session);
SQFL_API const char* sqfl_session_last_error(const sqfl_session* session);
/* 0 = hardware concurrency. */
SQFL_API sqfl_status sqfl_session_set_threads(sqfl_session* session, unsigned threads);
SQFL_API sqfl_status sqfl_session_set_divisor_cap(sqfl_session* session, uint64_t cap);
SQFL_API sqfl_status sqfl_session_set_memory_budget(sqfl_session* session, uint64_t bytes);
/* Builds the prime table up to `limit` now instead of on first use. */
SQFL_API sqfl_status sqfl_session_reserve_primes(sqfl_session* session, uint64_t limit);

/* Primes and rough numbers */
SQFL_API sqfl_status sqfl_prime_count(sqfl_session* session, double y, uint64_t* out);
SQFL_API sqfl_status sqfl_rough_count(sqfl_session* session, uint64_t y, double z, uint64_t* out);

/* Arithmetic functions */
SQFL_API sqfl_status sqfl_mobius(sqfl_session* session, uint64_t n, int* out);
SQFL_API sqfl_status sqfl_omega(sqfl_session* session, uint64_t n, unsigned* out);
SQFL_API sqfl_status sqfl_dedekind_psi(sqfl_session* session, uint64_t d, uint64_t* out);
SQFL_API sqfl_status sqfl_euler_phi(sqfl_session* session, uint64_t d, uint64_t* out);
SQFL_API sqfl_status sqfl_sieve_weight(sqfl_session* session, uint64_t d, int64_t* num, int64_t* den);

/* Counting */
SQFL_API sqfl_status sqfl_count_squarefree(sqfl_session* session, double x, sqfl_count_breakdown* out);
SQFL_API sqfl_status sqfl_count_ad(sqfl_session* session, double x, uint64_t d, sqfl_count_breakdown* out);
SQFL_API sqfl_status sqfl_count_qp(sqfl_session* session, double x, sqfl_lambda lambda, int include_one,
                                   uint64_t* out, double* lambda_value);
SQFL_API sqfl_status sqfl_sifted_count(sqfl_session* session, double x, sqfl_lambda lambda, uint64_t* out);
SQFL_API sqfl_status sqfl_count_a(sqfl_session* session, double x, sqfl_lambda lambda, double y, int include_one,
                                  uint64_t* out);

/* Euler products */
SQFL_API sqfl_status sqfl_mertens_product(sqfl_session* session, double y, sqfl_product_bounds* out);
SQFL_API sqfl_status sqfl_psi_ratio_product(sqfl_session* session, double y, sqfl_product_bounds* out);
SQFL_API sqfl_status sqfl_zeta2_partial(sqfl_session* session, double y, sqfl_product_bounds* out);
SQFL_API sqfl_status sqfl_sieve_density_product(sqfl_session* session, double x, sqfl_lambda lambda, double* out);
SQFL_API sqfl_status sqfl_requirement_check(sqfl_session* session, double eta, double xi, double kappa,
                                            double kappa_prime, sqfl_requirement* out);

/* Selberg-Delange machinery. Coefficient arrays hold nu_max + 1 entries. */
SQFL_API sqfl_status sqfl_g_coeffs(int divides, double z_re, double z_im, unsigned nu_max, double* re_out,
                                   double* im_out);
SQFL_API sqfl_status sqfl_f_eval(sqfl_session* session, uint64_t d, double s, double z_re, double z_im,
                                 uint64_t truncation_prime, sqfl_sd_eval* out);
SQFL_API sqfl_status sqfl_g_eval(sqfl_session* session, uint64_t d, double s, double z_re, double z_im,
                                 uint64_t truncation_prime, sqfl_sd_eval* out);
SQFL_API sqfl_status sqfl_lambda0(sqfl_session* session, uint64_t d, double* out);
SQFL_API sqfl_status sqfl_m_constant(double A, unsigned grid_density, sqfl_m_estimate* out);

/* Scans. Each returns a report owned by the caller. */
SQFL_API sqfl_status sqfl_scan_proposition(sqfl_session* session, const double* eps, size_t n_eps,
                                           const double* x_grid, size_t n_x, double lambda_coefficient,
                                           double max_x, int include_one, sqfl_report** out);
SQFL_API sqfl_status sqfl_scan_lemma22(sqfl_session* session, const double* x_grid, size_t n_x,
                                       const uint64_t* d_sample, size_t n_d, double delta, double eta,
                                       sqfl_report** out);
SQFL_API sqfl_status sqfl_scan_lemma23(sqfl_session* session, const double* x_grid, size_t n_x,
                                       const uint64_t* d_sample, size_t n_d, sqfl_report** out);
SQFL_API sqfl_status sqfl_scan_abel(sqfl_session* session, const double* x_grid, size_t n_x, double epsilon,
                                    double c, double lambda_coefficient, sqfl_report** out);
SQFL_API sqfl_status sqfl_scan_a_ratio(sqfl_session* session, const double* x_grid, size_t n_x, double epsilon,
                                       unsigned samples, sqfl_report** out);

/* Rendered text stays valid until the report is destroyed. */
SQFL_API sqfl_status sqfl_report_render(sqfl_report* report, sqfl_format format, const char** text);
SQFL_API sqfl_status sqfl_report_summary_number(const sqfl_report* report, const char* key, double* out);
SQFL_API size_t sqfl_report_row_count(const sqfl_report* report);
SQFL_API void sqfl_report_destroy(sqfl_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SQFL_SQFL_H */
