#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "sqfl/sqfl.h"

namespace {
struct Session {
  sqfl_session* s = nullptr;
  Session() { REQUIRE(sqfl_session_create(&s) == SQFL_OK); }
  ~Session() { sqfl_session_destroy(s); }
};
} // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(sqfl_version()) == "1.0.0");
  CHECK(std::string(sqfl_status_name(SQFL_ERROR_CAPACITY)) == "capacity error");
}

TEST_CASE("counts through the C API") {
  Session h;
  sqfl_count_breakdown b;
  REQUIRE(sqfl_count_squarefree(h.s, 1e6, &b) == SQFL_OK);
  CHECK(b.exact == 607926);
  std::uint64_t n = 0;
  double lam = 0;
  REQUIRE(sqfl_count_qp(h.s, 30, {1, 0.5}, 1, &n, &lam) == SQFL_OK);
  CHECK(n == 8);
  CHECK(lam == doctest::Approx(std::sqrt(30.0)));
  REQUIRE(sqfl_sifted_count(h.s, 30, {1, 0.5}, &n) == SQFL_OK);
  CHECK(n == 8);
  REQUIRE(sqfl_prime_count(h.s, 1e6, &n) == SQFL_OK);
  CHECK(n == 78498);
  REQUIRE(sqfl_rough_count(h.s, 1000, 10, &n) == SQFL_OK);
  CHECK(n == 228);
  int mu = 0;
  REQUIRE(sqfl_mobius(h.s, 30, &mu) == SQFL_OK);
  CHECK(mu == -1);
  std::int64_t num = 0, den = 0;
  REQUIRE(sqfl_sieve_weight(h.s, 6, &num, &den) == SQFL_OK);
  CHECK(num == 1);
  CHECK(den == 2);
}

TEST_CASE("errors map to status codes with a message") {
  Session h;
  sqfl_count_breakdown b;
  CHECK(sqfl_count_ad(h.s, 100, 4, &b) == SQFL_ERROR_DOMAIN);
  CHECK(std::strlen(sqfl_session_last_error(h.s)) > 0);
  CHECK(sqfl_count_squarefree(h.s, -3, &b) == SQFL_ERROR_DOMAIN);
  CHECK(sqfl_count_squarefree(h.s, 10, nullptr) == SQFL_ERROR_INVALID_ARGUMENT);
  CHECK(sqfl_count_squarefree(nullptr, 10, &b) == SQFL_ERROR_INVALID_ARGUMENT);
  REQUIRE(sqfl_session_set_divisor_cap(h.s, 100) == SQFL_OK);
  std::uint64_t n = 0;
  CHECK(sqfl_sifted_count(h.s, 1e5, {1, 0.3}, &n) == SQFL_ERROR_CAPACITY);
  REQUIRE(sqfl_session_set_memory_budget(h.s, 4096) == SQFL_OK);
  CHECK(sqfl_prime_count(h.s, 1e9, &n) == SQFL_ERROR_CAPACITY);
  CHECK(sqfl_count_squarefree(h.s, 1e6, &b) == SQFL_OK);  // existing table still usable
  CHECK(sqfl_count_qp(h.s, 30, {1, 1.5}, 1, &n, nullptr) == SQFL_ERROR_DOMAIN);
  REQUIRE(sqfl_count_squarefree(h.s, 10, &b) == SQFL_OK);
  CHECK(std::strlen(sqfl_session_last_error(h.s)) == 0);
}

TEST_CASE("products, Selberg-Delange and requirement") {
  Session h;
  sqfl_product_bounds pb;
  REQUIRE(sqfl_zeta2_partial(h.s, 2, &pb) == SQFL_OK);
  CHECK(pb.value == 4.0 / 3.0);
  CHECK(pb.source == SQFL_BOUND_ZETA2_RANGE);
  sqfl_requirement r;
  REQUIRE(sqfl_requirement_check(h.s, 2, 2.5, 3, 14, &r) == SQFL_OK);
  CHECK(r.passed == 1);
  CHECK(r.lhs == 1.5);
  double re[5], im[5];
  REQUIRE(sqfl_g_coeffs(0, 1, 0, 4, re, im) == SQFL_OK);
  CHECK(re[2] == -1.0);
  sqfl_sd_eval e;
  double l0 = 0;
  REQUIRE(sqfl_g_eval(h.s, 30, 1, 1, 0, 1'000'000, &e) == SQFL_OK);
  REQUIRE(sqfl_lambda0(h.s, 30, &l0) == SQFL_OK);
  CHECK(std::abs(e.value_re - l0) <= e.tail_bound);
  sqfl_m_estimate m;
  REQUIRE(sqfl_m_constant(1, 16, &m) == SQFL_OK);
  CHECK(m.estimate <= m.rigorous_upper);
}

TEST_CASE("scan reports") {
  Session h;
  const double xs[] = {1e3, 1e4};
  const double eps[] = {0.5};
  sqfl_report* rep = nullptr;
  REQUIRE(sqfl_scan_proposition(h.s, eps, 1, xs, 2, 1, 1e7, 1, &rep) == SQFL_OK);
  CHECK(sqfl_report_row_count(rep) == 2);
  const char* csv = nullptr;
  REQUIRE(sqfl_report_render(rep, SQFL_FORMAT_CSV, &csv) == SQFL_OK);
  CHECK(std::string(csv).rfind("epsilon,x,lambda,observed,reference,ratio\n", 0) == 0);
  double v = 0;
  REQUIRE(sqfl_report_summary_number(rep, "within_bracket", &v) == SQFL_OK);
  CHECK(v == 1.0);
  CHECK(sqfl_report_summary_number(rep, "nope", &v) == SQFL_ERROR_INVALID_ARGUMENT);
  sqfl_report_destroy(rep);

  rep = nullptr;
  CHECK(sqfl_scan_lemma22(h.s, xs, 2, nullptr, 0, 0.2, 0.1, &rep) == SQFL_ERROR_DOMAIN);
  CHECK(rep == nullptr);
}
