#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqfl/counting.hpp"
#include "sqfl/experiments.hpp"
#include "sqfl/format.hpp"
#include "sqfl/prime_engine.hpp"
#include "sqfl/report.hpp"

using namespace sqfl;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = build_prime_table(1'000'000);
  return t;
}
} // namespace

TEST_CASE("number formatting") {
  CHECK(format::real(0.1) == "0.10000000000000001");
  CHECK(format::real(1e3) == "1000");
  CHECK(format::real(2.5e-20) == "2.4999999999999999e-20");
  CHECK(format::real(NAN) == "nan");
  CHECK(format::csv_field("a,b") == "\"a,b\"");
  CHECK(format::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(format::csv_field("plain") == "plain");
}

TEST_CASE("report rendering") {
  ScanReport r;
  r.name = "demo";
  r.params["k"] = 1;
  r.columns = {"x", "label", "ok"};
  r.add_row({std::int64_t{3}, std::string("a,b"), true});
  r.add_row({0.25, std::string("c"), false});
  r.summary["n"] = 2;
  CHECK(to_csv(r) == "x,label,ok\n3,\"a,b\",true\n0.25,c,false\n");
  const auto j = to_json(r);
  CHECK(Json::parse(j).dump(2) + "\n" == j);
  CHECK(j.find("\"version\": \"1.0.0\"") != std::string::npos);
  CHECK(r.number(1, "x") == 0.25);
  CHECK_THROWS(r.add_row({1.0}));
  CHECK_THROWS(r.column("missing"));
}

TEST_CASE("proposition scan rows and summary") {
  PropositionScanParams p;
  p.x_grid = {1e3, 1e4, 1e5};
  p.eps_list = {0.5};
  const auto r = proposition_ratio_scan(p, table());
  REQUIRE(r.rows.size() == 3);
  CHECK(r.number(0, "observed") == static_cast<double>(oracle::count_qp(1000, std::sqrt(1000.0))));
  CHECK(r.number(0, "ratio") == doctest::Approx(153.0 / 500.0));
  CHECK(r.summary["within_bracket"].get<bool>());
  p.max_x = 5e3;
  const auto t = proposition_ratio_scan(p, table());
  CHECK(t.rows.size() == 1);
  CHECK(t.summary["truncated"].get<bool>());
}

TEST_CASE("threads do not change scan output") {
  PropositionScanParams p;
  p.x_grid = {1e3, 1e4, 1e5, 1e6};
  const auto serial = to_csv(proposition_ratio_scan(p, table()));
  p.threads = 4;
  CHECK(to_csv(proposition_ratio_scan(p, table())) == serial);
}

TEST_CASE("lemma22 scan filters d and rejects bad delta/eta") {
  Lemma22ScanParams p;
  p.x_grid = {1e4};
  p.d_sample = {1, 6, 30, 210, 2310};
  const auto r = lemma22_error_scan(p, table());
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    CHECK(r.number(i, "d") <= std::pow(1e4, 2.0 / 3.0 - p.eta));
  CHECK(r.number(1, "exact") == static_cast<double>(oracle::count_ad(10000, 6)));
  p.delta = 0.1;
  CHECK_THROWS(lemma22_error_scan(p, table()));
}

TEST_CASE("lemma23 fit on the default grid") {
  const auto r = lemma23_error_scan({}, table());
  CHECK(r.summary["c"].get<double>() > 0);
  CHECK_FALSE(r.summary["degenerate"].get<bool>());
}

TEST_CASE("Abel sum against direct summation") {
  const auto& t = table();
  const auto ctx = SiftingContext::build(t, 2000, {1, 0.5});
  const auto s = abel_sum_eval(2000, 0.5, 1, ctx);
  double ref = 0;
  std::uint64_t terms = 0;
  for (std::uint64_t d = 45; d <= 2000; ++d) {
    if (!(d > std::sqrt(2000.0)) || !oracle::is_squarefree(d)) continue;
    bool ok = true;
    for (auto p : oracle::prime_factors(d))
      if (p <= std::sqrt(2000.0)) ok = false;
    if (!ok) continue;
    ++terms;
    ref += std::exp(-std::sqrt(std::log(2000.0 / d))) / d;
  }
  CHECK(s.terms == terms);
  CHECK(s.sum == doctest::Approx(ref).epsilon(1e-12));
  CHECK(s.scaled == doctest::Approx(ref * std::log(2000.0)).epsilon(1e-12));
}

TEST_CASE("a-ratio scan sandwich") {
  ARatioScanParams p;
  p.x_grid = {1e3, 1e4};
  const auto r = a_ratio_scan(p, table());
  CHECK(r.rows.size() == 18);
  CHECK(r.summary["sandwich_violations"].get<int>() == 0);
  CHECK(r.summary["interior_within_bracket"].get<bool>());
}
