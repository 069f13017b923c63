#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"

namespace {
const std::string kCli = SQFL_CLI_PATH;

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("sqfl_test_") + name)).string();
}
} // namespace

TEST_CASE("simple commands") {
  auto r = run_cli(kCli, "count-q --x 10");
  CHECK(r.status == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["exact"] == 7);
  CHECK(j.begin().key() == "exact");
  r = run_cli(kCli, "count-q --x 10 --format csv");
  CHECK(r.out == "exact,main_term,residual\n7,6.0792710185402665,0.92072898145973348\n");
  r = run_cli(kCli, "phi --y 1000 --z 10");
  CHECK(nlohmann::json::parse(r.out)["count"] == 228);
}

TEST_CASE("include-one decrements by exactly one") {
  for (const char* x : {"600", "1000", "12345.5"}) {
    const std::string base = std::string("--x ") + x + " --epsilon 0.4 ";
    const auto with = nlohmann::json::parse(run_cli(kCli, "count-qp " + base + "--include-one true").out);
    const auto without = nlohmann::json::parse(run_cli(kCli, "count-qp " + base + "--include-one false").out);
    CHECK(with["count"].get<int>() - without["count"].get<int>() == 1);
    const auto a1 = nlohmann::json::parse(run_cli(kCli, "count-a " + base + "--y 500 --include-one true").out);
    const auto a0 = nlohmann::json::parse(run_cli(kCli, "count-a " + base + "--y 500 --include-one false").out);
    CHECK(a1["count"].get<int>() - a0["count"].get<int>() == 1);
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cli(kCli, "count-ad --x 100 --d 4").status == 2);
  CHECK(run_cli(kCli, "count-qp --x 100 --epsilon 1.5").status == 2);
  CHECK(run_cli(kCli, "zeta2 --y 1").status == 2);
  CHECK(run_cli(kCli, "sift --x 100000 --epsilon 0.3 --divisor-cap 10").status == 3);
  CHECK(run_cli(kCli, "frobnicate").status == 64);
  CHECK(run_cli(kCli, "").status == 64);
  CHECK(run_cli(kCli, "count-q").status == 64);  // missing --x
  CHECK(run_cli(kCli, "count-q --x 10 --format xml").status == 64);
  CHECK(run_cli(kCli, "--help").status == 0);
}

TEST_CASE("output file written only on success") {
  const auto out = temp_path("out.json");
  std::filesystem::remove(out);
  CHECK(run_cli(kCli, "count-ad --x 100 --d 4 --output " + out).status == 2);
  CHECK_FALSE(std::filesystem::exists(out));
  CHECK(run_cli(kCli, "count-q --x 100 --output " + out).status == 0);
  CHECK(slurp(out) == run_cli(kCli, "count-q --x 100").out);
  std::filesystem::remove(out);
}

TEST_CASE("config file merges under explicit flags") {
  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream f(cfg);
    f << "# defaults\nx = 1000\nepsilon = 0.5\nformat = csv\n";
  }
  const auto from_file = run_cli(kCli, "count-qp --config " + cfg);
  CHECK(from_file.status == 0);
  CHECK(from_file.out == run_cli(kCli, "count-qp --x 1000 --epsilon 0.5 --format csv").out);
  const auto override = run_cli(kCli, "count-qp --config " + cfg + " --x 30");
  CHECK(override.out == "count,lambda\n8,5.4772255750516612\n");
  const auto via_env = run_cli(kCli, "count-qp", "SQFL_CONFIG='" + cfg + "'");
  CHECK(via_env.out == from_file.out);
  std::filesystem::remove(cfg);
}

TEST_CASE("scan JSON round-trips byte for byte") {
  const auto r = run_cli(kCli, "scan-aratio --x-grid 1000,10000");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::ordered_json::parse(r.out).dump(2) + "\n" == r.out);
  const auto s = run_cli(kCli, "sd-gcoeffs --z 0.5 --z-im 0.25 --nu-max 6");
  CHECK(nlohmann::ordered_json::parse(s.out).dump() + "\n" == s.out);
}
