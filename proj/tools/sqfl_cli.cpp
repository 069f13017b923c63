// sqfl: command-line front end over the C API in libsqfl.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqfl/format.hpp"
#include "sqfl/sqfl.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUsage = 64;
constexpr int kExitCantCreate = 73;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  sqfl_status status;
  ApiError(sqfl_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

struct RunConfig {
  std::optional<double> x, epsilon, y, z, s, eta, xi, kappa, kappa_prime, A, delta, c;
  double z_im = 0;
  double lambda_coefficient = 1;
  std::optional<std::uint64_t> d, truncation_prime;
  std::uint64_t nu_max = 8;
  unsigned grid_density = 64;
  unsigned samples = 9;
  bool include_one = true;
  bool divides = false;
  std::string series = "G";
  std::vector<double> x_grid, eps_list;
  std::vector<std::uint64_t> d_sample;
  std::uint64_t divisor_cap = 100'000'000;
  std::uint64_t memory_budget = 512ull << 20;
  unsigned threads = 0;
  std::string format = "json";
  std::string output;
};

// One or more result rows with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;  // each an object keyed by columns
  std::optional<std::string> list_key;  // JSON wraps rows under this key
  Json head = Json::object();           // scalar fields preceding the list
};

std::string csv_cell(const Json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return sqfl::format::real(v.get<double>());
  if (v.is_string()) return sqfl::format::csv_field(v.get<std::string>());
  if (v.is_null()) return "";
  return sqfl::format::csv_field(v.dump());
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out += ',';
      out += sqfl::format::csv_field(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(row.at(t.columns[i]));
      }
      out += '\n';
    }
    return out;
  }
  if (!t.list_key) return t.rows.front().dump() + "\n";
  Json j = t.head;
  j[*t.list_key] = Json(t.rows);
  return j.dump() + "\n";
}

Table single(Json row) {
  Table t;
  for (const auto& [k, v] : row.items()) t.columns.push_back(k);
  t.rows.push_back(std::move(row));
  return t;
}

void check(sqfl_session* session, sqfl_status status) {
  if (status == SQFL_OK) return;
  const char* msg = session ? sqfl_session_last_error(session) : "";
  std::string text = sqfl_status_name(status);
  if (msg && *msg) text += std::string(": ") + msg;
  throw ApiError(status, text);
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

void finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw DomainError(std::string(flag) + " must be finite");
}

void validate_lambda(const RunConfig& cfg) {
  const double eps = need(cfg.epsilon, "--epsilon");
  if (!(eps > 0 && eps < 1)) throw DomainError("--epsilon must lie in (0, 1)");
  if (!(cfg.lambda_coefficient > 0) || !std::isfinite(cfg.lambda_coefficient))
    throw DomainError("--lambda-coefficient must be a positive real");
}

void validate_x(const RunConfig& cfg, double minimum = 1) {
  const double x = need(cfg.x, "--x");
  finite(x, "--x");
  if (x < minimum) throw DomainError("--x must be at least " + sqfl::format::real(minimum));
}

void validate_grid(const std::vector<double>& grid, const char* flag) {
  for (double v : grid) {
    finite(v, flag);
    if (v < 1) throw DomainError(std::string(flag) + " values must be >= 1");
  }
}

// Checks every field the subcommand reads; runs before the session is created.
void validate(const std::string& cmd, const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cfg.divisor_cap == 0) throw DomainError("--divisor-cap must be positive");
  if (cfg.memory_budget == 0) throw DomainError("--memory-budget must be positive");

  if (cmd == "count-q") {
    validate_x(cfg);
  } else if (cmd == "count-ad") {
    validate_x(cfg);
    if (need(cfg.d, "--d") == 0) throw DomainError("--d must be positive");
  } else if (cmd == "count-qp" || cmd == "sift" || cmd == "density") {
    validate_x(cfg);
    validate_lambda(cfg);
  } else if (cmd == "count-a") {
    validate_x(cfg);
    validate_lambda(cfg);
    finite(need(cfg.y, "--y"), "--y");
  } else if (cmd == "phi") {
    const double y = need(cfg.y, "--y");
    if (!(y >= 0) || y != std::floor(y) || y >= 9007199254740992.0)
      throw DomainError("--y must be a nonnegative integer below 2^53");
    if (std::isnan(need(cfg.z, "--z"))) throw DomainError("--z must be a real number");
  } else if (cmd == "mertens" || cmd == "psi-product" || cmd == "zeta2") {
    const double y = need(cfg.y, "--y");
    finite(y, "--y");
    if (y < 2) throw DomainError("--y must be at least 2");
  } else if (cmd == "requirement") {
    finite(need(cfg.eta, "--eta"), "--eta");
    finite(need(cfg.xi, "--xi"), "--xi");
    finite(need(cfg.kappa, "--kappa"), "--kappa");
    finite(need(cfg.kappa_prime, "--kappa-prime"), "--kappa-prime");
    if (*cfg.eta < 2 || *cfg.xi < *cfg.eta) throw DomainError("requires 2 <= eta <= xi");
  } else if (cmd == "sd-gcoeffs") {
    finite(need(cfg.z, "--z"), "--z");
    finite(cfg.z_im, "--z-im");
    if (cfg.nu_max > 64) throw DomainError("--nu-max must be at most 64");
  } else if (cmd == "sd-geval") {
    if (need(cfg.d, "--d") == 0) throw DomainError("--d must be positive");
    const double s = need(cfg.s, "--s");
    finite(s, "--s");
    finite(need(cfg.z, "--z"), "--z");
    finite(cfg.z_im, "--z-im");
    need(cfg.truncation_prime, "--truncation-prime");
    if (cfg.series == "G" ? !(s > 0.5) : !(s > 1))
      throw DomainError(cfg.series == "G" ? "--s must exceed 1/2" : "--s must exceed 1");
  } else if (cmd == "sd-lambda0") {
    if (need(cfg.d, "--d") == 0) throw DomainError("--d must be positive");
  } else if (cmd == "sd-mconst") {
    const double A = need(cfg.A, "--A");
    if (!(A > 0 && A <= 4)) throw DomainError("--A must lie in (0, 4]");
    if (cfg.grid_density < 4) throw DomainError("--grid-density must be at least 4");
  } else if (cmd == "scan-proposition") {
    validate_grid(cfg.x_grid, "--x-grid");
    for (double e : cfg.eps_list)
      if (!(e > 0 && e < 1)) throw DomainError("--eps-list values must lie in (0, 1)");
    if (!(cfg.lambda_coefficient > 0)) throw DomainError("--lambda-coefficient must be positive");
  } else if (cmd == "scan-lemma22") {
    validate_grid(cfg.x_grid, "--x-grid");
    const double delta = cfg.delta.value_or(0.01), eta = cfg.eta.value_or(0.05);
    if (!(delta > 0 && delta < eta && eta < 2.0 / 3.0)) throw DomainError("requires 0 < delta < eta < 2/3");
  } else if (cmd == "scan-lemma23") {
    validate_grid(cfg.x_grid, "--x-grid");
  } else if (cmd == "scan-abel") {
    validate_grid(cfg.x_grid, "--x-grid");
    const double eps = cfg.epsilon.value_or(0.5);
    if (!(eps > 0 && eps < 1)) throw DomainError("--epsilon must lie in (0, 1)");
    if (!(cfg.c.value_or(1) > 0)) throw DomainError("--c must be positive");
  } else if (cmd == "scan-aratio") {
    validate_grid(cfg.x_grid, "--x-grid");
    const double eps = cfg.epsilon.value_or(0.5);
    if (!(eps > 0 && eps < 1)) throw DomainError("--epsilon must lie in (0, 1)");
    if (cfg.samples < 2) throw DomainError("--samples must be at least 2");
  }
}

const char* source_name(sqfl_bound_source s) {
  switch (s) {
    case SQFL_BOUND_ROSSER_SCHOENFELD: return "rosser_schoenfeld";
    case SQFL_BOUND_PSI_RATIO: return "psi_ratio";
    case SQFL_BOUND_ZETA2_RANGE: return "zeta2_range";
  }
  return "unknown";
}

Json breakdown(const sqfl_count_breakdown& b) {
  return Json{{"exact", b.exact}, {"main_term", b.main_term}, {"residual", b.residual}};
}

using ReportPtr = std::unique_ptr<sqfl_report, decltype(&sqfl_report_destroy)>;

// `slot` is read only after the scan call has filled it.
std::string render_report(sqfl_session* session, sqfl_status status, sqfl_report* const& slot,
                          const std::string& format) {
  check(session, status);
  ReportPtr report(slot, &sqfl_report_destroy);
  const char* text = nullptr;
  check(session, sqfl_report_render(report.get(), format == "csv" ? SQFL_FORMAT_CSV : SQFL_FORMAT_JSON, &text));
  return text;
}

std::string run(const std::string& cmd, const RunConfig& cfg) {
  sqfl_session* raw = nullptr;
  check(nullptr, sqfl_session_create(&raw));
  std::unique_ptr<sqfl_session, decltype(&sqfl_session_destroy)> guard(raw, &sqfl_session_destroy);
  sqfl_session* s = raw;
  check(s, sqfl_session_set_threads(s, cfg.threads));
  check(s, sqfl_session_set_divisor_cap(s, cfg.divisor_cap));
  check(s, sqfl_session_set_memory_budget(s, cfg.memory_budget));

  const sqfl_lambda lambda{cfg.lambda_coefficient, cfg.epsilon.value_or(0.5)};
  const int include_one = cfg.include_one ? 1 : 0;

  if (cmd == "count-q") {
    sqfl_count_breakdown b;
    check(s, sqfl_count_squarefree(s, *cfg.x, &b));
    return render(single(breakdown(b)), cfg.format);
  }
  if (cmd == "count-ad") {
    sqfl_count_breakdown b;
    check(s, sqfl_count_ad(s, *cfg.x, *cfg.d, &b));
    return render(single(breakdown(b)), cfg.format);
  }
  if (cmd == "count-qp") {
    std::uint64_t n = 0;
    double lv = 0;
    check(s, sqfl_count_qp(s, *cfg.x, lambda, include_one, &n, &lv));
    return render(single(Json{{"count", n}, {"lambda", lv}}), cfg.format);
  }
  if (cmd == "sift") {
    std::uint64_t n = 0;
    check(s, sqfl_sifted_count(s, *cfg.x, lambda, &n));
    return render(single(Json{{"count", n}}), cfg.format);
  }
  if (cmd == "count-a") {
    std::uint64_t n = 0;
    check(s, sqfl_count_a(s, *cfg.x, lambda, *cfg.y, include_one, &n));
    return render(single(Json{{"count", n}}), cfg.format);
  }
  if (cmd == "phi") {
    std::uint64_t n = 0;
    check(s, sqfl_rough_count(s, static_cast<std::uint64_t>(*cfg.y), *cfg.z, &n));
    return render(single(Json{{"count", n}}), cfg.format);
  }
  if (cmd == "mertens" || cmd == "psi-product" || cmd == "zeta2") {
    sqfl_product_bounds b;
    if (cmd == "mertens") check(s, sqfl_mertens_product(s, *cfg.y, &b));
    else if (cmd == "psi-product") check(s, sqfl_psi_ratio_product(s, *cfg.y, &b));
    else check(s, sqfl_zeta2_partial(s, *cfg.y, &b));
    return render(single(Json{{"y", b.y},
                              {"value", b.value},
                              {"lower", b.lower},
                              {"upper", b.upper},
                              {"source", source_name(b.source)}}),
                  cfg.format);
  }
  if (cmd == "density") {
    double v = 0;
    check(s, sqfl_sieve_density_product(s, *cfg.x, lambda, &v));
    return render(single(Json{{"value", v}}), cfg.format);
  }
  if (cmd == "requirement") {
    sqfl_requirement r;
    check(s, sqfl_requirement_check(s, *cfg.eta, *cfg.xi, *cfg.kappa, *cfg.kappa_prime, &r));
    return render(single(Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"passed", r.passed != 0}}),
                  cfg.format);
  }
  if (cmd == "sd-gcoeffs") {
    std::vector<double> re(cfg.nu_max + 1), im(cfg.nu_max + 1);
    check(s, sqfl_g_coeffs(cfg.divides ? 1 : 0, *cfg.z, cfg.z_im, static_cast<unsigned>(cfg.nu_max), re.data(),
                           im.data()));
    Table t;
    t.columns = {"nu", "re", "im"};
    t.list_key = "coefficients";
    t.head = Json{{"divides", cfg.divides}, {"z_re", *cfg.z}, {"z_im", cfg.z_im}};
    for (std::size_t nu = 0; nu < re.size(); ++nu) t.rows.push_back(Json{{"nu", nu}, {"re", re[nu]}, {"im", im[nu]}});
    return render(t, cfg.format);
  }
  if (cmd == "sd-geval") {
    sqfl_sd_eval e;
    if (cfg.series == "G") check(s, sqfl_g_eval(s, *cfg.d, *cfg.s, *cfg.z, cfg.z_im, *cfg.truncation_prime, &e));
    else check(s, sqfl_f_eval(s, *cfg.d, *cfg.s, *cfg.z, cfg.z_im, *cfg.truncation_prime, &e));
    return render(single(Json{{"value_re", e.value_re},
                              {"value_im", e.value_im},
                              {"truncation_prime", e.truncation_prime},
                              {"tail_bound", e.tail_bound}}),
                  cfg.format);
  }
  if (cmd == "sd-lambda0") {
    double v = 0;
    check(s, sqfl_lambda0(s, *cfg.d, &v));
    return render(single(Json{{"d", *cfg.d}, {"value", v}}), cfg.format);
  }
  if (cmd == "sd-mconst") {
    sqfl_m_estimate m;
    check(s, sqfl_m_constant(*cfg.A, cfg.grid_density, &m));
    return render(single(Json{{"A", *cfg.A},
                              {"estimate", m.estimate},
                              {"grid_max", m.grid_max},
                              {"z_spacing", m.z_spacing},
                              {"xi_spacing", m.xi_spacing},
                              {"z_re", m.z_re},
                              {"z_im", m.z_im},
                              {"xi_re", m.xi_re},
                              {"xi_im", m.xi_im},
                              {"rigorous_upper", m.rigorous_upper}}),
                  cfg.format);
  }

  sqfl_report* report = nullptr;
  const auto& xg = cfg.x_grid;
  if (cmd == "scan-proposition") {
    std::vector<double> eps = cfg.eps_list.empty() ? std::vector<double>{0.3, 0.5, 0.7} : cfg.eps_list;
    std::vector<double> grid = xg.empty() ? std::vector<double>{1e3, 1e4, 1e5, 1e6, 1e7} : xg;
    const double max_x = cfg.x.value_or(1e7);
    return render_report(s,
                         sqfl_scan_proposition(s, eps.data(), eps.size(), grid.data(), grid.size(),
                                               cfg.lambda_coefficient, max_x, include_one, &report),
                         report, cfg.format);
  }
  if (cmd == "scan-lemma22") {
    std::vector<double> grid = xg.empty() ? std::vector<double>{1e4, 1e5, 1e6, 1e7} : xg;
    return render_report(s,
                         sqfl_scan_lemma22(s, grid.data(), grid.size(), cfg.d_sample.data(), cfg.d_sample.size(),
                                           cfg.delta.value_or(0.01), cfg.eta.value_or(0.05), &report),
                         report, cfg.format);
  }
  if (cmd == "scan-lemma23") {
    return render_report(
        s, sqfl_scan_lemma23(s, xg.data(), xg.size(), cfg.d_sample.data(), cfg.d_sample.size(), &report), report,
        cfg.format);
  }
  if (cmd == "scan-abel") {
    std::vector<double> grid = xg.empty() ? std::vector<double>{1e3, 1e4, 1e5, 1e6} : xg;
    return render_report(s,
                         sqfl_scan_abel(s, grid.data(), grid.size(), cfg.epsilon.value_or(0.5), cfg.c.value_or(1),
                                        cfg.lambda_coefficient, &report),
                         report, cfg.format);
  }
  if (cmd == "scan-aratio") {
    std::vector<double> grid = xg.empty() ? std::vector<double>{1e3, 1e4, 1e5} : xg;
    return render_report(
        s, sqfl_scan_a_ratio(s, grid.data(), grid.size(), cfg.epsilon.value_or(0.5), cfg.samples, &report), report,
        cfg.format);
  }
  throw UsageError("unknown subcommand " + cmd);
}

int exit_code(sqfl_status status) {
  switch (status) {
    case SQFL_ERROR_DOMAIN:
    case SQFL_ERROR_RANGE:
    case SQFL_ERROR_INVALID_ARGUMENT: return kExitDomain;
    case SQFL_ERROR_CAPACITY: return kExitCapacity;
    default: return kExitInternal;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts and Euler-product checks for square-free numbers built from small primes", "sqfl"};
  app.set_version_flag("--version", std::string(sqfl_version()));
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; explicit flags take precedence")->envname("SQFL_CONFIG");

  RunConfig cfg;
  app.add_option("--x", cfg.x, "upper limit x");
  app.add_option("--epsilon", cfg.epsilon, "exponent eps of lambda(x) = C x^eps");
  app.add_option("--lambda-coefficient", cfg.lambda_coefficient, "coefficient C of lambda(x)");
  app.add_option("--d", cfg.d, "modulus d");
  app.add_option("--y", cfg.y, "y");
  app.add_option("--z", cfg.z, "z (real part for the Selberg-Delange commands)");
  app.add_option("--z-im", cfg.z_im, "imaginary part of z");
  app.add_option("--s", cfg.s, "real s");
  app.add_option("--series", cfg.series, "sd-geval series: G or F")->check(CLI::IsMember({"G", "F"}));
  app.add_option("--truncation-prime", cfg.truncation_prime, "Euler product truncation point");
  app.add_option("--eta", cfg.eta, "eta");
  app.add_option("--xi", cfg.xi, "xi");
  app.add_option("--kappa", cfg.kappa, "kappa");
  app.add_option("--kappa-prime", cfg.kappa_prime, "kappa'");
  app.add_option("--divides", cfg.divides, "whether p | d (sd-gcoeffs)");
  app.add_option("--nu-max", cfg.nu_max, "highest coefficient index");
  app.add_option("--A", cfg.A, "radius A of the z-disc");
  app.add_option("--grid-density", cfg.grid_density, "grid points per unit circle");
  app.add_option("--include-one", cfg.include_one, "count n = 1 (true|false)");
  app.add_option("--delta", cfg.delta, "delta for scan-lemma22");
  app.add_option("--c", cfg.c, "decay constant c for scan-abel");
  app.add_option("--x-grid", cfg.x_grid, "comma-separated x values")->delimiter(',');
  app.add_option("--eps-list", cfg.eps_list, "comma-separated eps values")->delimiter(',');
  app.add_option("--d-sample", cfg.d_sample, "comma-separated d values")->delimiter(',');
  app.add_option("--samples", cfg.samples, "y samples per x (scan-aratio)");
  app.add_option("--divisor-cap", cfg.divisor_cap, "maximum number of enumerated divisors");
  app.add_option("--memory-budget", cfg.memory_budget, "prime table budget in bytes");
  app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output, "output file (default stdout)");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"count-q", "square-free count Q(x)"},
      {"count-ad", "|A_d(x)|, square-free n <= x divisible by d"},
      {"count-qp", "Q_P(x), square-free n <= x with all prime factors <= lambda(x)"},
      {"sift", "inclusion-exclusion form of Q_P(x)"},
      {"count-a", "A(y), divisors n <= y of the product of primes in (lambda(x), x]"},
      {"phi", "Phi(y, z), integers <= y free of primes <= z"},
      {"mertens", "prod_{p<=y} (1 - 1/p) with explicit bounds"},
      {"psi-product", "prod_{p<=y} p/(p+1) with explicit bounds"},
      {"zeta2", "prod_{p<=y} (1 - 1/p^2)^-1"},
      {"density", "prod over primes in (lambda(x), x] of p/(p+1)"},
      {"requirement", "sieve dimension requirement check"},
      {"sd-gcoeffs", "coefficients of the local factor series"},
      {"sd-geval", "truncated Euler product G_d(s, z) (or F_d with --series F)"},
      {"sd-lambda0", "closed form of the leading constant"},
      {"sd-mconst", "bound constant M over |z| <= A"},
      {"scan-proposition", "ratio scan of Q_P(x) ln x / (x ln lambda)"},
      {"scan-lemma22", "error scan for |A_d(x)|"},
      {"scan-lemma23", "log-scaled residual decay scan"},
      {"scan-abel", "Abel summation scan"},
      {"scan-aratio", "A(y) ratio and sandwich scan"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sqfl: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::string text;
  try {
    validate(cmd, cfg);
    text = run(cmd, cfg);
  } catch (const UsageError& e) {
    std::cerr << "sqfl " << cmd << ": " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "sqfl " << cmd << ": domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ApiError& e) {
    std::cerr << "sqfl " << cmd << ": " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "sqfl " << cmd << ": " << e.what() << "\n";
    return kExitInternal;
  }

  if (cfg.output.empty()) {
    std::cout << text << std::flush;
    return kExitOk;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!(out << text) || !out.flush()) {
    std::cerr << "sqfl: cannot write " << cfg.output << "\n";
    return kExitCantCreate;
  }
  return kExitOk;
}
