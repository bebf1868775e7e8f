// Command-line front end: every library computation behind a subcommand,
// emitting CSV/TSV/JSON-lines with a provenance header comment.
//
// Exit codes: 0 success, 1 identity-suite failure (selftest), 2 invalid
// flags, 3 memory budget exceeded.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primespect/primespect.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using Clock = std::chrono::steady_clock;

enum class Format { Csv, Tsv, JsonLines };

struct Output {
  Format format = Format::Csv;
  int precision = 10;
  std::ostream* out = &std::cout;
  std::ofstream file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
    out = &file;
  }

  std::string real(double v) const {
    std::ostringstream ss;
    ss.precision(precision);
    ss << v;
    return ss.str();
  }

  void header(const std::string& line) const {
    *out << "# " << line << "\n";
  }

  void row(const std::vector<std::pair<std::string, std::string>>& cells,
           bool with_names = false) const {
    if (format == Format::JsonLines) {
      *out << "{";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) *out << ",";
        *out << "\"" << cells[i].first << "\":" << cells[i].second;
      }
      *out << "}\n";
      return;
    }
    const char sep = format == Format::Csv ? ',' : '\t';
    if (with_names) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        *out << (i ? std::string(1, sep) : "") << cells[i].first;
      *out << "\n";
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      // Strings arrive pre-quoted for JSON lines; CSV/TSV print them bare.
      std::string v = cells[i].second;
      if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        v = v.substr(1, v.size() - 2);
      *out << (i ? std::string(1, sep) : "") << v;
    }
    *out << "\n";
  }
};

std::string jsonq(const std::string& s) { return "\"" + s + "\""; }

// Bounds are entered as 1e7-style scientific notation or plain integers.
std::uint64_t parse_bound(const std::string& text, const std::string& flag) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size() || v < 0 || v > 1.8e19 || v != std::floor(v))
      throw std::invalid_argument(text);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "not a nonnegative integer: " + text);
  }
}

std::string flags_echo(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace primespect;

  CLI::App app{"primespect: Ramanujan sums, the spectral kernel f(n,s), the "
               "spectrum F(sigma), density constants and prime-pair counts"};
  app.require_subcommand(1);

  Output output;
  std::string format_name = "csv", output_path;
  std::string memory_budget_text = std::to_string(kDefaultMemoryBudget);
  unsigned threads = std::thread::hardware_concurrency();
  app.add_option("--format", format_name, "csv | tsv | jsonl")
      ->check(CLI::IsMember({"csv", "tsv", "jsonl"}));
  app.add_option("--precision", output.precision,
                 "significant digits for reals")
      ->check(CLI::Range(1, 17));
  app.add_option("--output", output_path, "destination file (default stdout)");
  app.add_option("--memory-budget", memory_budget_text,
                 "sieve memory cap in bytes (scientific notation accepted)");
  app.add_option("--threads", threads, "worker threads for counting jobs");

  // csum
  auto* cmd_csum = app.add_subcommand("csum", "Ramanujan sum c_q(n)");
  std::string csum_q = "1", csum_n = "1";
  cmd_csum->add_option("--q", csum_q, "modulus q >= 1")->required();
  cmd_csum->add_option("--n", csum_n, "argument n >= 1")->required();

  // identities
  auto* cmd_identities = app.add_subcommand(
      "identities", "verify the c_q(n) identity catalogue up to a limit");
  std::string id_limit = "300";
  cmd_identities->add_option("--limit", id_limit,
                             "argument bound for the identity checks");

  // series
  auto* cmd_series =
      app.add_subcommand("series", "spectral kernel f(n, s), both forms");
  std::string ser_n = "2", ser_q = "10000", ser_p = "1000000";
  double ser_sigma = 2.0;
  cmd_series->add_option("--n", ser_n, "kernel argument n >= 2")->required();
  cmd_series->add_option("--sigma", ser_sigma, "real s (> 1 for the product)");
  cmd_series->add_option("--series-cutoff", ser_q, "series cutoff Q");
  cmd_series->add_option("--prime-cutoff", ser_p, "product cutoff P");

  // spectrum-sweep
  auto* cmd_sweep =
      app.add_subcommand("spectrum-sweep", "F(sigma) over a sigma grid");
  std::string sw_m = "2", sw_p;
  double sw_lo = 0.25, sw_hi = 10.0, sw_step = 0.01;
  cmd_sweep->add_option("--m", sw_m, "shift m >= 1");
  cmd_sweep->add_option("--prime-cutoff", sw_p,
                        "prime cutoff P (default ceil(1e4 log 1e4))");
  cmd_sweep->add_option("--sigma-min", sw_lo, "grid start");
  cmd_sweep->add_option("--sigma-max", sw_hi, "grid end");
  cmd_sweep->add_option("--sigma-step", sw_step, "grid step");

  // constants
  auto* cmd_constants =
      app.add_subcommand("constants", "density and pair constants");
  std::string con_name, con_p = "1000000", con_k = "1", con_modulus = "3";
  cmd_constants
      ->add_option("--name", con_name,
                   "twin | pair | goldbach | quadratic | quartic | "
                   "poly-quadratic | poly-cubic | poly-quartic")
      ->required()
      ->check(CLI::IsMember({"twin", "pair", "goldbach", "quadratic",
                             "quartic", "poly-quadratic", "poly-cubic",
                             "poly-quartic"}));
  cmd_constants->add_option("--prime-cutoff", con_p, "product cutoff P");
  cmd_constants->add_option("--k", con_k, "pair gap parameter k (name=pair)");
  cmd_constants->add_option("--n", con_modulus,
                            "odd N for the Goldbach series");

  // correlate
  auto* cmd_correlate = app.add_subcommand(
      "correlate", "Lambda(n) Lambda(n+m) correlation sum up to x");
  std::string cor_x = "1000000", cor_shift = "2";
  cmd_correlate->add_option("--x", cor_x, "summation bound")->required();
  cmd_correlate->add_option("--shift", cor_shift, "shift m >= 1");

  // count-pairs
  auto* cmd_count =
      app.add_subcommand("count-pairs", "prime-pair counting tables");
  std::string cp_family = "quadratic";
  std::vector<std::string> cp_xs;
  std::string cp_shift;
  cmd_count->add_option("--family", cp_family,
                        "linear | quadratic | cubic | quartic")
      ->check(CLI::IsMember({"linear", "quadratic", "cubic", "quartic"}));
  cmd_count->add_option("--x", cp_xs, "threshold(s), ascending")->required();
  cmd_count->add_option("--shift", cp_shift, "even gap 2k (linear family)");

  // density
  auto* cmd_density =
      app.add_subcommand("density", "Dirichlet density estimate");
  std::string den_a = "1", den_q = "4", den_p = "10000000";
  double den_s = 1.05;
  cmd_density->add_option("--a", den_a, "residue class a");
  cmd_density->add_option("--q", den_q, "modulus q, gcd(a, q) = 1");
  cmd_density->add_option("--sigma", den_s, "exponent s > 1");
  cmd_density->add_option("--prime-cutoff", den_p, "prime cutoff P");

  // selftest
  auto* cmd_selftest = app.add_subcommand(
      "selftest", "brute-force identity suite; nonzero exit on failure");
  std::string st_limit = "300";
  cmd_selftest->add_option("--limit", st_limit, "argument bound");

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    output.format = format_name == "csv"
                        ? Format::Csv
                        : format_name == "tsv" ? Format::Tsv
                                               : Format::JsonLines;
    output.open(output_path);
    std::uint64_t memory_budget =
        parse_bound(memory_budget_text, "--memory-budget");
    if (threads == 0) threads = 1;

    std::ostringstream prov;
    prov << "primespect " << kVersion << " | " << flags_echo(argc, argv);
    output.header(prov.str());

    if (*cmd_csum) {
      std::uint64_t q = parse_bound(csum_q, "--q");
      std::uint64_t n = parse_bound(csum_n, "--n");
      if (q == 0 || n == 0)
        throw CLI::ValidationError("csum", "q and n must be >= 1");
      output.row({{"q", std::to_string(q)},
                  {"n", std::to_string(n)},
                  {"c", std::to_string(csum(q, n))}},
                 output.format != Format::JsonLines);
      return 0;
    }

    if (*cmd_identities || *cmd_selftest) {
      std::uint64_t limit =
          parse_bound(*cmd_identities ? id_limit : st_limit, "--limit");
      if (limit < 2 || limit > 2000)
        throw CLI::ValidationError("--limit", "expected 2 <= limit <= 2000");
      int failures = 0;
      auto check = [&](const char* name, bool ok) {
        output.row({{"identity", jsonq(name)},
                    {"status", jsonq(ok ? "ok" : "FAILED")}},
                   false);
        if (!ok) ++failures;
      };

      bool three_way = true, piv = true, pvi = true, mult = true, sqrt_id = true,
           div_id = true;
      for (std::uint64_t q = 1; q <= limit && three_way; ++q)
        for (std::uint64_t n = 1; n <= limit; ++n)
          if (csum(q, n) != csum_divisor(q, n) ||
              csum(q, n) != csum_exponential(q, n)) {
            three_way = false;
            break;
          }
      for (std::uint64_t m = 1; 8 * m <= limit && piv; m += 2)
        for (std::uint64_t n = 1; n <= limit; n += 2)
          if (csum(2 * m, n) != -csum(m, n) || csum(4 * m, n) != 0 ||
              csum(8 * m, n) != 0) {
            piv = false;
            break;
          }
      for (std::uint64_t q = 1; q <= limit && mult; ++q)
        for (std::uint64_t n = 1; n <= limit; ++n) {
          std::int64_t prod = 1;
          for (const auto& pp : factorize(q).factors) {
            std::uint64_t pv = 1;
            for (unsigned i = 0; i < pp.exponent; ++i) pv *= pp.prime;
            prod *= csum(pv, n);
          }
          if (csum(q, n) != prod) {
            mult = false;
            break;
          }
        }
      for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (std::uint64_t pv = p; pv <= limit && pvi; pv *= p) {
          for (std::uint64_t n = 1; n <= limit; ++n) {
            std::uint64_t d = std::gcd(n, pv);
            std::int64_t expected =
                d == pv ? std::int64_t(pv / p) * std::int64_t(p - 1)
                : d == pv / p ? -std::int64_t(pv / p)
                              : 0;
            if (csum(pv, n) != expected) {
              pvi = false;
              break;
            }
          }
          if (pv > limit / p) break;
        }
      }
      for (std::uint64_t n = 1; n <= limit && sqrt_id; ++n) {
        std::uint64_t root = std::uint64_t(std::sqrt(double(n)) + 0.5);
        std::int64_t expected = root * root == n ? std::int64_t(root) : 0;
        if (sqrt_identity_sum(n) != expected) sqrt_id = false;
      }
      for (std::uint64_t n = 1; n <= limit && div_id; ++n)
        for (std::uint64_t m = 1; m <= limit; ++m)
          if (divisor_identity_sum(n, m) !=
              (m % n == 0 ? std::int64_t(n) : 0)) {
            div_id = false;
            break;
          }

      check("three-way-agreement", three_way);
      check("even-index-reduction", piv);
      check("prime-power-cases", pvi);
      check("multiplicativity", mult);
      check("sqrt-identity", sqrt_id);
      check("divisor-identity", div_id);

      bool orth = true;
      for (std::uint64_t q = 1; q <= 10 && orth; ++q)
        for (std::uint64_t r = 1; r <= 10; ++r) {
          double target = q == r ? double(totient(q)) : 0.0;
          if (std::abs(mean_value_estimate(q, r, 100000) - target) > 0.01) {
            orth = false;
            break;
          }
        }
      check("mean-value-orthogonality", orth);
      WkResult w = wk_empirical(2, 2.0, 10, 100000);
      check("truncated-correlation",
            std::abs(w.lhs - w.rhs) <= 0.01 * std::abs(w.rhs));

      return failures == 0 ? 0 : 1;
    }

    if (*cmd_series) {
      std::uint64_t n = parse_bound(ser_n, "--n");
      std::uint64_t Q = parse_bound(ser_q, "--series-cutoff");
      std::uint64_t P = parse_bound(ser_p, "--prime-cutoff");
      TruncationParams trunc{Q, P, 1e-9};
      double series = f_series({n, ser_sigma}, trunc);
      if (ser_sigma > 1.0 && n >= 2) {
        Truncated prod = f_product({n, ser_sigma}, trunc);
        output.row({{"n", std::to_string(n)},
                    {"sigma", output.real(ser_sigma)},
                    {"f_series", output.real(series)},
                    {"f_product", output.real(prod.value)},
                    {"tail_bound", output.real(prod.tail_bound)}},
                   output.format != Format::JsonLines);
      } else {
        output.row({{"n", std::to_string(n)},
                    {"sigma", output.real(ser_sigma)},
                    {"f_series", output.real(series)}},
                   output.format != Format::JsonLines);
      }
      return 0;
    }

    if (*cmd_sweep) {
      std::uint64_t m = parse_bound(sw_m, "--m");
      std::uint64_t P =
          sw_p.empty() ? sweep_reference_cutoff() : parse_bound(sw_p, "--prime-cutoff");
      if (sw_step <= 0 || sw_hi < sw_lo)
        throw CLI::ValidationError("--sigma-step", "need a positive step");
      output.header("m=" + std::to_string(m) + " P=" + std::to_string(P));
      std::vector<double> grid;
      for (double s = sw_lo; s <= sw_hi + 1e-12; s += sw_step)
        grid.push_back(s);
      PrimeTable primes(P, memory_budget);
      bool first = true;
      for (const auto& pt : sweep_F(m, grid, primes)) {
        output.row({{"sigma", output.real(pt.sigma)},
                    {"F", output.real(pt.F)},
                    {"truncation_dependent",
                     pt.truncation_dependent ? "1" : "0"}},
                   first && output.format != Format::JsonLines);
        first = false;
      }
      return 0;
    }

    if (*cmd_constants) {
      std::uint64_t P = parse_bound(con_p, "--prime-cutoff");
      std::uint64_t k = parse_bound(con_k, "--k");
      std::uint64_t N = parse_bound(con_modulus, "--n");
      PrimeTable primes(P, memory_budget);
      double value;
      if (con_name == "twin")
        value = A_k(1, primes);
      else if (con_name == "pair")
        value = hl_pair_constant(k, primes);
      else if (con_name == "goldbach")
        value = singular_series_goldbach(N, primes);
      else if (con_name == "quadratic")
        value = quadratic_prime_constant(primes);
      else if (con_name == "quartic")
        value = quartic_prime_constant(primes);
      else if (con_name == "poly-quadratic")
        value = polynomial_pair_constant(quadratic_twin_spec(P), primes);
      else if (con_name == "poly-cubic")
        value = polynomial_pair_constant(cubic_twin_spec(P), primes);
      else
        value = polynomial_pair_constant(quartic_twin_spec(P), primes);
      output.row({{"name", jsonq(con_name)},
                  {"prime_cutoff", std::to_string(P)},
                  {"value", output.real(value)}},
                 output.format != Format::JsonLines);
      return 0;
    }

    if (*cmd_correlate) {
      std::uint64_t x = parse_bound(cor_x, "--x");
      std::uint64_t m = parse_bound(cor_shift, "--shift");
      double sum = lambda_correlation(x, m, memory_budget);
      output.row({{"x", std::to_string(x)},
                  {"shift", std::to_string(m)},
                  {"sum", output.real(sum)},
                  {"sum_over_x", output.real(sum / double(x))}},
                 output.format != Format::JsonLines);
      return 0;
    }

    if (*cmd_count) {
      std::vector<std::uint64_t> xs;
      for (const auto& t : cp_xs) xs.push_back(parse_bound(t, "--x"));
      if (!std::is_sorted(xs.begin(), xs.end()))
        throw CLI::ValidationError("--x", "thresholds must ascend");
      if (cp_family != "linear" && !cp_shift.empty())
        throw CLI::ValidationError(
            "--shift", "only the linear family takes a shift");
      bool first = true;
      if (cp_family == "linear") {
        std::uint64_t shift =
            cp_shift.empty() ? 2 : parse_bound(cp_shift, "--shift");
        for (std::uint64_t x : xs) {
          auto t0 = Clock::now();
          std::uint64_t count = pair_count(x, shift, memory_budget);
          double lg = std::log(double(x));
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        Clock::now() - t0)
                        .count();
          output.row({{"x", output.real(double(x))},
                      {"count", std::to_string(count)},
                      {"ratio", output.real(double(count) * lg * lg /
                                            double(x))},
                      {"family", jsonq("linear")}},
                     first && output.format != Format::JsonLines);
          output.header("runtime_ms=" + std::to_string(ms));
          first = false;
        }
        return 0;
      }
      PairFamily family = cp_family == "quadratic" ? PairFamily::quadratic()
                          : cp_family == "cubic" ? PairFamily::cubic()
                                                 : PairFamily::quartic();
      auto t0 = Clock::now();
      auto rows = poly_twin_counts(family, xs, threads);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    Clock::now() - t0)
                    .count();
      for (const auto& rec : rows) {
        output.row({{"x", output.real(rec.x)},
                    {"count", std::to_string(rec.count)},
                    {"ratio", output.real(rec.ratio)},
                    {"family", jsonq(family.name())}},
                   first && output.format != Format::JsonLines);
        first = false;
      }
      output.header("runtime_ms=" + std::to_string(ms));
      return 0;
    }

    if (*cmd_density) {
      std::uint64_t a = parse_bound(den_a, "--a");
      std::uint64_t q = parse_bound(den_q, "--q");
      std::uint64_t P = parse_bound(den_p, "--prime-cutoff");
      PrimeTable primes(P, memory_budget);
      output.row({{"a", std::to_string(a)},
                  {"q", std::to_string(q)},
                  {"sigma", output.real(den_s)},
                  {"density", output.real(
                       dirichlet_density_estimate(a, q, den_s, primes))},
                  {"limit_value", output.real(1.0 / double(totient(q)))}},
                 output.format != Format::JsonLines);
      return 0;
    }

    throw CLI::ValidationError("subcommand", "unhandled subcommand");
  } catch (const primespect::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
