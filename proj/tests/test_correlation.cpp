#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "primespect/primespect.hpp"

using namespace primespect;

namespace {

// Single-threaded reference counter with no trial-division prefilter.
std::uint64_t brute_poly_twin_count(const PairFamily& family,
                                    std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1;; ++n) {
    std::uint64_t v = family.first_value(n);
    if (v > x) break;
    if (is_prime_u64(v) && is_prime_u64(v + 2)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("lambda correlation matches hand enumeration", "[correlation]") {
  double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0),
         l7 = std::log(7.0), l11 = std::log(11.0);
  // x = 2, m = 2: only n = 2 contributes Lambda(2) Lambda(4).
  REQUIRE(lambda_correlation(2, 2) == Catch::Approx(l2 * l2).epsilon(1e-12));
  // x = 10, m = 2: n = 2, 3, 5, 7 (9 = 3^2) and 9 (11 prime).
  double expected =
      l2 * l2 + l3 * l5 + l5 * l7 + l7 * l3 + l3 * l11;
  REQUIRE(lambda_correlation(10, 2) == Catch::Approx(expected).epsilon(1e-12));

  // Independent per-n table recomputation at a mid scale.
  LambdaTable table(5000 + 6);
  detail::KahanSum acc;
  for (std::uint64_t n = 1; n <= 5000; ++n)
    acc.add(table.lambda(n) * table.lambda(n + 6));
  REQUIRE(lambda_correlation(5000, 6) ==
          Catch::Approx(acc.value()).epsilon(1e-12));
}

TEST_CASE("odd-shift correlations are prime-power noise", "[correlation]") {
  REQUIRE(lambda_correlation(1000000, 1) / 1e6 < 0.05);
  REQUIRE_THROWS_AS(lambda_correlation(1ull << 32, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(lambda_correlation(0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(lambda_correlation(10, 0), std::invalid_argument);
}

TEST_CASE("linear pair counts", "[correlation]") {
  REQUIRE(pair_count(4, 2) == 0);
  REQUIRE(pair_count(10, 2) == 2);    // (3,5), (5,7)
  REQUIRE(pair_count(100, 2) == 8);
  REQUIRE(pair_count(100, 4) == 8);   // cousin pairs up to 100
  REQUIRE_THROWS_AS(pair_count(100, 3), std::invalid_argument);

  // Monotone in x, and equal to a direct per-candidate count.
  std::uint64_t prev = 0;
  for (std::uint64_t x = 10; x <= 2000; x += 130) {
    std::uint64_t c = pair_count(x, 2);
    REQUIRE(c >= prev);
    prev = c;
  }
  std::uint64_t direct = 0;
  for (std::uint64_t p = 3; p + 2 <= 100000; p += 2)
    if (is_prime_u64(p) && is_prime_u64(p + 2)) ++direct;
  REQUIRE(pair_count(100000, 2) == direct);
}

TEST_CASE("polynomial twin counts match brute force", "[correlation]") {
  for (auto family : {PairFamily::quadratic(), PairFamily::cubic(),
                      PairFamily::quartic()}) {
    for (std::uint64_t x : {10ull, 1000ull, 100000ull, 1000000ull}) {
      CountRecord rec = poly_twin_count(family, x);
      REQUIRE(rec.count == brute_poly_twin_count(family, x));
      // ratio recomputation closes exactly.
      double lg = std::log(double(x));
      REQUIRE(rec.ratio * std::pow(double(x), 1.0 / family.degree()) /
                  (lg * lg) ==
              Catch::Approx(double(rec.count)).epsilon(1e-12));
    }
  }
}

TEST_CASE("table anchor rows", "[correlation]") {
  CountRecord q = poly_twin_count(PairFamily::quadratic(), 1000);
  REQUIRE(q.count == 4);
  REQUIRE_THAT(q.ratio, Catch::Matchers::WithinRel(6.03579, 1e-5));
  CountRecord c = poly_twin_count(PairFamily::cubic(), 1000);
  REQUIRE(c.count == 2);
  REQUIRE_THAT(c.ratio, Catch::Matchers::WithinRel(9.54342, 1e-5));
  CountRecord f = poly_twin_count(PairFamily::quartic(), 1000);
  REQUIRE(f.count == 1);
  REQUIRE_THAT(f.ratio, Catch::Matchers::WithinRel(8.48543, 1e-5));
}

TEST_CASE("multi-threshold counting is consistent and deterministic",
          "[correlation]") {
  std::vector<std::uint64_t> xs{1000, 100000, 1000000};
  auto rows = poly_twin_counts(PairFamily::quadratic(), xs);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CountRecord single = poly_twin_count(PairFamily::quadratic(), xs[i]);
    REQUIRE(rows[i].count == single.count);
    REQUIRE(rows[i].ratio == single.ratio);
  }
  auto serial = poly_twin_counts(PairFamily::quadratic(), xs, 1);
  auto wide = poly_twin_counts(PairFamily::quadratic(), xs, 8);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    REQUIRE(serial[i].count == wide[i].count);
    REQUIRE(serial[i].ratio == wide[i].ratio);
  }

  REQUIRE_THROWS_AS(poly_twin_counts(PairFamily::quadratic(), {100, 10}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(poly_twin_counts(PairFamily::linear(2), {100}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      poly_twin_count(PairFamily::quartic(), 10000000000000001ull),
      std::invalid_argument);
}

TEST_CASE("Lambda at 64-bit values", "[correlation]") {
  REQUIRE(lambda_u64(1) == 0.0);
  REQUIRE(lambda_u64(2) == Catch::Approx(std::log(2.0)));
  REQUIRE(lambda_u64(1024) == Catch::Approx(std::log(2.0)));
  REQUIRE(lambda_u64(9409) == Catch::Approx(std::log(97.0)));  // 97^2
  REQUIRE(lambda_u64(12) == 0.0);
  REQUIRE(lambda_u64(11920928955078125ull) ==
          Catch::Approx(std::log(5.0)));  // 5^23
  for (std::uint64_t n = 1; n <= 5000; ++n)
    REQUIRE(lambda_u64(n) == Catch::Approx(von_mangoldt(n)).margin(1e-14));
}

TEST_CASE("weighted polynomial sums", "[correlation]") {
  // Quadratic pairs with f(n) <= 50: n = 1 gives (2, 4), n = 2 gives (5, 7),
  // n = 4 gives (17, 19); n = 6 gives (37, 39) with Lambda(39) = 0.
  double expected = std::log(2.0) * std::log(2.0) +
                    std::log(5.0) * std::log(7.0) +
                    std::log(17.0) * std::log(19.0);
  REQUIRE(lambda_poly_sum(PairFamily::quadratic(), 50, true) ==
          Catch::Approx(expected).epsilon(1e-12));

  REQUIRE(lambda_poly_sum(PairFamily::quadratic(), 1, true) == 0.0);
  double single = lambda_poly_sum(PairFamily::quadratic(), 1000000, false);
  REQUIRE(std::abs(single / 1000.0 - 1.3728) < 0.25 * 1.3728);
  REQUIRE_THROWS_AS(lambda_poly_sum(PairFamily::linear(2), 100, true),
                    std::invalid_argument);
}

TEST_CASE("mean values realize the orthogonality relations", "[correlation]") {
  REQUIRE(mean_value_estimate(1, 1, 17) == 1.0);
  REQUIRE(mean_value_estimate(2, 2, 4) == 1.0);  // c_2 alternates -1, 1
  REQUIRE(mean_value_estimate(3, 3, 100000) == Catch::Approx(2.0).margin(0.01));
  REQUIRE(mean_value_estimate(2, 3, 100000) == Catch::Approx(0.0).margin(0.01));

  // a_q = (1/phi(q)) M(c_q f) picks out the coefficient of c_3.
  auto f = [](std::uint64_t n) { return double(csum(3, n)); };
  REQUIRE(ramanujan_coefficient_estimate(f, 3, 100000) ==
          Catch::Approx(1.0).margin(0.01));
  REQUIRE(ramanujan_coefficient_estimate(f, 2, 100000) ==
          Catch::Approx(0.0).margin(0.01));
  auto one = [](std::uint64_t) { return 1.0; };
  REQUIRE(ramanujan_coefficient_estimate(one, 1, 100) == 1.0);
}

TEST_CASE("truncated correlation identity", "[correlation]") {
  WkResult trivial = wk_empirical(5, 3.0, 1, 100);
  REQUIRE(trivial.lhs == 1.0);
  REQUIRE(trivial.rhs == 1.0);

  WkResult r = wk_empirical(2, 2.0, 10, 100000);
  REQUIRE(std::abs(r.lhs - r.rhs) <= 0.01 * std::abs(r.rhs));

  // Rate check: the m-averaged discrepancy at least halves per doubling of x
  // on average across five doublings (an O(1/x) error term).
  double err[6] = {0.0};
  for (std::uint64_t m : {2ull, 4ull, 6ull}) {
    std::uint64_t x = 50000;
    for (int step = 0; step < 6; ++step, x *= 2) {
      WkResult w = wk_empirical(m, 2.0, 10, x);
      err[step] += std::abs(w.lhs - w.rhs) / 3.0;
    }
  }
  for (int step = 0; step < 6; ++step) REQUIRE(err[step] > 0.0);
  REQUIRE(err[5] / err[0] <= 1.0 / 32.0);
}
