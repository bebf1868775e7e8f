#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "primespect/primespect.hpp"

using namespace primespect;

TEST_CASE("prime counts at reference points", "[sieve]") {
  REQUIRE(PrimeTable(2).count() == 1);
  REQUIRE(PrimeTable(100).count() == 25);
  REQUIRE(PrimeTable(1000000).count() == 78498);

  REQUIRE(primes_up_to(2).primes() == std::vector<std::uint64_t>{2});
  REQUIRE_THROWS_AS(primes_up_to(1), std::invalid_argument);
  REQUIRE_THROWS_AS(primes_up_to(10000000001ull), std::invalid_argument);
}

TEST_CASE("PrimeTable membership agrees with the deterministic test",
          "[sieve]") {
  PrimeTable table(100000);
  for (std::uint64_t n = 2; n <= 100000; ++n)
    REQUIRE(table.is_prime(n) == is_prime_u64(n));
  REQUIRE_FALSE(table.is_prime(1));
  REQUIRE_THROWS_AS(table.is_prime(100001), std::out_of_range);

  // for_each_prime visits the same set in ascending order.
  std::uint64_t prev = 0, visited = 0;
  table.for_each_prime([&](std::uint64_t p) {
    REQUIRE(p > prev);
    REQUIRE(table.is_prime(p));
    prev = p;
    ++visited;
  });
  REQUIRE(visited == table.count());
}

TEST_CASE("memory budget is enforced", "[sieve]") {
  REQUIRE_THROWS_AS(PrimeTable(100000000, 1024), BudgetExceeded);
  REQUIRE_THROWS_AS(LambdaTable(100000000, 1024), BudgetExceeded);
}

TEST_CASE("LambdaTable bases agree with prime_power_base", "[sieve]") {
  LambdaTable table(100000);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    auto base = prime_power_base(n);
    REQUIRE(table.base(n) == (base ? *base : 0));
    if (base)
      REQUIRE(table.lambda(n) == Catch::Approx(std::log(double(*base))));
    else
      REQUIRE(table.lambda(n) == 0.0);
  }
}

TEST_CASE("Chebyshev psi sums", "[sieve]") {
  REQUIRE(lambda_sum(1) == 0.0);
  double expected10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) +
                      std::log(7.0);
  REQUIRE(lambda_sum(10) == Catch::Approx(expected10).epsilon(1e-12));

  REQUIRE(std::abs(lambda_sum(1000000) / 1e6 - 1.0) < 0.005);
  for (std::uint64_t x : {100000ull, 1000000ull, 10000000ull}) {
    double ratio = lambda_sum(x) / double(x);
    REQUIRE(ratio >= 0.9);
    REQUIRE(ratio <= 1.1);
  }

  // Direct comparison with a per-n table sum at moderate size.
  LambdaTable table(20000);
  detail::KahanSum acc;
  for (std::uint64_t n = 1; n <= 20000; ++n) acc.add(table.lambda(n));
  REQUIRE(lambda_sum(20000) == Catch::Approx(acc.value()).epsilon(1e-12));
}

TEST_CASE("Lambda(n)/n partial sums stay within O(1) of log x", "[sieve]") {
  REQUIRE(lambda_over_n_sum(2) == Catch::Approx(std::log(2.0) / 2.0));
  for (std::uint64_t x : {1000ull, 10000ull, 100000ull, 1000000ull,
                          10000000ull})
    REQUIRE(std::abs(lambda_over_n_sum(x) - std::log(double(x))) < 2.0);
}
