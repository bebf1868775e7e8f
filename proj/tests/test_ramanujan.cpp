#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "primespect/primespect.hpp"

using namespace primespect;

TEST_CASE("three evaluation forms agree for q, n <= 300", "[ramanujan]") {
  for (std::uint64_t q = 1; q <= 300; ++q)
    for (std::uint64_t n = 1; n <= 300; ++n) {
      std::int64_t holder = csum(q, n);
      REQUIRE(holder == csum_divisor(q, n));
      REQUIRE(holder == csum_exponential(q, n));
    }
}

TEST_CASE("prime-power values follow the three-case formula", "[ramanujan]") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull}) {
    std::uint64_t pv = 1;
    for (unsigned v = 1; v <= 4; ++v) {
      pv *= p;
      if (pv > 100000) break;
      for (std::uint64_t n = 1; n <= 500; ++n) {
        std::uint64_t d = std::gcd(n, pv);
        std::int64_t expected;
        if (d == pv)
          expected = std::int64_t(pv / p) * std::int64_t(p - 1);
        else if (d == pv / p)
          expected = -std::int64_t(pv / p);
        else
          expected = 0;
        REQUIRE(csum(pv, n) == expected);
      }
    }
  }
}

TEST_CASE("c_q(n) is multiplicative over the prime powers of q",
          "[ramanujan]") {
  for (std::uint64_t q = 1; q <= 200; ++q)
    for (std::uint64_t n = 1; n <= 200; ++n) {
      std::int64_t prod = 1;
      for (const auto& pp : factorize(q).factors) {
        std::uint64_t pv = 1;
        for (unsigned i = 0; i < pp.exponent; ++i) pv *= pp.prime;
        prod *= csum(pv, n);
      }
      REQUIRE(csum(q, n) == prod);
    }
}

TEST_CASE("even-index reductions for odd arguments", "[ramanujan]") {
  for (std::uint64_t m = 1; m <= 299; m += 2)
    for (std::uint64_t n = 1; n <= 299; n += 2) {
      REQUIRE(csum(2 * m, n) == -csum(m, n));  // c_{2m}(n) = -c_m(n)
      REQUIRE(csum(4 * m, n) == 0);            // v = 2
      REQUIRE(csum(8 * m, n) == 0);            // v = 3
    }
}

TEST_CASE("sqrt identity: sum of c_d(n/d) over d | n", "[ramanujan]") {
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(n)));
    while (root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    std::int64_t expected = root * root == n ? std::int64_t(root) : 0;
    REQUIRE(sqrt_identity_sum(n) == expected);

    // Same sum rebuilt from the exponential oracle.
    std::int64_t oracle = 0;
    for (std::uint64_t d : divisors(n)) oracle += csum_exponential(d, n / d);
    REQUIRE(oracle == expected);
  }
}

TEST_CASE("divisor identity: sum of c_d(m) over d | n", "[ramanujan]") {
  for (std::uint64_t n = 1; n <= 60; ++n)
    for (std::uint64_t m = 1; m <= 120; ++m) {
      std::int64_t expected = m % n == 0 ? std::int64_t(n) : 0;
      REQUIRE(divisor_identity_sum(n, m) == expected);
    }
}

TEST_CASE("magnitude bounds", "[ramanujan]") {
  // Sharp bound |c_q(n)| <= sigma(gcd(q, n)).
  for (std::uint64_t q = 1; q <= 500; ++q)
    for (std::uint64_t n = 1; n <= 500; ++n)
      REQUIRE(std::abs(csum(q, n)) <=
              std::int64_t(divisor_sum(std::gcd(q, n))));

  // The 2n log log n bound fails for small n (|c_3(3)| = 2 > 2*3*loglog 3),
  // so the property is checked from n = 100 up.
  for (std::uint64_t n = 100; n <= 500; ++n) {
    double bound = 2.0 * double(n) * std::log(std::log(double(n)));
    for (std::uint64_t q = 1; q <= 500; ++q)
      REQUIRE(double(std::abs(csum(q, n))) <= bound);
  }
}

TEST_CASE("argument validation", "[ramanujan]") {
  REQUIRE_THROWS_AS(csum(0, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(csum(5, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(csum_divisor(0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(csum_exponential(100001, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(sqrt_identity_sum(0), std::invalid_argument);
  REQUIRE_THROWS_AS(divisor_identity_sum(0, 1), std::invalid_argument);
}
