#pragma once

// Ramanujan sums c_q(n) in three forms, plus the divisor-sum identities.
// The Holder form is the canonical evaluation path; the divisor-sum and
// exponential forms exist as independent cross-checks.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "primespect/arith.hpp"

namespace primespect {

// Holder form: mu(q/d) phi(q) / phi(q/d) with d = gcd(n, q).
inline std::int64_t csum(std::uint64_t q, std::uint64_t n) {
  if (q == 0 || n == 0)
    throw std::invalid_argument("csum: q and n must be positive");
  std::uint64_t d = std::gcd(n, q);
  std::uint64_t qd = q / d;
  int mu_qd = mobius(qd);
  if (mu_qd == 0) return 0;
  return std::int64_t(mu_qd) * std::int64_t(totient(q) / totient(qd));
}

// Divisor form: sum of mu(q/d) d over d | gcd(n, q).
inline std::int64_t csum_divisor(std::uint64_t q, std::uint64_t n) {
  if (q == 0 || n == 0)
    throw std::invalid_argument("csum_divisor: q and n must be positive");
  std::int64_t sum = 0;
  for (std::uint64_t d : divisors(std::gcd(n, q)))
    sum += std::int64_t(mobius(q / d)) * std::int64_t(d);
  return sum;
}

// Exponential form: sum of cos(2 pi k n / q) over k coprime to q, rounded.
// O(q) cost, so restricted to q <= 10^5.
inline std::int64_t csum_exponential(std::uint64_t q, std::uint64_t n) {
  if (q == 0 || n == 0)
    throw std::invalid_argument("csum_exponential: q and n must be positive");
  if (q > 100000)
    throw std::invalid_argument("csum_exponential: q <= 10^5");
  detail::KahanSum acc;
  for (std::uint64_t k = 1; k <= q; ++k) {
    if (std::gcd(k, q) != 1) continue;
    std::uint64_t r = (k * (n % q)) % q;  // exact angle reduction
    double angle = 2.0 * std::numbers::pi * double(r) / double(q);
    acc.add(std::cos(angle));
  }
  double v = acc.value();
  double rounded = std::round(v);
  if (std::abs(v - rounded) >= 1e-6)
    throw std::logic_error("csum_exponential: rounding residual >= 1e-6");
  return static_cast<std::int64_t>(rounded);
}

// Sum of c_d(n/d) over d | n: sqrt(n) for perfect squares, 0 otherwise.
inline std::int64_t sqrt_identity_sum(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sqrt_identity_sum: n >= 1");
  std::int64_t sum = 0;
  for (std::uint64_t d : divisors(n)) sum += csum(d, n / d);
  return sum;
}

// Sum of c_d(m) over d | n: n when n | m, 0 otherwise.
inline std::int64_t divisor_identity_sum(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0)
    throw std::invalid_argument("divisor_identity_sum: n, m >= 1");
  std::int64_t sum = 0;
  for (std::uint64_t d : divisors(n)) sum += csum(d, m);
  return sum;
}

}  // namespace primespect
