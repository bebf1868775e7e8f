#pragma once

// The spectral kernel f(n, s): truncated Ramanujan-series and Euler-product
// evaluations, the zeta * A * B decomposition, and the s -> 1 limit.
//
// All evaluations are restricted to the real axis. At exactly s = 1 the
// truncated product form vanishes identically for every n >= 2 (the p | n
// factors are zero), while the true limit is a_1 for prime powers; the limit
// is therefore exposed only through f_limit_at_1.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "primespect/arith.hpp"
#include "primespect/sieve.hpp"
#include "primespect/util.hpp"

namespace primespect {

struct TruncationParams {
  std::uint64_t series_cutoff = 10000;   // Q
  std::uint64_t product_cutoff = 1000000;  // P, a prime bound
  double tail_tolerance = 1e-9;

  void validate() const {
    if (series_cutoff < 1 || product_cutoff < 2 || tail_tolerance <= 0.0)
      throw std::invalid_argument("TruncationParams: Q >= 1, P >= 2, tol > 0");
  }
};

struct EvalPoint {
  std::uint64_t n = 2;
  double s = 2.0;
};

// A truncated value together with an estimate of the dropped tail (a bound
// on |log error|, computed from the prime-density integral).
struct Truncated {
  double value = 0.0;
  double tail_bound = 0.0;
};

namespace detail {

inline double product_tail_bound(double P, double s) {
  // Bounds sum over primes p > P of p^(1-s)/p via the integral
  // int_P^inf t^-s / log t dt <= P^(1-s) / ((s-1) log P).
  if (s <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(P, 1.0 - s) / ((s - 1.0) * std::log(P));
}

inline std::vector<std::uint64_t> distinct_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n).factors) out.push_back(pp.prime);
  return out;
}

}  // namespace detail

// Visits the series terms mu(q) / (q^(s-1) phi(q)) * c_q(n) in ascending q.
template <typename Fn>
void for_each_series_term(std::uint64_t n, double s, std::uint64_t cutoff,
                          Fn&& fn) {
  if (n == 0) throw std::invalid_argument("series: n >= 1");
  if (s < 1.0) throw std::invalid_argument("series: s >= 1");
  if (cutoff > 0xFFFFFFFFull) throw std::invalid_argument("series: Q too large");
  SmallFunctionTable table(static_cast<std::uint32_t>(cutoff));
  for (std::uint32_t q = 1; q <= cutoff; ++q) {
    if (table.mu(q) == 0) continue;
    double coeff = table.mu(q) /
                   (std::pow(double(q), s - 1.0) * double(table.phi(q)));
    fn(q, coeff * double(table.csum(q, n)));
  }
}

// Partial sum of Eq-type series sum_{q <= Q} mu(q)/(q^(s-1) phi(q)) c_q(n).
inline double f_series(const EvalPoint& point, const TruncationParams& trunc) {
  trunc.validate();
  detail::KahanSum acc;
  for_each_series_term(point.n, point.s, trunc.series_cutoff,
                       [&](std::uint32_t, double term) { acc.add(term); });
  return acc.value();
}

// Truncated product form over a caller-provided prime table:
//   prod_{p|n} (1 - p^(1-s)) * prod_{p not | n, p <= P} (1 + 1/(p^(s-1)(p-1)))
// Log-domain with compensated summation in ascending-prime order.
inline Truncated f_product(const EvalPoint& point, const PrimeTable& primes,
                           double tail_tolerance = 1e-9) {
  if (point.n <= 1) throw std::invalid_argument("f_product: n >= 2");
  if (point.s <= 1.0) throw std::invalid_argument("f_product: s > 1");
  (void)tail_tolerance;
  auto pn = detail::distinct_primes(point.n);
  double s = point.s;
  detail::KahanSum log_acc;
  for (std::uint64_t p : pn)
    log_acc.add(std::log1p(-std::pow(double(p), 1.0 - s)));
  primes.for_each_prime([&](std::uint64_t p) {
    if (point.n % p == 0) return;
    log_acc.add(std::log1p(1.0 /
                           (std::pow(double(p), s - 1.0) * double(p - 1))));
  });
  return {std::exp(log_acc.value()),
          detail::product_tail_bound(double(primes.limit()), s)};
}

inline Truncated f_product(const EvalPoint& point,
                           const TruncationParams& trunc) {
  trunc.validate();
  PrimeTable primes(trunc.product_cutoff);
  return f_product(point, primes, trunc.tail_tolerance);
}

// a_1 = prod over distinct p | n of ((p-1)/p) log p; empty product is 1.
inline double a1(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("a1: n >= 1");
  double prod = 1.0;
  for (std::uint64_t p : detail::distinct_primes(n))
    prod *= (double(p - 1) / double(p)) * std::log(double(p));
  return prod;
}

// The s -> 1 limit of f(n, s): a_1 for prime powers, 0 otherwise. n = 1
// diverges and is reported as a domain error.
inline double f_limit_at_1(std::uint64_t n) {
  if (n <= 1)
    throw std::domain_error("f_limit_at_1: series diverges at n = 1");
  return omega(n) == 1 ? a1(n) : 0.0;
}

// Finite factor A(n, s) = prod_{p|n} (p-1)(p^(s-1)-1)/(p^s - p^(s-1) + 1).
inline double a_factor(std::uint64_t n, double s) {
  if (n == 0) throw std::invalid_argument("a_factor: n >= 1");
  double prod = 1.0;
  for (std::uint64_t p : detail::distinct_primes(n)) {
    double ps1 = std::pow(double(p), s - 1.0);
    prod *= double(p - 1) * (ps1 - 1.0) / (double(p) * ps1 - ps1 + 1.0);
  }
  return prod;
}

// B(s) = prod_p (1 + 1/(p^(s-1)(p-1))) (1 - 1/p^s), truncated at P.
// At s = 1 every factor telescopes to 1 exactly.
inline Truncated b_product(double s, const PrimeTable& primes) {
  if (s < 1.0) throw std::invalid_argument("b_product: s >= 1");
  if (s == 1.0) return {1.0, 0.0};
  detail::KahanSum log_acc;
  primes.for_each_prime([&](std::uint64_t p) {
    double ps1 = std::pow(double(p), s - 1.0);
    log_acc.add(std::log1p(1.0 / (ps1 * double(p - 1))));
    log_acc.add(std::log1p(-1.0 / (ps1 * double(p))));
  });
  return {std::exp(log_acc.value()),
          detail::product_tail_bound(double(primes.limit()), s + 1.0)};
}

inline Truncated b_product(double s, const TruncationParams& trunc) {
  trunc.validate();
  PrimeTable primes(trunc.product_cutoff);
  return b_product(s, primes);
}

// Riemann zeta on the real axis, s > 1, by Euler-Maclaurin on the Dirichlet
// series. Accurate to well beyond 10 significant digits for s >= 1.001.
inline double zeta_real(double s) {
  if (s <= 1.0) throw std::invalid_argument("zeta_real: s > 1");
  constexpr int kTerms = 40;
  detail::KahanSum acc;
  for (int n = 1; n <= kTerms; ++n) acc.add(std::pow(double(n), -s));
  double N = kTerms;
  double tail = std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s);
  // Bernoulli corrections B2, B4, B6.
  tail += s * std::pow(N, -s - 1.0) / 12.0;
  tail -= s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) *
          std::pow(N, -s - 5.0) / 30240.0;
  return acc.value() + tail;
}

// Central finite difference of the product form in s.
inline double f_derivative_numeric(const EvalPoint& point, double h,
                                   const PrimeTable& primes) {
  if (h <= 0.0) throw std::invalid_argument("f_derivative_numeric: h > 0");
  if (point.s - h <= 1.0)
    throw std::invalid_argument("f_derivative_numeric: step crosses s = 1");
  EvalPoint hi{point.n, point.s + h};
  EvalPoint lo{point.n, point.s - h};
  return (f_product(hi, primes).value - f_product(lo, primes).value) /
         (2.0 * h);
}

inline double f_derivative_numeric(const EvalPoint& point, double h,
                                   const TruncationParams& trunc) {
  trunc.validate();
  PrimeTable primes(trunc.product_cutoff);
  return f_derivative_numeric(point, h, primes);
}

}  // namespace primespect
