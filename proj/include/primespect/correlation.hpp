#pragma once

// Lambda-correlation sums, prime-pair counters for the four pair families,
// normalized table ratios, and the mean-value / correlation experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "primespect/arith.hpp"
#include "primespect/ramanujan.hpp"
#include "primespect/series.hpp"
#include "primespect/sieve.hpp"
#include "primespect/util.hpp"

namespace primespect {

// Which prime-pair family is counted. Linear pairs are (p, p + 2k); the
// polynomial twins are (n^2+1, n^2+3), (n^3+2, n^3+4) and (n^4+1, n^4+3).
struct PairFamily {
  enum class Kind { Linear, Quadratic, Cubic, Quartic };

  Kind kind = Kind::Linear;
  std::uint64_t shift = 2;  // 2k, Linear only

  static PairFamily linear(std::uint64_t shift2k) {
    if (shift2k == 0 || shift2k % 2 != 0)
      throw std::invalid_argument("PairFamily: linear shift must be even > 0");
    return {Kind::Linear, shift2k};
  }
  static PairFamily quadratic() { return {Kind::Quadratic, 2}; }
  static PairFamily cubic() { return {Kind::Cubic, 2}; }
  static PairFamily quartic() { return {Kind::Quartic, 2}; }

  unsigned degree() const {
    switch (kind) {
      case Kind::Linear: return 1;
      case Kind::Quadratic: return 2;
      case Kind::Cubic: return 3;
      case Kind::Quartic: return 4;
    }
    return 1;
  }

  const char* name() const {
    switch (kind) {
      case Kind::Linear: return "linear";
      case Kind::Quadratic: return "quadratic";
      case Kind::Cubic: return "cubic";
      case Kind::Quartic: return "quartic";
    }
    return "?";
  }

  // First and second polynomial values at n (polynomial families only).
  std::uint64_t first_value(std::uint64_t n) const {
    switch (kind) {
      case Kind::Quadratic: return n * n + 1;
      case Kind::Cubic: return n * n * n + 2;
      case Kind::Quartic: return n * n * n * n + 1;
      default: throw std::invalid_argument("first_value: polynomial only");
    }
  }
  std::uint64_t second_value(std::uint64_t n) const { return first_value(n) + 2; }
};

// One row of a counting table: the exact count plus the normalized ratio
// count * (log x)^2 / x^(1/d). The published table headers print log x, but
// the printed numbers use the squared form; the values win.
struct CountRecord {
  double x = 0;
  std::uint64_t count = 0;
  double ratio = 0;

  static CountRecord make(double x, std::uint64_t count, unsigned degree) {
    double lg = std::log(x);
    return {x, count, double(count) * lg * lg / std::pow(x, 1.0 / degree)};
  }
};

namespace detail {

// Largest n with family.first_value(n) <= x.
inline std::uint64_t poly_range_end(const PairFamily& family, std::uint64_t x) {
  std::uint64_t n = static_cast<std::uint64_t>(
      std::pow(double(x), 1.0 / family.degree())) + 2;
  while (n > 0 && family.first_value(n) > x) --n;
  return n;
}

// Cheap composite filter before the full strong-pseudoprime test.
inline bool survives_trial_division(std::uint64_t v) {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                          29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull,
                          59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull,
                          89ull, 97ull}) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  return true;
}

inline bool poly_value_prime(std::uint64_t v) {
  if (v % 2 == 0) return v == 2;
  return survives_trial_division(v) && miller_rabin_u64(v);
}

// Prime-power bases for the window [lo, hi], as in LambdaTable but segmented:
// out[i] = p when lo + i = p^k, else 0.
inline void lambda_bases_segment(std::uint64_t lo, std::uint64_t hi,
                                 const std::vector<std::uint64_t>& base_primes,
                                 std::vector<std::uint32_t>& out) {
  out.assign(hi - lo + 1, 0);
  std::vector<bool> comp(hi - lo + 1, false);
  for (std::uint64_t p : base_primes) {
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t j = start; j <= hi; j += p) comp[j - lo] = true;
    // Prime powers p^k in the window are Lambda-support despite being
    // composite.
    std::uint64_t pw = p;
    while (pw <= hi / p) {
      pw *= p;
      if (pw >= lo) out[pw - lo] = static_cast<std::uint32_t>(p);
    }
  }
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v <= hi; ++v)
    if (!comp[v - lo]) out[v - lo] = static_cast<std::uint32_t>(
        v <= 0xFFFFFFFFull ? v : 0);  // primes above 2^32 cannot occur here
}

}  // namespace detail

// Weighted pair count sum_{n<=x} Lambda(n) Lambda(n+m), streamed over sieve
// segments; per-segment sums reduced in ascending order.
inline double lambda_correlation(std::uint64_t x, std::uint64_t m,
                                 std::uint64_t memory_budget =
                                     kDefaultMemoryBudget) {
  if (x == 0) throw std::invalid_argument("lambda_correlation: x >= 1");
  if (m == 0) throw std::invalid_argument("lambda_correlation: m >= 1");
  if (x + m >= (1ull << 32))
    throw std::invalid_argument("lambda_correlation: x + m < 2^32");
  std::uint64_t top = x + m;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(top))) + 2;
  PrimeTable small(std::max<std::uint64_t>(root, 2), memory_budget);
  std::vector<std::uint64_t> base_primes = small.primes();

  // The segment working set (base table plus composite flags) counts against
  // the budget too; shrink the segment if needed, give up below a floor.
  std::uint64_t segment = 1ull << 22;
  constexpr std::uint64_t kPerValue = sizeof(std::uint32_t) + 1;
  std::uint64_t fixed = base_primes.size() * sizeof(std::uint64_t);
  constexpr std::uint64_t kMinSegment = 1024;
  if (fixed + (segment + m) * kPerValue > memory_budget) {
    if (memory_budget < fixed + (kMinSegment + m) * kPerValue)
      throw BudgetExceeded(
          "lambda_correlation: segment working set exceeds the memory budget");
    segment = (memory_budget - fixed) / kPerValue - m;
  }
  detail::KahanSum acc;
  std::vector<std::uint32_t> bases;
  for (std::uint64_t lo = 1; lo <= x; lo += segment) {
    std::uint64_t hi = std::min(x, lo + segment - 1);
    detail::lambda_bases_segment(lo, hi + m, base_primes, bases);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      std::uint32_t b1 = bases[n - lo];
      if (!b1) continue;
      std::uint32_t b2 = bases[n + m - lo];
      if (!b2) continue;
      acc.add(std::log(double(b1)) * std::log(double(b2)));
    }
  }
  return acc.value();
}

// pi_2k(x): primes p with p + 2k <= x and p + 2k prime.
inline std::uint64_t pair_count(std::uint64_t x, std::uint64_t shift2k,
                                std::uint64_t memory_budget =
                                    kDefaultMemoryBudget) {
  if (x == 0) throw std::invalid_argument("pair_count: x >= 1");
  if (shift2k == 0 || shift2k % 2 != 0)
    throw std::invalid_argument("pair_count: shift must be even > 0");
  if (x < 3 + shift2k) return 0;
  PrimeTable table(x, memory_budget);
  std::uint64_t count = 0;
  table.for_each_prime([&](std::uint64_t p) {
    if (p + shift2k <= x && table.is_prime(p + shift2k)) ++count;
  });
  return count;
}

// Counts polynomial twins at several thresholds in a single ascending pass.
// Thresholds must be sorted ascending; counting is parallel over n-chunks
// with exact (associative) merges in ascending chunk order.
inline std::vector<CountRecord> poly_twin_counts(
    const PairFamily& family, const std::vector<std::uint64_t>& thresholds,
    unsigned threads = std::thread::hardware_concurrency()) {
  if (family.kind == PairFamily::Kind::Linear)
    throw std::invalid_argument("poly_twin_counts: polynomial families only");
  if (thresholds.empty() ||
      !std::is_sorted(thresholds.begin(), thresholds.end()))
    throw std::invalid_argument("poly_twin_counts: sorted thresholds");
  for (std::uint64_t x : thresholds)
    if (x > 10000000000000000ull)
      throw std::invalid_argument("poly_twin_counts: x <= 10^16");

  std::uint64_t x_max = thresholds.back();
  std::uint64_t n_end = detail::poly_range_end(family, x_max);
  if (threads == 0) threads = 1;
  std::uint64_t chunk = std::max<std::uint64_t>(n_end / (threads * 8) + 1, 1024);

  // Matching n values per chunk, merged in ascending chunk order.
  std::vector<std::future<std::vector<std::uint64_t>>> jobs;
  for (std::uint64_t lo = 1; lo <= n_end; lo += chunk) {
    std::uint64_t hi = std::min(n_end, lo + chunk - 1);
    jobs.push_back(std::async(std::launch::async, [&family, lo, hi] {
      std::vector<std::uint64_t> hits;
      for (std::uint64_t n = lo; n <= hi; ++n) {
        std::uint64_t v = family.first_value(n);
        if (!detail::poly_value_prime(v)) continue;
        if (detail::poly_value_prime(v + 2)) hits.push_back(n);
      }
      return hits;
    }));
  }
  std::vector<std::uint64_t> matches;
  for (auto& j : jobs) {
    auto hits = j.get();
    matches.insert(matches.end(), hits.begin(), hits.end());
  }

  std::vector<CountRecord> out;
  for (std::uint64_t x : thresholds) {
    std::uint64_t n_limit = detail::poly_range_end(family, x);
    auto it = std::upper_bound(matches.begin(), matches.end(), n_limit);
    out.push_back(CountRecord::make(double(x),
                                    std::uint64_t(it - matches.begin()),
                                    family.degree()));
  }
  return out;
}

inline CountRecord poly_twin_count(const PairFamily& family, std::uint64_t x,
                                   unsigned threads =
                                       std::thread::hardware_concurrency()) {
  return poly_twin_counts(family, {x}, threads).front();
}

// Lambda at a 64-bit value: log p when v = p^k, detected by k-th root
// extraction for k <= 53 plus primality of the root.
inline double lambda_u64(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("lambda_u64: v >= 1");
  if (v == 1) return 0.0;
  if (is_prime_u64(v)) return std::log(double(v));
  for (unsigned k = 2; k <= 53; ++k) {
    double guess = std::pow(double(v), 1.0 / k);
    if (guess < 1.8) break;
    for (std::int64_t r = std::max<std::int64_t>(2, std::int64_t(guess) - 1);
         r <= std::int64_t(guess) + 1; ++r) {
      unsigned __int128 pw = 1;
      for (unsigned i = 0; i < k; ++i) pw *= static_cast<unsigned>(r);
      if (pw == v && is_prime_u64(std::uint64_t(r)))
        return std::log(double(r));
    }
  }
  return 0.0;
}

// Weighted polynomial sums over the family's range f(n) <= x:
// pair_weighted: sum Lambda(f(n)) Lambda(f(n)+2); otherwise sum Lambda(f(n)).
inline double lambda_poly_sum(const PairFamily& family, std::uint64_t x,
                              bool pair_weighted) {
  if (family.kind == PairFamily::Kind::Linear)
    throw std::invalid_argument("lambda_poly_sum: polynomial families only");
  if (x > 10000000000000000ull)
    throw std::invalid_argument("lambda_poly_sum: x <= 10^16");
  std::uint64_t n_end = detail::poly_range_end(family, x);
  detail::KahanSum acc;
  for (std::uint64_t n = 1; n <= n_end; ++n) {
    double l1 = lambda_u64(family.first_value(n));
    if (l1 == 0.0) continue;
    acc.add(pair_weighted ? l1 * lambda_u64(family.second_value(n)) : l1);
  }
  return acc.value();
}

// Finite-x estimate of the mean value M(c_q c_r): (1/x) sum_{n<=x} c_q(n)c_r(n).
inline double mean_value_estimate(std::uint64_t q, std::uint64_t r,
                                  std::uint64_t x) {
  if (q == 0 || r == 0 || x == 0)
    throw std::invalid_argument("mean_value_estimate: q, r, x >= 1");
  // c_q(n) depends only on n mod q.
  std::vector<std::int64_t> cq(q), cr(r);
  for (std::uint64_t i = 0; i < q; ++i) cq[i] = csum(q, i == 0 ? q : i);
  for (std::uint64_t i = 0; i < r; ++i) cr[i] = csum(r, i == 0 ? r : i);
  std::int64_t sum = 0;
  for (std::uint64_t n = 1; n <= x; ++n) sum += cq[n % q] * cr[n % r];
  return double(sum) / double(x);
}

// Finite-x Ramanujan coefficient a_q = (1/(phi(q) x)) sum_{n<=x} c_q(n) f(n).
inline double ramanujan_coefficient_estimate(
    const std::function<double(std::uint64_t)>& f, std::uint64_t q,
    std::uint64_t x) {
  if (q == 0 || x == 0)
    throw std::invalid_argument("ramanujan_coefficient_estimate: q, x >= 1");
  std::vector<std::int64_t> cq(q);
  for (std::uint64_t i = 0; i < q; ++i) cq[i] = csum(q, i == 0 ? q : i);
  detail::KahanSum acc;
  for (std::uint64_t n = 1; n <= x; ++n) acc.add(double(cq[n % q]) * f(n));
  return acc.value() / (double(totient(q)) * double(x));
}

// Both sides of the truncated correlation identity: the empirical mean of
// f_Q(n,s) f_Q(n+m,s) against sum_{q<=Q} a_q^2 c_q(m).
struct WkResult {
  double lhs;
  double rhs;
};

inline WkResult wk_empirical(std::uint64_t m, double s, std::uint64_t Q,
                             std::uint64_t x) {
  if (m == 0 || Q == 0 || x == 0)
    throw std::invalid_argument("wk_empirical: m, Q, x >= 1");
  if (s <= 1.0) throw std::invalid_argument("wk_empirical: s > 1");
  // Coefficients and per-q residue tables for the truncated kernel.
  std::vector<double> coeff(Q + 1, 0.0);
  std::vector<std::vector<std::int64_t>> ctab(Q + 1);
  for (std::uint64_t q = 1; q <= Q; ++q) {
    int mu = mobius(q);
    if (mu == 0) continue;
    coeff[q] = double(mu) / (std::pow(double(q), s - 1.0) *
                             double(totient(q)));
    ctab[q].resize(q);
    for (std::uint64_t i = 0; i < q; ++i)
      ctab[q][i] = csum(q, i == 0 ? q : i);
  }
  auto kernel = [&](std::uint64_t n) {
    double v = 0.0;
    for (std::uint64_t q = 1; q <= Q; ++q)
      if (coeff[q] != 0.0) v += coeff[q] * double(ctab[q][n % q]);
    return v;
  };
  detail::KahanSum lhs;
  for (std::uint64_t n = 1; n <= x; ++n) lhs.add(kernel(n) * kernel(n + m));
  detail::KahanSum rhs;
  for (std::uint64_t q = 1; q <= Q; ++q)
    if (coeff[q] != 0.0)
      rhs.add(coeff[q] * coeff[q] * double(csum(q, m)));
  return {lhs.value() / double(x), rhs.value()};
}

}  // namespace primespect
