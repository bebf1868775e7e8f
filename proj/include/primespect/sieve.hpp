#pragma once

// Segmented prime sieve, bulk von Mangoldt tables and Chebyshev-type sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "primespect/arith.hpp"
#include "primespect/util.hpp"

namespace primespect {

// Thrown when a job would exceed the configured memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMemoryBudget = 4ull << 30;  // bytes
inline constexpr std::uint64_t kDefaultSegmentBytes = 1u << 18;

inline bool is_prime_u64(std::uint64_t n) {
  return detail::miller_rabin_u64(n);
}

// Odd-only primality bitset up to a limit, built with a segmented sieve.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit,
                      std::uint64_t memory_budget = kDefaultMemoryBudget,
                      std::uint64_t segment_bytes = kDefaultSegmentBytes)
      : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit >= 2");
    std::uint64_t words = (limit / 2 + 64) / 64;
    if (words * 8 > memory_budget)
      throw BudgetExceeded("PrimeTable: bitset exceeds memory budget");
    bits_.assign(words, ~0ull);
    clear_bit(0);  // 1 is not prime

    // Sieving primes up to sqrt(limit).
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<std::uint64_t> base;
    {
      std::vector<bool> comp(root + 1, false);
      for (std::uint64_t i = 3; i <= root; i += 2)
        if (!comp[i]) {
          base.push_back(i);
          for (std::uint64_t j = i * i; j <= root; j += 2 * i) comp[j] = true;
        }
    }

    std::uint64_t span = std::max<std::uint64_t>(segment_bytes * 16, 1u << 16);
    for (std::uint64_t lo = 3; lo <= limit; lo += span) {
      std::uint64_t hi = std::min(limit, lo + span - 1);
      for (std::uint64_t p : base) {
        if (p * p > hi) break;
        std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        if (start % 2 == 0) start += p;
        for (std::uint64_t j = start; j <= hi; j += 2 * p)
          clear_bit(j / 2);
      }
    }
  }

  std::uint64_t limit() const { return limit_; }

  bool is_prime(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("PrimeTable: beyond limit");
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    return (bits_[(n / 2) >> 6] >> ((n / 2) & 63)) & 1;
  }

  std::uint64_t count() const {
    std::uint64_t c = 1;  // the prime 2
    std::uint64_t last = (limit_ - 1) / 2;
    for (std::uint64_t i = 1; i <= last; ++i)
      c += (bits_[i >> 6] >> (i & 63)) & 1;
    return c;
  }

  // Visits every prime <= limit in ascending order.
  template <typename Fn>
  void for_each_prime(Fn&& fn) const {
    fn(std::uint64_t{2});
    std::uint64_t last = (limit_ - 1) / 2;
    for (std::uint64_t i = 1; i <= last; ++i)
      if ((bits_[i >> 6] >> (i & 63)) & 1) fn(2 * i + 1);
  }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for_each_prime([&](std::uint64_t p) { out.push_back(p); });
    return out;
  }

 private:
  void clear_bit(std::uint64_t i) { bits_[i >> 6] &= ~(1ull << (i & 63)); }

  std::uint64_t limit_;
  std::vector<std::uint64_t> bits_;
};

inline PrimeTable primes_up_to(std::uint64_t x,
                               std::uint64_t memory_budget =
                                   kDefaultMemoryBudget) {
  if (x < 2) throw std::invalid_argument("primes_up_to: x >= 2");
  if (x > 10000000000ull)
    throw std::invalid_argument("primes_up_to: x <= 10^10");
  return PrimeTable(x, memory_budget);
}

// For each n <= limit, the prime p with n = p^k (0 when Lambda(n) = 0).
class LambdaTable {
 public:
  explicit LambdaTable(std::uint64_t limit,
                       std::uint64_t memory_budget = kDefaultMemoryBudget)
      : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("LambdaTable: limit >= 1");
    if ((limit + 1) * sizeof(std::uint32_t) > memory_budget)
      throw BudgetExceeded("LambdaTable: exceeds memory budget");
    base_.assign(limit + 1, 0);
    if (limit >= 2) {
      PrimeTable table(limit, memory_budget);
      table.for_each_prime([&](std::uint64_t p) {
        for (std::uint64_t pw = p; pw <= limit; pw *= p) {
          base_[pw] = static_cast<std::uint32_t>(p);
          if (pw > limit / p) break;
        }
      });
    }
  }

  std::uint64_t limit() const { return limit_; }
  std::uint32_t base(std::uint64_t n) const { return base_[n]; }
  double lambda(std::uint64_t n) const {
    return base_[n] ? std::log(double(base_[n])) : 0.0;
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> base_;
};

// Chebyshev psi(x): groups by prime base, summing floor(log_p x) * log p in
// ascending prime order with compensated summation.
inline double lambda_sum(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("lambda_sum: x >= 1");
  if (x < 2) return 0.0;
  PrimeTable table(x);
  detail::KahanSum acc;
  table.for_each_prime([&](std::uint64_t p) {
    int k = 0;
    for (std::uint64_t pw = p; pw <= x; pw *= p) {
      ++k;
      if (pw > x / p) break;
    }
    acc.add(k * std::log(double(p)));
  });
  return acc.value();
}

// Sum of Lambda(n)/n over n <= x, accumulated in ascending n.
inline double lambda_over_n_sum(std::uint64_t x) {
  if (x < 2) throw std::invalid_argument("lambda_over_n_sum: x >= 2");
  PrimeTable table(x);
  std::vector<std::pair<std::uint64_t, double>> terms;
  table.for_each_prime([&](std::uint64_t p) {
    double lg = std::log(double(p));
    for (std::uint64_t pw = p; pw <= x; pw *= p) {
      terms.emplace_back(pw, lg);
      if (pw > x / p) break;
    }
  });
  std::sort(terms.begin(), terms.end());
  detail::KahanSum acc;
  for (const auto& [n, lg] : terms) acc.add(lg / double(n));
  return acc.value();
}

}  // namespace primespect
