#pragma once

// Exact integer arithmetic functions: factorization, mu, phi, Lambda, sigma,
// d, omega, Jacobi symbols, power residues and polynomial fixed divisors.
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "primespect/util.hpp"

namespace primespect {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical prime decomposition. factors is sorted by prime, exponents >= 1,
// and the product of prime^exponent recovers value. value == 1 <=> empty.
struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
};

namespace detail {

// Deterministic Miller-Rabin. The seven-base set is known to be complete for
// every n < 2^64 (Sinclair's bases).
inline bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a :
       {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
        1795265022ull}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x <= 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent-cycle Pollard rho; n must be odd, composite, > 1.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t q = 1;
    int lam = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = step(y);
      int k = 0;
      while (k < lam && d == 1) {
        std::uint64_t ys = y;
        int lim = std::min(128, lam - k);
        for (int i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        if (d == n) {
          // Backtrack one step at a time.
          d = 1;
          y = ys;
          do {
            y = step(y);
            d = std::gcd(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
        k += lim;
      }
      lam *= 2;
    }
    if (d != n) return d;
  }
}

// Primes below 10^6, built once; enough trial division that any surviving
// 64-bit cofactor has at most two prime factors.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kLimit = 1000000;
    std::vector<bool> comp(kLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kLimit; ++i) {
      if (!comp[i]) {
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= kLimit; j += i)
          comp[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (miller_rabin_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.value = n;
  std::uint64_t m = n;
  std::vector<std::uint64_t> primes;
  for (std::uint32_t p : detail::small_primes()) {
    if (std::uint64_t(p) * p > m) break;
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) detail::factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  for (std::uint64_t p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

inline int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  Factorization f = factorize(n);
  for (const auto& pp : f.factors)
    if (pp.exponent > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("totient: n must be positive");
  std::uint64_t result = n;
  for (const auto& pp : factorize(n).factors)
    result = result / pp.prime * (pp.prime - 1);
  return result;
}

// Returns p when n = p^k with k >= 1, nothing otherwise. Callers that need
// Lambda(n) bit-for-bit reproducible take the log themselves.
inline std::optional<std::uint64_t> prime_power_base(std::uint64_t n) {
  if (n == 0)
    throw std::invalid_argument("prime_power_base: n must be positive");
  if (n == 1) return std::nullopt;
  Factorization f = factorize(n);
  if (f.factors.size() == 1) return f.factors.front().prime;
  return std::nullopt;
}

inline double von_mangoldt(std::uint64_t n) {
  auto base = prime_power_base(n);
  return base ? std::log(static_cast<double>(*base)) : 0.0;
}

inline std::uint64_t divisor_sum(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor_sum: n must be positive");
  std::uint64_t result = 1;
  for (const auto& pp : factorize(n).factors) {
    std::uint64_t term = 1, power = 1;
    for (unsigned i = 0; i < pp.exponent; ++i) {
      power *= pp.prime;
      term += power;
    }
    result *= term;
  }
  return result;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor_count: n must be positive");
  std::uint64_t result = 1;
  for (const auto& pp : factorize(n).factors) result *= pp.exponent + 1;
  return result;
}

inline unsigned omega(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("omega: n must be positive");
  return static_cast<unsigned>(factorize(n).factors.size());
}

// Divisors of n in ascending order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::uint64_t> out{1};
  for (const auto& pp : factorize(n).factors) {
    std::size_t count = out.size();
    std::uint64_t power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Jacobi symbol (a|n) for odd n >= 1.
inline int jacobi(std::int64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi: n must be odd and positive");
  std::uint64_t u =
      a >= 0 ? std::uint64_t(a) % n : n - (std::uint64_t(-(a + 1)) + 1) % n;
  if (u == n) u = 0;
  int sign = 1;
  while (u != 0) {
    while (u % 2 == 0) {
      u /= 2;
      std::uint64_t r = n % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(u, n);
    if (u % 4 == 3 && n % 4 == 3) sign = -sign;
    u %= n;
  }
  return n == 1 ? sign : 0;
}

// True iff x^k = a (mod p) is solvable, via a^((p-1)/gcd(k,p-1)) = 1 (mod p).
inline bool is_kth_power_residue(std::int64_t a, std::uint64_t k,
                                 std::uint64_t p) {
  if (k == 0) throw std::invalid_argument("is_kth_power_residue: k >= 1");
  if (p < 3 || p % 2 == 0 || !detail::miller_rabin_u64(p))
    throw std::invalid_argument("is_kth_power_residue: p must be an odd prime");
  std::uint64_t u =
      a >= 0 ? std::uint64_t(a) % p : p - (std::uint64_t(-(a + 1)) + 1) % p;
  if (u == p) u = 0;
  if (u == 0)
    throw std::invalid_argument("is_kth_power_residue: p must not divide a");
  std::uint64_t g = std::gcd(k, p - 1);
  return detail::pow_mod(u, (p - 1) / g, p) == 1;
}

// gcd of f(Z) for f given by coefficients c0 + c1 x + ... + cd x^d. Equals
// gcd(f(0), ..., f(deg f)) by the finite-difference argument.
inline std::uint64_t fixed_divisor(std::span<const std::int64_t> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0) --deg;
  if (deg == 0)
    throw std::invalid_argument("fixed_divisor: zero polynomial");
  --deg;  // degree of the polynomial
  unsigned __int128 g = 0;
  for (std::uint64_t t = 0; t <= deg; ++t) {
    __int128 v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
      v = v * static_cast<__int128>(t) + coeffs[i];
    unsigned __int128 av = v < 0 ? static_cast<unsigned __int128>(-v)
                                 : static_cast<unsigned __int128>(v);
    while (av != 0) {
      unsigned __int128 t = g % av;
      g = av;
      av = t;
    }
  }
  return static_cast<std::uint64_t>(g);
}

// Tabulated mu, phi and smallest prime factor up to a limit; used by the
// series and spectrum evaluations to keep per-term cost low.
class SmallFunctionTable {
 public:
  explicit SmallFunctionTable(std::uint32_t limit)
      : limit_(limit), mu_(limit + 1, 1), phi_(limit + 1), spf_(limit + 1, 0) {
    std::vector<std::uint32_t> primes;
    phi_[0] = 0;
    if (limit >= 1) phi_[1] = 1;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = i;
        phi_[i] = i - 1;
        mu_[i] = -1;
        primes.push_back(i);
      }
      for (std::uint32_t p : primes) {
        if (p > spf_[i] || std::uint64_t(p) * i > limit) break;
        std::uint32_t ip = p * i;
        spf_[ip] = p;
        if (i % p == 0) {
          mu_[ip] = 0;
          phi_[ip] = phi_[i] * p;
        } else {
          mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
          phi_[ip] = phi_[i] * (p - 1);
        }
      }
    }
    mu_[0] = 0;
  }

  std::uint32_t limit() const { return limit_; }
  int mu(std::uint32_t n) const { return mu_[n]; }
  std::uint64_t phi(std::uint32_t n) const { return phi_[n]; }

  // Ramanujan sum via the Holder formula using the tabulated phi and mu.
  std::int64_t csum(std::uint32_t q, std::uint64_t n) const {
    std::uint32_t d = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(n, q));
    std::uint32_t qd = q / d;
    if (mu_[qd] == 0) return 0;
    return std::int64_t(mu_[qd]) *
           static_cast<std::int64_t>(phi_[q] / phi_[qd]);
  }

 private:
  std::uint32_t limit_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint64_t> phi_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace primespect
