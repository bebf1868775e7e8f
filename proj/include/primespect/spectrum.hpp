#pragma once

// The spectrum F(sigma), its sigma-sweep, the density limits A_k, singular
// series, Dirichlet density, and the Hardy-Littlewood-type constants.
//
// All conditionally convergent symbol-weighted products are evaluated in
// ascending-prime order with no reordering.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "primespect/arith.hpp"
#include "primespect/ramanujan.hpp"
#include "primespect/sieve.hpp"
#include "primespect/util.hpp"

namespace primespect {

struct SpectrumSpec {
  std::uint64_t m = 2;       // shift
  double sigma = 1.0;
  std::uint64_t prime_cutoff = 1000000;  // P >= 2 so the p = 2 factor exists

  void validate() const {
    if (m == 0) throw std::invalid_argument("SpectrumSpec: m >= 1");
    if (prime_cutoff < 2) throw std::invalid_argument("SpectrumSpec: P >= 2");
  }
};

namespace detail {

// Signed log-domain product accumulator: exact zero when a factor vanishes,
// sign tracked separately so sub-sigma=1 sweeps with negative factors work.
class LogProduct {
 public:
  void mul(double factor) {
    if (zero_) return;
    if (factor == 0.0) {
      zero_ = true;
      return;
    }
    if (factor < 0.0) {
      negative_ = !negative_;
      factor = -factor;
    }
    log_.add(std::log(factor));
  }
  double value() const {
    if (zero_) return 0.0;
    double v = std::exp(log_.value());
    return negative_ ? -v : v;
  }

 private:
  KahanSum log_;
  bool zero_ = false;
  bool negative_ = false;
};

}  // namespace detail

// Truncated Eq-89 product:
//   prod_{p|m} (1 + 1/(p^(2s-2)(p-1))) * prod_{p not| m, p<=P} (1 - 1/(p^(2s-2)(p-1)^2)).
// The finitely many p | m factors are always included in full.
inline double F_sigma(const SpectrumSpec& spec, const PrimeTable& primes) {
  spec.validate();
  double e = 2.0 * spec.sigma - 2.0;
  detail::LogProduct prod;
  for (const auto& pp : factorize(spec.m).factors) {
    double p = double(pp.prime);
    prod.mul(1.0 + 1.0 / (std::pow(p, e) * (p - 1.0)));
  }
  primes.for_each_prime([&](std::uint64_t pu) {
    if (spec.m % pu == 0) return;
    double p = double(pu);
    prod.mul(1.0 - 1.0 / (std::pow(p, e) * (p - 1.0) * (p - 1.0)));
  });
  return prod.value();
}

inline double F_sigma(const SpectrumSpec& spec) {
  spec.validate();
  PrimeTable primes(spec.prime_cutoff);
  return F_sigma(spec, primes);
}

// Series form of the spectrum: sum_{q<=Q} (mu(q)/(q^(sigma-1) phi(q)))^2 c_q(m).
inline double F_series(const SpectrumSpec& spec, std::uint64_t series_cutoff) {
  spec.validate();
  if (series_cutoff < 1 || series_cutoff > 0xFFFFFFFFull)
    throw std::invalid_argument("F_series: 1 <= Q <= 2^32");
  SmallFunctionTable table(static_cast<std::uint32_t>(series_cutoff));
  detail::KahanSum acc;
  for (std::uint32_t q = 1; q <= series_cutoff; ++q) {
    if (table.mu(q) == 0) continue;
    double coeff =
        1.0 / (std::pow(double(q), spec.sigma - 1.0) * double(table.phi(q)));
    acc.add(coeff * coeff * double(table.csum(q, spec.m)));
  }
  return acc.value();
}

// A_k = prod_{p|2k} (1 + 1/(p-1)) prod_{p not| 2k} (1 - 1/(p-1)^2); the same
// code path as F at sigma = 1 with m = 2k.
inline double A_k(std::uint64_t k, const PrimeTable& primes) {
  if (k == 0) throw std::invalid_argument("A_k: k >= 1");
  return F_sigma({2 * k, 1.0, primes.limit()}, primes);
}

inline double A_k(std::uint64_t k, std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return A_k(k, primes);
}

// Hardy-Littlewood pair constant C_k = 2 prod_{p|k, p>2} (p-1)/(p-2)
// * prod_{3<=p<=P} (1 - 1/(p-1)^2).
inline double hl_pair_constant(std::uint64_t k, const PrimeTable& primes) {
  if (k == 0) throw std::invalid_argument("hl_pair_constant: k >= 1");
  detail::LogProduct prod;
  prod.mul(2.0);
  for (const auto& pp : factorize(k).factors) {
    if (pp.prime == 2) continue;  // (p-1)/(p-2) is undefined at p = 2
    double p = double(pp.prime);
    prod.mul((p - 1.0) / (p - 2.0));
  }
  primes.for_each_prime([&](std::uint64_t pu) {
    if (pu == 2) return;
    double p = double(pu);
    prod.mul(1.0 - 1.0 / ((p - 1.0) * (p - 1.0)));
  });
  return prod.value();
}

inline double hl_pair_constant(std::uint64_t k, std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return hl_pair_constant(k, primes);
}

// Goldbach singular series for odd N:
//   prod_{p|N} (1 - 1/(p-1)^2) prod_{p not| N, p<=P} (1 + 1/(p-1)^3).
inline double singular_series_goldbach(std::uint64_t N,
                                       const PrimeTable& primes) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("singular_series_goldbach: N odd, N >= 3");
  detail::LogProduct prod;
  for (const auto& pp : factorize(N).factors) {
    double p = double(pp.prime);
    prod.mul(1.0 - 1.0 / ((p - 1.0) * (p - 1.0)));
  }
  primes.for_each_prime([&](std::uint64_t pu) {
    if (N % pu == 0) return;
    double p = double(pu);
    prod.mul(1.0 + 1.0 / ((p - 1.0) * (p - 1.0) * (p - 1.0)));
  });
  return prod.value();
}

inline double singular_series_goldbach(std::uint64_t N,
                                       std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return singular_series_goldbach(N, primes);
}

// Series form of the r = 3 singular series: sum_{q<=Q} mu(q)/phi(q)^3 c_q(N).
inline double singular_series_goldbach_series(std::uint64_t N,
                                              std::uint64_t series_cutoff) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("goldbach series: N odd, N >= 3");
  SmallFunctionTable table(static_cast<std::uint32_t>(series_cutoff));
  detail::KahanSum acc;
  for (std::uint32_t q = 1; q <= series_cutoff; ++q) {
    if (table.mu(q) == 0) continue;
    double phi = double(table.phi(q));
    acc.add(double(table.mu(q)) / (phi * phi * phi) *
            double(table.csum(q, N)));
  }
  return acc.value();
}

// C_f = prod_{2<p<=P} (1 - (-1|p)/(p-1)), ascending primes.
inline double quadratic_prime_constant(const PrimeTable& primes) {
  if (primes.limit() < 3)
    throw std::invalid_argument("quadratic_prime_constant: P >= 3");
  detail::LogProduct prod;
  primes.for_each_prime([&](std::uint64_t pu) {
    if (pu == 2) return;
    prod.mul(1.0 - double(jacobi(-1, pu)) / double(pu - 1));
  });
  return prod.value();
}

inline double quadratic_prime_constant(std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return quadratic_prime_constant(primes);
}

// s_4 = (1/4) prod_{2<p<=P} (1 - ((-1|p)+(-2|p)+(2|p))/(p-1)).
inline double quartic_prime_constant(const PrimeTable& primes) {
  if (primes.limit() < 3)
    throw std::invalid_argument("quartic_prime_constant: P >= 3");
  detail::LogProduct prod;
  prod.mul(0.25);
  primes.for_each_prime([&](std::uint64_t pu) {
    if (pu == 2) return;
    int sym = jacobi(-1, pu) + jacobi(-2, pu) + jacobi(2, pu);
    prod.mul(1.0 - double(sym) / double(pu - 1));
  });
  return prod.value();
}

inline double quartic_prime_constant(std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return quartic_prime_constant(primes);
}

// Constant of the polynomial twin-pair problems:
//   prefactor * prod_{first_prime <= p <= P} p (p - rho(p)) / (p-1)^2,
// where rho(p) is looked up by the number of residue-set members that are
// k-th power residues mod p. rho_override supplies the value for primes where
// the generic residue-count rule breaks down at ramified small primes.
struct ResiduePairSpec {
  std::vector<std::int64_t> residue_set;
  std::uint64_t power = 2;           // k
  double prefactor = 1.0;
  std::uint64_t first_prime = 5;
  std::uint64_t prime_cutoff = 1000000;
  std::array<double, 3> rho_by_count = {0.0, 2.0, 4.0};
  std::map<std::uint64_t, double> rho_override;

  void validate() const {
    if (residue_set.empty() || power < 2 || prefactor <= 0.0)
      throw std::invalid_argument(
          "ResiduePairSpec: nonempty residue set, k >= 2, prefactor > 0");
  }
};

inline ResiduePairSpec quadratic_twin_spec(std::uint64_t prime_cutoff) {
  return {{-1, -3}, 2, 3.0, 5, prime_cutoff, {0.0, 2.0, 4.0}, {}};
}

inline ResiduePairSpec cubic_twin_spec(std::uint64_t prime_cutoff) {
  return {{-2, -4}, 3, 2.0, 5, prime_cutoff, {0.0, 2.0, 6.0}, {}};
}

inline ResiduePairSpec quartic_twin_spec(std::uint64_t prime_cutoff) {
  // The product starts at p = 2. The residue-count rule breaks at p = 2
  // (even prime) and p = 3 (divides -3); both have exactly one root of
  // n^4 + a = 0 per offending member, so rho is fixed at 1 directly.
  return {{-1, -3}, 4, 1.0, 2, prime_cutoff, {0.0, 2.0, 4.0},
          {{2, 1.0}, {3, 1.0}}};
}

inline double polynomial_pair_constant(const ResiduePairSpec& spec,
                                       const PrimeTable& primes) {
  spec.validate();
  detail::LogProduct prod;
  prod.mul(spec.prefactor);
  primes.for_each_prime([&](std::uint64_t pu) {
    if (pu < spec.first_prime) return;
    double p = double(pu);
    double rho;
    if (auto it = spec.rho_override.find(pu); it != spec.rho_override.end()) {
      rho = it->second;
    } else {
      unsigned count = 0;
      for (std::int64_t a : spec.residue_set) {
        std::int64_t r = a % std::int64_t(pu);
        if (r == 0)
          throw std::invalid_argument(
              "polynomial_pair_constant: p divides a residue-set member and "
              "no rho override is given");
        if (is_kth_power_residue(a, spec.power, pu)) ++count;
      }
      rho = spec.rho_by_count.at(count);
    }
    prod.mul(p * (p - rho) / ((p - 1.0) * (p - 1.0)));
  });
  return prod.value();
}

inline double polynomial_pair_constant(const ResiduePairSpec& spec) {
  PrimeTable primes(spec.prime_cutoff);
  return polynomial_pair_constant(spec, primes);
}

// Finite-cutoff Dirichlet density: relative p^-s mass of p = a (mod q).
inline double dirichlet_density_estimate(std::uint64_t a, std::uint64_t q,
                                         double s, const PrimeTable& primes) {
  if (q == 0) throw std::invalid_argument("dirichlet_density_estimate: q >= 1");
  if (std::gcd(a, q) != 1)
    throw std::invalid_argument("dirichlet_density_estimate: gcd(a,q) = 1");
  if (s <= 1.0) throw std::invalid_argument("dirichlet_density_estimate: s > 1");
  detail::KahanSum num, den;
  primes.for_each_prime([&](std::uint64_t p) {
    double t = std::pow(double(p), -s);
    den.add(t);
    if (p % q == a % q) num.add(t);
  });
  return num.value() / den.value();
}

inline double dirichlet_density_estimate(std::uint64_t a, std::uint64_t q,
                                         double s,
                                         std::uint64_t prime_cutoff) {
  PrimeTable primes(prime_cutoff);
  return dirichlet_density_estimate(a, q, s, primes);
}

struct SweepPoint {
  double sigma;
  double F;
  bool truncation_dependent;  // sigma < 1: literal finite product only
};

// Evaluates F over a sigma grid with a fixed prime cutoff. Below sigma = 1
// the infinite product diverges; the literal truncated product is computed
// (the published figure uses the same procedure) and flagged.
inline std::vector<SweepPoint> sweep_F(std::uint64_t m,
                                       const std::vector<double>& sigma_grid,
                                       const PrimeTable& primes) {
  if (sigma_grid.empty()) throw std::invalid_argument("sweep_F: empty grid");
  std::vector<SweepPoint> out;
  out.reserve(sigma_grid.size());
  for (double sigma : sigma_grid) {
    double F = F_sigma({m, sigma, primes.limit()}, primes);
    out.push_back({sigma, F, sigma < 1.0});
  }
  return out;
}

// Reference sweep cutoff, ceil(10^4 log 10^4).
inline std::uint64_t sweep_reference_cutoff() {
  return static_cast<std::uint64_t>(std::ceil(1e4 * std::log(1e4)));
}

}  // namespace primespect
