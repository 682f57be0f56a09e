#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace multsum {

// Smallest-prime-factor table over [1, limit], built with a segmented sieve.
// spf(n) is the least prime dividing n (spf(n) == n iff n is prime), and
// p_minus(1) is reported as a sentinel treated as +infinity by every caller.
class FactorTable {
 public:
  static constexpr std::uint64_t kPMinusInfinity = ~0ull;
  static constexpr std::uint64_t kDefaultMaxLimit = 100'000'000ull;

  explicit FactorTable(std::uint64_t limit, std::uint64_t max_limit = kDefaultMaxLimit);

  std::uint64_t limit() const { return limit_; }

  std::uint32_t spf(std::uint64_t n) const;

  // Least prime factor with p_minus(1) == kPMinusInfinity.
  std::uint64_t p_minus(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;

  // All primes <= limit, ascending.
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  // Appends the factorization n = prod p_i^{a_i} as (p_i, a_i) pairs with
  // p_i strictly ascending.
  void factor(std::uint64_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) const;

  const std::uint32_t* spf_data() const { return spf_.data(); }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// Von Mangoldt function: log p on prime powers p^k, else 0.
double von_mangoldt(std::uint64_t n, const FactorTable& table);

// Chebyshev psi(x) = sum_{p^k <= x} log p over prime powers.
double chebyshev_psi(std::uint64_t x, const FactorTable& table);

// Chebyshev theta(x) = sum_{p <= x} log p.
double chebyshev_theta(std::uint64_t x, const FactorTable& table);

// prod_{p <= z} (1 - 1/p); returns 1 for z < 2.  Sieves locally, so it does
// not need a FactorTable and works for any z up to around 1e8.
double mertens_product(double z);

// 1 if every prime factor of n exceeds z (always true for n = 1), else 0.
bool sifted_indicator(std::uint64_t n, double z, const FactorTable& table);

// Calls fn(p, k, p^k) for every prime power p^k <= x, ordered by p, then k.
template <class Fn>
void for_each_prime_power(const FactorTable& table, std::uint64_t x, Fn&& fn) {
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    std::uint64_t q = p;
    for (std::uint32_t k = 1;; ++k) {
      fn(static_cast<std::uint64_t>(p), k, q);
      if (q > x / p) break;
      q *= p;
    }
  }
}

}  // namespace multsum
