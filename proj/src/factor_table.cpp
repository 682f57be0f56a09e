#include "multsum/factor_table.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "multsum/parallel.hpp"

namespace multsum {

namespace {
constexpr std::size_t kSegment = 1u << 20;

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  // Primes up to sqrt(limit) by a plain sieve; enough to seed every segment.
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<bool> composite(root + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t p = 2; p <= root; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= root; m += p) composite[m] = true;
  }
  return out;
}
}  // namespace

FactorTable::FactorTable(std::uint64_t limit, std::uint64_t max_limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("FactorTable limit must be >= 2");
  if (limit > max_limit) {
    throw std::length_error("FactorTable limit " + std::to_string(limit) +
                            " exceeds configured maximum " + std::to_string(max_limit));
  }
  spf_.assign(limit + 1, 0);
  const std::vector<std::uint32_t> seeds = base_primes(limit);

  // Each segment is filled independently: marking only writes slots that are
  // still zero within the segment, and seed primes run in ascending order, so
  // the first writer of any composite slot is its smallest prime factor.
  parallel_chunks(limit + 1, kSegment, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::uint32_t* spf = spf_.data();
    for (std::uint32_t p : seeds) {
      const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
      if (p2 >= hi) break;
      std::uint64_t start = ((lo + p - 1) / p) * p;
      if (start < p2) start = p2;
      for (std::uint64_t m = start; m < hi; m += p) {
        if (spf[m] == 0) spf[m] = p;
      }
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n) {
      if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(n);
    }
  });

  std::size_t count = 0;
  for (std::uint64_t n = 2; n <= limit; ++n) count += (spf_[n] == n);
  primes_.reserve(count);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (spf_[n] == n) primes_.push_back(static_cast<std::uint32_t>(n));
  }
}

std::uint32_t FactorTable::spf(std::uint64_t n) const {
  if (n < 2 || n > limit_) throw std::out_of_range("FactorTable::spf out of range");
  return spf_[n];
}

std::uint64_t FactorTable::p_minus(std::uint64_t n) const {
  if (n == 1) return kPMinusInfinity;
  return spf(n);
}

bool FactorTable::is_prime(std::uint64_t n) const {
  if (n < 2 || n > limit_) throw std::out_of_range("FactorTable::is_prime out of range");
  return spf_[n] == n;
}

void FactorTable::factor(std::uint64_t n,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) const {
  if (n == 0 || n > limit_) throw std::out_of_range("FactorTable::factor out of range");
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    std::uint32_t a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    out.emplace_back(p, a);
  }
}

double von_mangoldt(std::uint64_t n, const FactorTable& table) {
  if (n == 0 || n > table.limit()) throw std::out_of_range("von_mangoldt out of range");
  if (n == 1) return 0.0;
  const std::uint32_t p = table.spf(n);
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

double chebyshev_psi(std::uint64_t x, const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("chebyshev_psi beyond table limit");
  double sum = 0.0;
  for_each_prime_power(table, x,
                       [&](std::uint64_t p, std::uint32_t, std::uint64_t) { sum += std::log(static_cast<double>(p)); });
  return sum;
}

double chebyshev_theta(std::uint64_t x, const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("chebyshev_theta beyond table limit");
  double sum = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    sum += std::log(static_cast<double>(p));
  }
  return sum;
}

double mertens_product(double z) {
  if (z < 2.0) return 1.0;
  const std::uint64_t zi = static_cast<std::uint64_t>(z);
  std::vector<bool> composite(zi + 1, false);
  double prod = 1.0;
  for (std::uint64_t p = 2; p <= zi; ++p) {
    if (composite[p]) continue;
    prod *= 1.0 - 1.0 / static_cast<double>(p);
    for (std::uint64_t m = p * p; m <= zi; m += p) composite[m] = true;
  }
  return prod;
}

bool sifted_indicator(std::uint64_t n, double z, const FactorTable& table) {
  if (n == 0 || n > table.limit()) throw std::out_of_range("sifted_indicator out of range");
  if (n == 1) return true;
  return static_cast<double>(table.spf(n)) > z;
}

}  // namespace multsum
