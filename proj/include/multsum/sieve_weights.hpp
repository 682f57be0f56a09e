#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multsum/mult_spec.hpp"

namespace multsum {

class FactorTable;

// Upper/lower combinatorial sieve weights of Rosser-Iwaniec beta-sieve type.
// Both weights live on squarefree products d of primes from the sieving set,
// with d <= z^u; lambda_plus(d) = mu(d) when the truncation condition
// p_m^{beta+1} p_{m-1} ... p_1 <= z^u holds for every odd m (primes of d
// listed descending), and 0 otherwise; lambda_minus truncates at even m.
struct SieveSystem {
  double z = 0.0;
  double u = 0.0;
  double beta = 2.0;
  std::vector<std::uint32_t> prime_set;  // ascending
  // Sorted by divisor; weight is mu(d) or 0 as described above.
  struct Entry {
    std::uint64_t d;
    std::int8_t lambda_plus;
    std::int8_t lambda_minus;
  };
  std::vector<Entry> support;

  double level() const;  // z^u
  std::string to_csv() const;  // columns d, lambda_plus, lambda_minus
};

// Builds the weight system for the given sieving primes (all must be <= z).
// Support enumeration is capped; exceeding the cap raises length_error.
SieveSystem build_weights(double z, double u, const std::vector<std::uint32_t>& primes,
                          double beta = 2.0, std::size_t support_cap = 10'000'000);

// Exhaustive check of the sandwich
//   (1 * lambda_minus)(n) <= 1[(n, prod P) = 1] <= (1 * lambda_plus)(n)
// for all n <= N, in exact integer arithmetic.
struct SandwichReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t first_violation = 0;  // 0 when none
  // Worst convolution values seen (diagnostics).
  int min_lower = 0;
  int max_upper = 0;
};
SandwichReport sandwich_check(const SieveSystem& sys, std::uint64_t N, const FactorTable& table);

// Compares sum_d lambda(d) nu(d) (log d)^r / d over the support against the
// full Moebius sum over all divisors of prod P, and reports the natural scale
// (log z)^r u^{-u/2} prod (1 - nu(p)/p).
struct MomentReport {
  double sieved_plus = 0.0;
  double sieved_minus = 0.0;
  double mobius = 0.0;
  double scale = 0.0;
  double diff_plus = 0.0;   // |sieved_plus - mobius|
  double diff_minus = 0.0;  // |sieved_minus - mobius|
};
MomentReport moment_compare(const SieveSystem& sys, const MultiplicativeSpec& nu, int r);

// Count of n <= N with all prime factors > z, bracketed by the weight sums
// sum_d lambda(d) floor(N/d).
struct RoughCountBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t exact = 0;
};
RoughCountBracket rough_count_bracket(const SieveSystem& sys, std::uint64_t N,
                                      const FactorTable& table);

}  // namespace multsum
