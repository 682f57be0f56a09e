#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multsum/mult_spec.hpp"
#include "multsum/value_table.hpp"

namespace multsum {

class FactorTable;

// S(x, g) sampled on an ascending grid of integers.
struct SumGrid {
  std::vector<std::uint64_t> x_points;
  std::vector<Cplx> values;
  std::string label;

  void validate() const;
  std::string to_csv() const;  // columns x, re, im, abs
};

// S(x) = sum_{n <= x} F[n].
Cplx partial_sum(const ValueTable& F, std::uint64_t x);

// Sum of F[n] over n <= x with every prime factor of n exceeding z (n = 1
// always counts).
Cplx sifted_sum(const ValueTable& F, double z, std::uint64_t x, const FactorTable& table);

// sum_{p <= x} f(p) log p.
Cplx prime_log_sum(const MultiplicativeSpec& spec, std::uint64_t x, const FactorTable& table);

// E(x) = sum_{p <= x} (f(p) + sum_{gamma} p^{i gamma}) log p, the quantity the
// main bound controls.
Cplx discrepancy(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas, std::uint64_t x,
                 const FactorTable& table);

// discrepancy at every grid point, one pass over the primes.
SumGrid discrepancy_grid(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                         const std::vector<std::uint64_t>& x_points, const FactorTable& table);

// sum over prime powers p^k <= x of Lambda_{f_Gamma}(p^k), where
// Lambda_{f_Gamma}(p^k) = Lambda_f(p^k) + log p * sum_{gamma} p^{i k gamma}.
Cplx lambda_partial_sum(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                        std::uint64_t x, const FactorTable& table);

// Dense Lambda_{f_Gamma} values on [1, x] (zero off prime powers).
std::vector<Cplx> lambda_values_dense(const MultiplicativeSpec& spec,
                                      const OrdinateMultiset& gammas, std::uint64_t x,
                                      const FactorTable& table);

// sum_{n <= x} (F * G)(n) by the hyperbola method with the given split:
//   sum_{a <= split} F[a] S_G(x/a) + sum_{b <= x/split} G[b] S_F(x/b)
//     - S_F(split) S_G(x/split).
Cplx hyperbola_sum(const ValueTable& F, const ValueTable& G, std::uint64_t x, std::uint64_t split);

// F(x) = sum_{n <= x} h^{-1}(n) G(x/n): recovers F from G(x) = sum h(n)F(x/n).
// Factors n by trial division, so no FactorTable is needed.
Cplx inversion_recover(const std::function<Cplx(double)>& G, const MultiplicativeSpec& h,
                       std::uint64_t x);

// Max over sampled x' <= x (geometric subsamples down to ~16) of
// |sum_{n<=x'} f_Gamma(n) log n - sum_{n<=x'} Lambda_{f_Gamma}(n) S(x'/n)|.
// The identity is exact, so the result is floating-point error only.
double recursion_check(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                       std::uint64_t x, const FactorTable& table);

// Lattice point count #{nu in N_{>=1}^k : sum a_j nu_j <= y} against the
// closed-form bound (y + sum a_j)^k / (k! prod a_j).
struct LatticeCount {
  std::uint64_t count = 0;
  double bound = 0.0;
};
LatticeCount lattice_count_bound(const std::vector<double>& a, double y);

// (sum_{n<=x} f(n)) / (x exp(sum_{p<=x} (f(p)-1)/p)) for nonnegative f.
double halasz_ratio(const MultiplicativeSpec& spec, std::uint64_t x, const FactorTable& table);

// lhs = sum_{n<=x, P^-(n)>z} n^{it}; main = x^{1+it}/(1+it) prod_{p<=z}(1-1/p).
struct SiftedPowerSum {
  Cplx lhs;
  Cplx main;
  double relerr = 0.0;
};
SiftedPowerSum sifted_power_sum_check(double t, double z, std::uint64_t x,
                                      const FactorTable& table);

// S(x) = sum_{n<=x, (n, k_D)=1} D^{Omega(n)} with k_D = prod_{p <= D^3} p,
// least-squares fitted as S(x)/x ~ sum_{i<D} a_i (log x)^i over the grid.
struct DkOmegaFit {
  std::vector<double> coefficients;  // a_0..a_{D-1}
  std::vector<double> s_over_x;      // S(x)/x per grid point
  std::vector<double> residuals;     // fit residuals per grid point
};
DkOmegaFit dk_omega_fit(int D, const std::vector<std::uint64_t>& x_grid, const FactorTable& table);

}  // namespace multsum
