#pragma once

// Independent cross-check implementations for the test suite.  Everything in
// here recomputes quantities by a different method than the library: brute
// force over divisors, direct sieves, or Euler-Maclaurin series.  Tests
// compare library output against these, so none of this calls back into the
// library's own algorithms.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Cplx = std::complex<double>;

// zeta(s) by Euler-Maclaurin with `terms` direct terms and 10 Bernoulli
// corrections; accurate to ~1e-12 for Re(s) > 0.5 away from s = 1.
Cplx zeta(Cplx s, int terms = 60);

// zeta'(s) by central differencing of the Euler-Maclaurin value.
Cplx zeta_prime(Cplx s, double h = 1e-6);

// Dirichlet convolution by direct divisor enumeration; index 0 unused.
std::vector<Cplx> convolve_brute(const std::vector<Cplx>& f, const std::vector<Cplx>& g);

// Solves f(n) log n = sum_{d|n} lam(d) f(n/d) for lam given dense values of
// f (f[1] must be 1): lam(n) = f(n) log n - sum_{d|n, d<n} lam(d) f(n/d).
// Works on all n, so it also witnesses that lam vanishes off prime powers.
std::vector<Cplx> lambda_brute(const std::vector<Cplx>& f);

// Plain Eratosthenes: flags[i] says whether i is prime, i <= limit.
std::vector<bool> prime_flags(std::uint64_t limit);

// sum_{p <= x} log p and sum_{p^k <= x} log p from the flags.
double theta_brute(std::uint64_t x);
double psi_brute(std::uint64_t x);

// log p if n = p^k, else 0, by trial division.
double von_mangoldt_brute(std::uint64_t n);

// Moebius values mu(1..limit) by factoring each n with the flags.
std::vector<int> moebius_brute(std::uint64_t limit);

// Values of a multiplicative function from its prime-power callback by trial
// division, independent of the library's table-based evaluator.
std::vector<Cplx> mult_values_brute(
    std::uint64_t limit, const std::function<Cplx(std::uint64_t, std::uint32_t)>& at_prime_power);

}  // namespace oracle
