#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

Cplx zeta(Cplx s, int terms) {
  // Euler-Maclaurin: sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
  //   + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
  static const double bernoulli[10] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,     -1.0 / 30,
                                       5.0 / 66,     -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                                       43867.0 / 798, -174611.0 / 330};
  const double N = terms;
  Cplx sum = 0.0;
  for (int n = 1; n < terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  sum += std::pow(N, 1.0 - s.real()) * std::exp(-Cplx(0.0, s.imag()) * std::log(N)) / (s - 1.0);
  sum += 0.5 * std::exp(-s * std::log(N));
  Cplx rising = s;               // s(s+1)...(s+2k-2), k = 1 gives s
  double factorial = 2.0;        // (2k)!
  for (int k = 1; k <= 10; ++k) {
    sum += bernoulli[k - 1] / factorial * rising * std::exp(-(s + Cplx(2.0 * k - 1.0)) * std::log(N));
    rising *= (s + Cplx(2.0 * k - 1.0)) * (s + Cplx(2.0 * k));
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

Cplx zeta_prime(Cplx s, double h) {
  return (zeta(s + Cplx(h)) - zeta(s - Cplx(h))) / (2.0 * h);
}

std::vector<Cplx> convolve_brute(const std::vector<Cplx>& f, const std::vector<Cplx>& g) {
  const std::size_t n = std::min(f.size(), g.size());
  std::vector<Cplx> out(n, Cplx(0.0));
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; a * b < n; ++b) out[a * b] += f[a] * g[b];
  }
  return out;
}

std::vector<Cplx> lambda_brute(const std::vector<Cplx>& f) {
  if (f.size() < 2 || f[1] != Cplx(1.0)) throw std::invalid_argument("lambda_brute needs f(1)=1");
  std::vector<Cplx> lam(f.size(), Cplx(0.0));
  for (std::size_t n = 2; n < f.size(); ++n) {
    Cplx v = f[n] * std::log(static_cast<double>(n));
    for (std::size_t d = 2; d < n; ++d) {
      if (n % d == 0) v -= lam[d] * f[n / d];
    }
    lam[n] = v;  // the d = n term contributes lam(n) f(1) = lam(n)
  }
  return lam;
}

std::vector<bool> prime_flags(std::uint64_t limit) {
  std::vector<bool> is_prime(limit + 1, true);
  is_prime[0] = false;
  if (limit >= 1) is_prime[1] = false;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!is_prime[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) is_prime[m] = false;
  }
  return is_prime;
}

double theta_brute(std::uint64_t x) {
  const std::vector<bool> flags = prime_flags(x);
  double sum = 0.0;
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (flags[p]) sum += std::log(static_cast<double>(p));
  }
  return sum;
}

double psi_brute(std::uint64_t x) {
  const std::vector<bool> flags = prime_flags(x);
  double sum = 0.0;
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (!flags[p]) continue;
    for (std::uint64_t q = p; q <= x; q *= p) {
      sum += std::log(static_cast<double>(p));
      if (q > x / p) break;
    }
  }
  return sum;
}

double von_mangoldt_brute(std::uint64_t n) {
  if (n < 2) return 0.0;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return std::log(static_cast<double>(n));  // n itself is prime
}

std::vector<int> moebius_brute(std::uint64_t limit) {
  std::vector<int> mu(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    std::uint64_t m = n;
    int factors = 0;
    bool squarefree = true;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      ++factors;
      if (m % p == 0) {
        squarefree = false;
        break;
      }
    }
    if (!squarefree) continue;
    if (m > 1) ++factors;
    mu[n] = factors % 2 == 0 ? 1 : -1;
  }
  return mu;
}

std::vector<Cplx> mult_values_brute(
    std::uint64_t limit, const std::function<Cplx(std::uint64_t, std::uint32_t)>& at_prime_power) {
  std::vector<Cplx> out(limit + 1, Cplx(0.0));
  if (limit >= 1) out[1] = 1.0;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    std::uint64_t m = n;
    Cplx v = 1.0;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      std::uint32_t a = 0;
      while (m % p == 0) {
        m /= p;
        ++a;
      }
      v *= at_prime_power(p, a);
    }
    if (m > 1) v *= at_prime_power(m, 1);
    out[n] = v;
  }
  return out;
}

}  // namespace oracle
