#include "multsum/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "multsum/factor_table.hpp"
#include "multsum/numfmt.hpp"

namespace multsum {

void SumGrid::validate() const {
  if (x_points.size() != values.size()) throw std::invalid_argument("SumGrid length mismatch");
  for (std::size_t i = 1; i < x_points.size(); ++i) {
    if (x_points[i] <= x_points[i - 1]) {
      throw std::invalid_argument("SumGrid x_points must be strictly increasing");
    }
  }
}

std::string SumGrid::to_csv() const {
  validate();
  std::string out = "x,re,im,abs\n";
  for (std::size_t i = 0; i < x_points.size(); ++i) {
    out += std::to_string(x_points[i]) + "," + fmt_double(values[i].real()) + "," +
           fmt_double(values[i].imag()) + "," + fmt_double(std::abs(values[i])) + "\n";
  }
  return out;
}

Cplx partial_sum(const ValueTable& F, std::uint64_t x) {
  if (x > F.limit) throw std::out_of_range("partial_sum beyond table limit");
  return F.sum(x);
}

Cplx sifted_sum(const ValueTable& F, double z, std::uint64_t x, const FactorTable& table) {
  if (x > F.limit || x > table.limit()) throw std::out_of_range("sifted_sum beyond table limit");
  Cplx total = F.value(1);
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (static_cast<double>(table.spf_data()[n]) > z) total += F.value(n);
  }
  return total;
}

namespace {

// f(p) + sum over gamma (with multiplicity) of p^{i gamma}, times log p.
Cplx discrepancy_term(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                      std::uint64_t p) {
  const double logp = std::log(static_cast<double>(p));
  Cplx v = spec.at_prime_power(p, 1);
  for (const auto& e : gammas.entries()) {
    v += static_cast<double>(e.multiplicity) * std::polar(1.0, e.ordinate * logp);
  }
  return v * logp;
}

}  // namespace

Cplx prime_log_sum(const MultiplicativeSpec& spec, std::uint64_t x, const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("prime_log_sum beyond table limit");
  Cplx total = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    total += spec.at_prime_power(p, 1) * std::log(static_cast<double>(p));
  }
  return total;
}

Cplx discrepancy(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas, std::uint64_t x,
                 const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("discrepancy beyond table limit");
  Cplx total = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    total += discrepancy_term(spec, gammas, p);
  }
  return total;
}

SumGrid discrepancy_grid(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                         const std::vector<std::uint64_t>& x_points, const FactorTable& table) {
  SumGrid grid;
  grid.x_points = x_points;
  grid.values.assign(x_points.size(), Cplx(0.0));
  grid.label = spec.name + " discrepancy";
  grid.validate();
  if (x_points.empty()) return grid;
  if (x_points.back() > table.limit()) throw std::out_of_range("discrepancy_grid beyond limit");
  Cplx running = 0.0;
  std::size_t next = 0;
  for (std::uint32_t p : table.primes()) {
    while (next < x_points.size() && x_points[next] < p) grid.values[next++] = running;
    if (next == x_points.size()) break;
    running += discrepancy_term(spec, gammas, p);
  }
  while (next < x_points.size()) grid.values[next++] = running;
  return grid;
}

Cplx lambda_partial_sum(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                        std::uint64_t x, const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("lambda_partial_sum beyond table limit");
  Cplx total = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    std::uint32_t k_max = 0;
    std::uint64_t q = 1;
    while (q <= x / p) {
      q *= p;
      ++k_max;
    }
    const double logp = std::log(static_cast<double>(p));
    const std::vector<Cplx> lam = lambda_at_prime(spec, p, k_max);
    q = 1;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
      q *= p;
      Cplx v = lam[k - 1];
      for (const auto& e : gammas.entries()) {
        v += static_cast<double>(e.multiplicity) * logp *
             std::polar(1.0, e.ordinate * k * logp);
      }
      total += v;
    }
  }
  return total;
}

std::vector<Cplx> lambda_values_dense(const MultiplicativeSpec& spec,
                                      const OrdinateMultiset& gammas, std::uint64_t x,
                                      const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("lambda_values_dense beyond table limit");
  std::vector<Cplx> dense(x + 1, Cplx(0.0));
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    std::uint32_t k_max = 0;
    std::uint64_t q = 1;
    while (q <= x / p) {
      q *= p;
      ++k_max;
    }
    const double logp = std::log(static_cast<double>(p));
    const std::vector<Cplx> lam = lambda_at_prime(spec, p, k_max);
    q = 1;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
      q *= p;
      Cplx v = lam[k - 1];
      for (const auto& e : gammas.entries()) {
        v += static_cast<double>(e.multiplicity) * logp *
             std::polar(1.0, e.ordinate * k * logp);
      }
      dense[q] = v;
    }
  }
  return dense;
}

Cplx hyperbola_sum(const ValueTable& F, const ValueTable& G, std::uint64_t x, std::uint64_t split) {
  if (x > F.limit || x > G.limit) throw std::out_of_range("hyperbola_sum beyond table limit");
  if (split < 1 || split > x) throw std::invalid_argument("hyperbola_sum split out of range");
  Cplx total = 0.0;
  for (std::uint64_t a = 1; a <= split; ++a) total += F.value(a) * G.sum(x / a);
  for (std::uint64_t b = 1; b <= x / split; ++b) total += G.value(b) * F.sum(x / b);
  total -= F.sum(split) * G.sum(x / split);
  return total;
}

namespace {
// Value of a multiplicative spec at one integer, factoring by trial division.
Cplx spec_value_at(const MultiplicativeSpec& f, std::uint64_t n) {
  Cplx v = 1.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    v *= f.at_prime_power(p, a);
  }
  if (n > 1) v *= f.at_prime_power(n, 1);
  return v;
}
}  // namespace

Cplx inversion_recover(const std::function<Cplx(double)>& G, const MultiplicativeSpec& h,
                       std::uint64_t x) {
  if (x < 1) throw std::invalid_argument("inversion_recover needs x >= 1");
  const MultiplicativeSpec inv = dirichlet_inverse(h);
  Cplx total = 0.0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    total += spec_value_at(inv, n) * G(static_cast<double>(x) / static_cast<double>(n));
  }
  return total;
}

double recursion_check(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                       std::uint64_t x, const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("recursion_check beyond table limit");
  const ValueTable fg = eval_twisted_range(spec, gammas, x, table);
  // Prime powers q <= x with Lambda_{f_Gamma}(q).
  std::vector<std::pair<std::uint64_t, Cplx>> lam;
  {
    const std::vector<Cplx> dense = lambda_values_dense(spec, gammas, x, table);
    for_each_prime_power(table, x, [&](std::uint64_t, std::uint32_t, std::uint64_t q) {
      lam.emplace_back(q, dense[q]);
    });
    std::sort(lam.begin(), lam.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  std::vector<std::uint64_t> samples;
  for (std::uint64_t s = x; s >= 16 && samples.size() < 12; s /= 2) samples.push_back(s);
  if (samples.empty()) samples.push_back(x);

  double worst = 0.0;
  for (std::uint64_t xp : samples) {
    Cplx lhs = 0.0;
    for (std::uint64_t n = 2; n <= xp; ++n) {
      lhs += fg.value(n) * std::log(static_cast<double>(n));
    }
    Cplx rhs = 0.0;
    for (const auto& [q, lq] : lam) {
      if (q > xp) break;
      rhs += lq * fg.sum(xp / q);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {
std::uint64_t lattice_count_rec(const std::vector<double>& a, std::size_t j, double remaining) {
  // Counts nu_j,...,nu_k >= 1 with sum a_i nu_i <= remaining.
  if (j == a.size()) return 1;
  std::uint64_t total = 0;
  for (double used = a[j]; used <= remaining; used += a[j]) {
    // Feasibility for the rest: each later coordinate needs at least a_i.
    double floor_rest = 0.0;
    for (std::size_t i = j + 1; i < a.size(); ++i) floor_rest += a[i];
    if (used + floor_rest > remaining) break;
    total += lattice_count_rec(a, j + 1, remaining - used);
  }
  return total;
}
}  // namespace

LatticeCount lattice_count_bound(const std::vector<double>& a, double y) {
  if (a.empty()) throw std::invalid_argument("lattice_count_bound needs at least one length");
  double work = 1.0;
  double sum_a = 0.0;
  double prod_a = 1.0;
  for (double aj : a) {
    if (aj <= 0.0) throw std::invalid_argument("lattice lengths must be positive");
    work *= std::max(1.0, y / aj);
    sum_a += aj;
    prod_a *= aj;
  }
  if (work > 1e7) throw std::invalid_argument("lattice enumeration infeasible at this size");
  LatticeCount out;
  out.count = lattice_count_rec(a, 0, y);
  double kfact = 1.0;
  for (std::size_t j = 2; j <= a.size(); ++j) kfact *= static_cast<double>(j);
  out.bound = std::pow(y + sum_a, static_cast<double>(a.size())) / (kfact * prod_a);
  return out;
}

double halasz_ratio(const MultiplicativeSpec& spec, std::uint64_t x, const FactorTable& table) {
  const ValueTable F = eval_range(spec, x, table);
  for (std::uint64_t n = 1; n <= x; ++n) {
    const Cplx v = F.value(n);
    if (std::abs(v.imag()) > 1e-12 || v.real() < -1e-12) {
      throw std::domain_error("halasz_ratio requires a real nonnegative function");
    }
  }
  double exponent = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    exponent += (spec.at_prime_power(p, 1).real() - 1.0) / static_cast<double>(p);
  }
  const double denom = static_cast<double>(x) * std::exp(exponent);
  return F.sum(x).real() / denom;
}

SiftedPowerSum sifted_power_sum_check(double t, double z, std::uint64_t x,
                                      const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("sifted_power_sum_check beyond table limit");
  if (z < 2.0 || static_cast<double>(x) < z) {
    throw std::invalid_argument("sifted_power_sum_check needs x >= z >= 2");
  }
  SiftedPowerSum out;
  Cplx lhs = 1.0;  // n = 1
  const std::uint32_t* spf = table.spf_data();
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (static_cast<double>(spf[n]) > z) {
      lhs += t == 0.0 ? Cplx(1.0) : std::polar(1.0, t * std::log(static_cast<double>(n)));
    }
  }
  const Cplx one_plus_it(1.0, t);
  const Cplx xpow = std::pow(Cplx(static_cast<double>(x), 0.0), one_plus_it);
  out.lhs = lhs;
  out.main = xpow / one_plus_it * mertens_product(z);
  out.relerr = std::abs(out.lhs - out.main) / std::abs(out.main);
  return out;
}

namespace {
// Solves the k x k normal equations by Gaussian elimination with partial
// pivoting; k is at most a handful here.
std::vector<double> solve_dense(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    if (m[col][col] == 0.0) throw std::runtime_error("singular least-squares system");
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> sol(k, 0.0);
  for (std::size_t r = k; r-- > 0;) {
    double v = rhs[r];
    for (std::size_t c = r + 1; c < k; ++c) v -= m[r][c] * sol[c];
    sol[r] = v / m[r][r];
  }
  return sol;
}
}  // namespace

DkOmegaFit dk_omega_fit(int D, const std::vector<std::uint64_t>& x_grid, const FactorTable& table) {
  if (D < 1) throw std::invalid_argument("dk_omega_fit needs D >= 1");
  if (x_grid.empty()) throw std::invalid_argument("dk_omega_fit needs a nonempty grid");
  const std::uint64_t x_max = *std::max_element(x_grid.begin(), x_grid.end());
  if (x_max > table.limit()) throw std::out_of_range("dk_omega_fit beyond table limit");
  const double rough = std::pow(static_cast<double>(D), 3.0);
  if (rough >= static_cast<double>(x_max)) {
    throw std::invalid_argument("dk_omega_fit: D^3 exceeds the grid; k_D filter empties the sum");
  }

  // Omega(n) via the smallest-prime-factor recursion, then a running sum of
  // D^Omega(n) over n with P^-(n) > D^3, checkpointed at the grid points.
  std::vector<std::uint64_t> xs = x_grid;
  std::sort(xs.begin(), xs.end());
  std::vector<std::uint8_t> omega(x_max + 1, 0);
  const std::uint32_t* spf = table.spf_data();
  for (std::uint64_t n = 2; n <= x_max; ++n) omega[n] = omega[n / spf[n]] + 1;

  double dpow[64];
  dpow[0] = 1.0;
  for (int i = 1; i < 64; ++i) dpow[i] = dpow[i - 1] * D;

  DkOmegaFit fit;
  fit.s_over_x.assign(xs.size(), 0.0);
  double running = 1.0;  // n = 1
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    if (n >= 2 && static_cast<double>(spf[n]) > rough) running += dpow[omega[n]];
    while (next < xs.size() && xs[next] == n) fit.s_over_x[next++] = running / static_cast<double>(n);
  }

  const std::size_t k = static_cast<std::size_t>(D);
  std::vector<std::vector<double>> normal(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(static_cast<double>(xs[i]));
    std::vector<double> basis(k);
    for (std::size_t j = 0; j < k; ++j) basis[j] = std::pow(lx, static_cast<double>(j));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) normal[r][c] += basis[r] * basis[c];
      rhs[r] += basis[r] * fit.s_over_x[i];
    }
  }
  fit.coefficients = solve_dense(std::move(normal), std::move(rhs));
  fit.residuals.assign(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(static_cast<double>(xs[i]));
    double model = 0.0;
    for (std::size_t j = 0; j < k; ++j) model += fit.coefficients[j] * std::pow(lx, static_cast<double>(j));
    fit.residuals[i] = fit.s_over_x[i] - model;
  }
  return fit;
}

}  // namespace multsum
