#include "multsum/mult_spec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multsum/factor_table.hpp"

namespace multsum {

void OrdinateMultiset::add(double ordinate, int multiplicity) {
  if (multiplicity <= 0) throw std::invalid_argument("ordinate multiplicity must be positive");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), ordinate - resolution_,
                             [](const Entry& e, double v) { return e.ordinate < v; });
  if (it != entries_.end() && std::abs(it->ordinate - ordinate) <= resolution_) {
    it->multiplicity += multiplicity;
    return;
  }
  entries_.insert(it, Entry{ordinate, multiplicity});
}

int OrdinateMultiset::total_multiplicity() const {
  int total = 0;
  for (const Entry& e : entries_) total += e.multiplicity;
  return total;
}

std::vector<double> OrdinateMultiset::expanded() const {
  std::vector<double> out;
  out.reserve(total_multiplicity());
  for (const Entry& e : entries_) {
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.ordinate);
  }
  return out;
}

std::vector<Cplx> lambda_at_prime(const MultiplicativeSpec& f, std::uint64_t p,
                                  std::uint32_t k_max) {
  const double logp = std::log(static_cast<double>(p));
  std::vector<Cplx> fv(k_max + 1);  // fv[j] = f(p^j)
  fv[0] = 1.0;
  for (std::uint32_t j = 1; j <= k_max; ++j) fv[j] = f.at_prime_power(p, j);
  std::vector<Cplx> lam(k_max);
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    Cplx v = static_cast<double>(k) * fv[k] * logp;
    for (std::uint32_t j = 1; j < k; ++j) v -= lam[j - 1] * fv[k - j];
    lam[k - 1] = v;
  }
  return lam;
}

PrimePowerMap lambda_on_prime_powers(const MultiplicativeSpec& f, std::uint64_t x,
                                     const FactorTable& table) {
  if (x > table.limit()) throw std::out_of_range("lambda_on_prime_powers beyond table limit");
  PrimePowerMap out;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    std::uint32_t k_max = 0;
    std::uint64_t q = 1;
    while (q <= x / p) {
      q *= p;
      ++k_max;
    }
    const std::vector<Cplx> lam = lambda_at_prime(f, p, k_max);
    for (std::uint32_t k = 1; k <= k_max; ++k) out.set(p, k, lam[k - 1]);
  }
  return out;
}

MultiplicativeSpec dirichlet_inverse(const MultiplicativeSpec& f) {
  MultiplicativeSpec g;
  g.name = f.name + "^-1";
  g.declared_size = f.declared_size;
  g.at_prime_power = [f](std::uint64_t p, std::uint32_t a) -> Cplx {
    std::vector<Cplx> fv(a + 1), gv(a + 1);
    fv[0] = gv[0] = 1.0;
    for (std::uint32_t j = 1; j <= a; ++j) fv[j] = f.at_prime_power(p, j);
    for (std::uint32_t k = 1; k <= a; ++k) {
      Cplx v = 0.0;
      for (std::uint32_t j = 1; j <= k; ++j) v += fv[j] * gv[k - j];
      gv[k] = -v;
    }
    return gv[a];
  };
  return g;
}

MultiplicativeSpec convolve_specs(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                                  const std::string& name) {
  MultiplicativeSpec h;
  h.name = name;
  h.declared_size = f.declared_size + g.declared_size;
  h.at_prime_power = [f, g](std::uint64_t p, std::uint32_t a) -> Cplx {
    Cplx v = 0.0;
    for (std::uint32_t j = 0; j <= a; ++j) {
      const Cplx fj = j == 0 ? Cplx(1.0) : f.at_prime_power(p, j);
      const Cplx gj = (a - j) == 0 ? Cplx(1.0) : g.at_prime_power(p, a - j);
      v += fj * gj;
    }
    return v;
  };
  return h;
}

Cplx tau_gamma_at(const OrdinateMultiset& gammas, std::uint64_t p, std::uint32_t a) {
  if (a == 0) return 1.0;
  if (gammas.empty()) return 0.0;
  const double logp = std::log(static_cast<double>(p));
  // Complete homogeneous symmetric polynomials via the one-variable-at-a-time
  // recurrence h_new[a] = h_old[a] + x * h_new[a-1].
  std::vector<Cplx> h(a + 1, Cplx(0.0));
  h[0] = 1.0;
  for (const auto& entry : gammas.entries()) {
    const Cplx x = std::polar(1.0, entry.ordinate * logp);
    for (int rep = 0; rep < entry.multiplicity; ++rep) {
      for (std::uint32_t j = 1; j <= a; ++j) h[j] += x * h[j - 1];
    }
  }
  return h[a];
}

MultiplicativeSpec tau_gamma_spec(const OrdinateMultiset& gammas) {
  MultiplicativeSpec s;
  s.name = "tau_gamma[" + std::to_string(gammas.total_multiplicity()) + "]";
  s.declared_size = static_cast<double>(gammas.total_multiplicity());
  s.at_prime_power = [gammas](std::uint64_t p, std::uint32_t a) { return tau_gamma_at(gammas, p, a); };
  return s;
}

MultiplicativeSpec twisted_spec(const MultiplicativeSpec& f, const OrdinateMultiset& gammas) {
  if (gammas.empty()) {
    MultiplicativeSpec same = f;
    return same;
  }
  MultiplicativeSpec h = convolve_specs(f, tau_gamma_spec(gammas), f.name + "_twisted");
  h.declared_size = f.declared_size + gammas.total_multiplicity();
  return h;
}

MultiplicativeSpec twist(const MultiplicativeSpec& f, double gamma) {
  MultiplicativeSpec g;
  g.name = f.name + "*n^(i" + std::to_string(gamma) + ")";
  g.declared_size = f.declared_size;
  g.at_prime_power = [f, gamma](std::uint64_t p, std::uint32_t a) -> Cplx {
    const double logp = std::log(static_cast<double>(p));
    return f.at_prime_power(p, a) * std::polar(1.0, gamma * a * logp);
  };
  return g;
}

double tau_d_prime_power(double d, std::uint32_t a) {
  double v = 1.0;
  for (std::uint32_t j = 1; j <= a; ++j) v *= (d + j - 1) / j;
  return v;
}

ClassReport verify_class(const MultiplicativeSpec& f, double size_bound, std::uint64_t x,
                         const FactorTable& table, std::uint32_t a_max) {
  ClassReport report;
  report.size_bound = size_bound;
  const MultiplicativeSpec inv = dirichlet_inverse(f);
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    std::uint32_t k_max = 0;
    std::uint64_t q = 1;
    while (k_max < a_max && q <= x / p) {
      q *= p;
      ++k_max;
    }
    const double logp = std::log(static_cast<double>(p));
    const std::vector<Cplx> lam = lambda_at_prime(f, p, k_max);
    for (std::uint32_t k = 1; k <= k_max; ++k) {
      const double ratio = std::abs(lam[k - 1]) / logp;
      if (ratio > report.lambda_ratio) {
        report.lambda_ratio = ratio;
        report.worst_lambda_prime = p;
        report.worst_lambda_exponent = k;
      }
      const double bound = tau_d_prime_power(size_bound, k);
      report.f_ratio = std::max(report.f_ratio, std::abs(f.at_prime_power(p, k)) / bound);
      report.inverse_ratio = std::max(report.inverse_ratio, std::abs(inv.at_prime_power(p, k)) / bound);
    }
  }
  const double slack = 1.0 + 1e-9;
  report.pass = report.lambda_ratio <= size_bound * slack && report.f_ratio <= slack &&
                report.inverse_ratio <= slack;
  return report;
}

}  // namespace multsum
