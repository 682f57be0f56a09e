#include "multsum/sieve_weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multsum/factor_table.hpp"
#include "multsum/numfmt.hpp"
#include "multsum/parallel.hpp"

namespace multsum {

double SieveSystem::level() const { return std::pow(z, u); }

std::string SieveSystem::to_csv() const {
  std::string out = "d,lambda_plus,lambda_minus\n";
  for (const Entry& e : support) {
    out += std::to_string(e.d) + "," + std::to_string(static_cast<int>(e.lambda_plus)) + "," +
           std::to_string(static_cast<int>(e.lambda_minus)) + "\n";
  }
  return out;
}

namespace {

struct BuildState {
  const std::vector<std::uint32_t>* primes_desc;
  double level;
  double beta;
  std::size_t cap;
  std::vector<SieveSystem::Entry>* out;
};

// Depth-first over squarefree d = p_1 ... p_r with p_1 > ... > p_r.  The
// truncation test at depth m is p_m^{beta+1} p_{m-1} ... p_1 <= level; it is
// required at odd depths for the upper weight and even depths for the lower
// weight.  Conditions only accumulate, so a branch with both weights dead is
// pruned.
void enumerate(const BuildState& st, std::size_t next_idx, double d, int depth, bool plus_ok,
               bool minus_ok) {
  const auto& primes = *st.primes_desc;
  for (std::size_t i = next_idx; i < primes.size(); ++i) {
    const double p = primes[i];
    const double cond = std::pow(p, st.beta + 1.0) * d;
    const int m = depth + 1;
    bool plus_here = plus_ok;
    bool minus_here = minus_ok;
    if (m % 2 == 1) {
      if (cond > st.level) plus_here = false;
    } else {
      if (cond > st.level) minus_here = false;
    }
    if (!plus_here && !minus_here) continue;
    const double nd = d * p;
    if (nd > st.level) {
      throw std::logic_error("sieve support escaped the level bound");
    }
    const std::int8_t mu = m % 2 == 0 ? 1 : -1;
    st.out->push_back(SieveSystem::Entry{static_cast<std::uint64_t>(nd + 0.5),
                                         plus_here ? mu : std::int8_t(0),
                                         minus_here ? mu : std::int8_t(0)});
    if (st.out->size() > st.cap) {
      throw std::length_error("sieve support cap exceeded; reduce u or z");
    }
    enumerate(st, i + 1, nd, m, plus_here, minus_here);
  }
}

}  // namespace

SieveSystem build_weights(double z, double u, const std::vector<std::uint32_t>& primes,
                          double beta, std::size_t support_cap) {
  if (z < 2.0) throw std::invalid_argument("build_weights needs z >= 2");
  if (u < 1.0) throw std::invalid_argument("build_weights needs u >= 1");
  if (beta < 1.0) throw std::invalid_argument("build_weights needs beta >= 1");
  SieveSystem sys;
  sys.z = z;
  sys.u = u;
  sys.beta = beta;
  sys.prime_set = primes;
  std::sort(sys.prime_set.begin(), sys.prime_set.end());
  for (std::size_t i = 1; i < sys.prime_set.size(); ++i) {
    if (sys.prime_set[i] == sys.prime_set[i - 1]) {
      throw std::invalid_argument("build_weights: duplicate sieving prime");
    }
  }
  for (std::uint32_t p : sys.prime_set) {
    if (static_cast<double>(p) > z) throw std::invalid_argument("sieving prime exceeds z");
  }

  std::vector<std::uint32_t> desc(sys.prime_set.rbegin(), sys.prime_set.rend());
  sys.support.push_back(SieveSystem::Entry{1, 1, 1});
  BuildState st{&desc, sys.level(), beta, support_cap, &sys.support};
  enumerate(st, 0, 1.0, 0, true, true);
  std::sort(sys.support.begin(), sys.support.end(),
            [](const SieveSystem::Entry& a, const SieveSystem::Entry& b) { return a.d < b.d; });
  return sys;
}

SandwichReport sandwich_check(const SieveSystem& sys, std::uint64_t N, const FactorTable& table) {
  if (N > table.limit()) throw std::out_of_range("sandwich_check beyond table limit");
  std::vector<std::int32_t> lower(N + 1, 0);
  std::vector<std::int32_t> upper(N + 1, 0);
  std::vector<std::uint8_t> coprime(N + 1, 1);

  // Convolutions (1 * lambda) and the coprimality indicator, filled per
  // fixed-size range so chunks touch disjoint slots.
  constexpr std::size_t kChunk = 1u << 18;
  parallel_chunks(N + 1, kChunk, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (const SieveSystem::Entry& e : sys.support) {
      if (e.lambda_plus == 0 && e.lambda_minus == 0) continue;
      const std::uint64_t d = e.d;
      std::uint64_t m = ((lo + d - 1) / d) * d;
      if (m == 0) m = d;
      for (; m < hi; m += d) {
        upper[m] += e.lambda_plus;
        lower[m] += e.lambda_minus;
      }
    }
    for (std::uint32_t p : sys.prime_set) {
      std::uint64_t m = ((lo + p - 1) / p) * p;
      if (m == 0) m = p;
      for (; m < hi; m += p) coprime[m] = 0;
    }
  });

  const std::size_t chunks = chunk_count(N + 1, kChunk);
  std::vector<SandwichReport> partial(chunks);
  parallel_chunks(N + 1, kChunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    SandwichReport r;
    r.min_lower = 1;
    r.max_upper = 1;
    for (std::uint64_t n = std::max<std::size_t>(lo, 1); n < hi; ++n) {
      const int ind = coprime[n];
      r.checked += 1;
      r.min_lower = std::min(r.min_lower, lower[n]);
      r.max_upper = std::max(r.max_upper, upper[n]);
      if (lower[n] > ind || ind > upper[n]) {
        r.violations += 1;
        if (r.first_violation == 0) r.first_violation = n;
      }
    }
    partial[c] = r;
  });

  SandwichReport report;
  report.min_lower = 1;
  report.max_upper = 1;
  for (const SandwichReport& r : partial) {
    report.checked += r.checked;
    report.violations += r.violations;
    if (report.first_violation == 0) report.first_violation = r.first_violation;
    report.min_lower = std::min(report.min_lower, r.min_lower);
    report.max_upper = std::max(report.max_upper, r.max_upper);
  }
  return report;
}

namespace {

double nu_at_squarefree(const SieveSystem& sys, const MultiplicativeSpec& nu, std::uint64_t d) {
  double v = 1.0;
  for (std::uint32_t p : sys.prime_set) {
    if (d == 1) break;
    if (d % p == 0) {
      const Cplx np = nu.at_prime_power(p, 1);
      if (std::abs(np.imag()) > 1e-12 || np.real() < 0.0 || np.real() >= static_cast<double>(p)) {
        throw std::domain_error("moment_compare: nu(p) must be real with 0 <= nu(p) < p");
      }
      v *= np.real();
      d /= p;
    }
  }
  return v;
}

void mobius_sum_rec(const SieveSystem& sys, const MultiplicativeSpec& nu, int r, std::size_t idx,
                    double d, double nud, double logd, int sign, double& acc) {
  if (idx == sys.prime_set.size()) {
    acc += sign * nud * std::pow(logd, r) / d;
    return;
  }
  mobius_sum_rec(sys, nu, r, idx + 1, d, nud, logd, sign, acc);
  const double p = sys.prime_set[idx];
  const Cplx np = nu.at_prime_power(sys.prime_set[idx], 1);
  mobius_sum_rec(sys, nu, r, idx + 1, d * p, nud * np.real(), logd + std::log(p), -sign, acc);
}

}  // namespace

MomentReport moment_compare(const SieveSystem& sys, const MultiplicativeSpec& nu, int r) {
  if (r < 0) throw std::invalid_argument("moment_compare needs r >= 0");
  if (sys.prime_set.size() > 26) {
    throw std::length_error("moment_compare: full divisor lattice too large (> 26 primes)");
  }
  MomentReport out;
  for (const SieveSystem::Entry& e : sys.support) {
    if (e.lambda_plus == 0 && e.lambda_minus == 0) continue;
    const double nud = nu_at_squarefree(sys, nu, e.d);
    const double logd = e.d == 1 ? 0.0 : std::log(static_cast<double>(e.d));
    const double term = nud * std::pow(logd, r) / static_cast<double>(e.d);
    out.sieved_plus += e.lambda_plus * term;
    out.sieved_minus += e.lambda_minus * term;
  }
  double mob = 0.0;
  mobius_sum_rec(sys, nu, r, 0, 1.0, 1.0, 0.0, 1, mob);
  out.mobius = mob;

  double density = 1.0;
  for (std::uint32_t p : sys.prime_set) {
    density *= 1.0 - nu.at_prime_power(p, 1).real() / static_cast<double>(p);
  }
  out.scale = std::pow(std::log(sys.z), r) * std::pow(sys.u, -sys.u / 2.0) * std::abs(density);
  out.diff_plus = std::abs(out.sieved_plus - out.mobius);
  out.diff_minus = std::abs(out.sieved_minus - out.mobius);
  return out;
}

RoughCountBracket rough_count_bracket(const SieveSystem& sys, std::uint64_t N,
                                      const FactorTable& table) {
  if (N > table.limit()) throw std::out_of_range("rough_count_bracket beyond table limit");
  RoughCountBracket out;
  for (const SieveSystem::Entry& e : sys.support) {
    const double q = static_cast<double>(N / e.d);
    out.lower += e.lambda_minus * q;
    out.upper += e.lambda_plus * q;
  }
  out.exact = 1;  // n = 1
  for (std::uint64_t n = 2; n <= N; ++n) {
    if (static_cast<double>(table.spf_data()[n]) > sys.z) out.exact += 1;
  }
  return out;
}

}  // namespace multsum
