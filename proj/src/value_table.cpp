#include "multsum/value_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "multsum/factor_table.hpp"

namespace multsum {

namespace {
void build_prefix(ValueTable& t) {
  t.prefix.assign(t.limit + 1, Cplx(0.0));
  Cplx running = 0.0;
  for (std::uint64_t n = 1; n <= t.limit; ++n) {
    running += t.values[n];
    t.prefix[n] = running;
  }
}
}  // namespace

ValueTable ValueTable::from_values(std::vector<Cplx> vals) {
  if (vals.size() < 2) throw std::invalid_argument("value table needs entries for n >= 1");
  ValueTable t;
  t.limit = vals.size() - 1;
  t.values = std::move(vals);
  build_prefix(t);
  return t;
}

ValueTable eval_range(const MultiplicativeSpec& f, std::uint64_t x, const FactorTable& table) {
  if (x < 1 || x > table.limit()) throw std::out_of_range("eval_range beyond table limit");
  ValueTable t;
  t.limit = x;
  t.values.assign(x + 1, Cplx(0.0));
  t.values[1] = 1.0;
  const std::uint32_t* spf = table.spf_data();
  // Memoize f(p^a) for small primes, which dominate as smallest factors.
  constexpr std::uint32_t kCachePrimes = 64;
  constexpr std::uint32_t kCachePow = 40;
  std::vector<Cplx> cache(kCachePrimes * kCachePow);
  std::vector<bool> cached(kCachePrimes * kCachePow, false);
  auto value_at = [&](std::uint32_t p, std::uint32_t a) -> Cplx {
    if (p < kCachePrimes && a < kCachePow) {
      const std::size_t slot = p * kCachePow + a;
      if (!cached[slot]) {
        cache[slot] = f.at_prime_power(p, a);
        cached[slot] = true;
      }
      return cache[slot];
    }
    return f.at_prime_power(p, a);
  };
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint32_t p = spf[n];
    std::uint64_t m = n / p;
    std::uint32_t a = 1;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    t.values[n] = a == 1 && m == 1 ? value_at(p, 1) : value_at(p, a) * t.values[m];
  }
  build_prefix(t);
  return t;
}

ValueTable dirichlet_convolve(const ValueTable& f, const ValueTable& g) {
  const std::uint64_t x = std::min(f.limit, g.limit);
  ValueTable t;
  t.limit = x;
  t.values.assign(x + 1, Cplx(0.0));
  for (std::uint64_t d = 1; d <= x; ++d) {
    const Cplx fd = f.values[d];
    if (fd == Cplx(0.0)) continue;
    for (std::uint64_t m = 1; m <= x / d; ++m) t.values[d * m] += fd * g.values[m];
  }
  build_prefix(t);
  return t;
}

ValueTable eval_twisted_range(const MultiplicativeSpec& f, const OrdinateMultiset& gammas,
                              std::uint64_t x, const FactorTable& table) {
  return eval_range(twisted_spec(f, gammas), x, table);
}

}  // namespace multsum
