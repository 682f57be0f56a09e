#pragma once

#include <cstdint>
#include <vector>

#include "multsum/mult_spec.hpp"

namespace multsum {

class FactorTable;

// Dense values f(1..limit) with prefix sums S(n) = sum_{m <= n} f(m).
struct ValueTable {
  std::uint64_t limit = 0;
  std::vector<Cplx> values;  // values[n], index 0 unused
  std::vector<Cplx> prefix;  // prefix[n] = S(n), prefix[0] = 0

  Cplx value(std::uint64_t n) const { return values[n]; }
  Cplx sum(std::uint64_t n) const { return prefix[n]; }

  static ValueTable from_values(std::vector<Cplx> vals);
};

// Tabulates the multiplicative function on [1, x] using smallest prime
// factors: f(n) = f(p^a) f(m) with p = spf(n), n = p^a m, (m, p) = 1.
ValueTable eval_range(const MultiplicativeSpec& f, std::uint64_t x, const FactorTable& table);

// Pointwise Dirichlet convolution of two tabulated functions, up to the
// smaller of the two limits.
ValueTable dirichlet_convolve(const ValueTable& f, const ValueTable& g);

// Tabulates f_Gamma = f * tau_Gamma on [1, x].
ValueTable eval_twisted_range(const MultiplicativeSpec& f, const OrdinateMultiset& gammas,
                              std::uint64_t x, const FactorTable& table);

}  // namespace multsum
