#pragma once

#include <string>
#include <vector>

#include "multsum/mult_spec.hpp"

namespace multsum {

// Registry of named multiplicative functions.  Grammar (colon separated):
//   moebius | liouville | one
//   tau_k:<K>               K-fold divisor function, K >= 1 integer
//   tau_minus_kappa:<kappa> coefficients of zeta^{-kappa}, kappa > 0 real
//   legendre_chi:<q>        completely multiplicative Legendre symbol mod
//                           an odd prime q
//   twist:<spec>:<gamma>    n -> f(n) n^{i gamma}
//   product:<spec>:<spec>   Dirichlet convolution (declared sizes add)
MultiplicativeSpec catalog(const std::string& name);

struct CatalogEntry {
  std::string pattern;
  std::string description;
};
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace multsum
