#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multsum/mult_spec.hpp"

namespace multsum {

class FactorTable;

struct EvalResult {
  Cplx value;
  std::uint64_t truncation = 0;
  double tail_bound = 0.0;
  // True when the tail bound is only an order-of-magnitude estimate (boundary
  // evaluation on Re(s) = 1); false when it is a proved majorant given the
  // class bounds on f.
  bool heuristic_tail = false;
};

// L(s, f) = sum_{n<=N} f(n) n^{-s} for Re(s) > 1, with a rigorous tail bound
// valid whenever |f| <= tau_D for D = max(1, ceil(declared_size)).
EvalResult evaluate_L(const MultiplicativeSpec& spec, Cplx s, std::uint64_t N,
                      const FactorTable& table);

// Boundary values L(1 + it, f_Gamma) by partial summation against prefix
// sums: S(X) X^{-s} + sum_{n<X} S(n) (n^{-s} - (n+1)^{-s}), s = 1 + it.
EvalResult evaluate_L_on_line(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                              double t, std::uint64_t X, const FactorTable& table);

// -L'/L(s, f) = sum over prime powers p^k <= N of Lambda_f(p^k) p^{-ks},
// Re(s) > 1; tail bounded by the declared size times the Lambda majorant tail.
EvalResult log_deriv(const MultiplicativeSpec& spec, Cplx s, std::uint64_t N,
                     const FactorTable& table);

// One flagged dip of |L(1+it)|: the grid ordinate, the multiplicity slope fit
// log|L(sigma+i gamma)| vs log(sigma-1), and its sample profile.
struct ZeroCandidate {
  double ordinate = 0.0;
  double dip_value = 0.0;        // |L(1 + i gamma)| at the grid minimum
  double slope = 0.0;            // fitted log-log slope
  int multiplicity = 0;          // rounded slope
  bool ambiguous = false;        // slope further than 0.25 from an integer
  bool accepted = false;         // counted into the ordinate multiset
  std::array<std::pair<double, double>, 3> profile;  // (sigma-1, |L(sigma+i gamma)|)
};

struct ZeroReport {
  OrdinateMultiset ordinates;
  double T_scanned = 0.0;
  double grid_step = 0.0;
  double threshold = 0.0;
  std::vector<ZeroCandidate> candidates;
  std::vector<double> grid_values;  // |L(1 + i t_j)| per grid point (diagnostic)

  std::string to_json() const;
};

// Scans t in [-T, T] on a uniform grid for local minima of |L(1+it, f)|
// below the threshold, then estimates each multiplicity from the rate at
// which |L(sigma + i gamma)| vanishes as sigma -> 1+.  Candidates whose
// slope is not near an integer (or rounds to < 1) are recorded but not
// added to the returned multiset.
ZeroReport zero_scan(const MultiplicativeSpec& spec, double T, double grid_step, std::uint64_t X,
                     const FactorTable& table, double threshold = 0.05);

// Mean-value comparison for Dirichlet polynomials A(s) = sum a_n n^{-s},
// B(s) = sum b_n n^{-s} with |a_n| <= b_n:
//   int_{-T}^{T} |A(sigma+it)|^2 dt  <=  3 int_{-T}^{T} |B(sigma+it)|^2 dt.
struct MontgomeryResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
MontgomeryResult montgomery_check(const std::vector<Cplx>& a, const std::vector<double>& b,
                                  double sigma, double T);

// Both sides of the Plancherel identity for S(t, Lambda_{f_Gamma}):
//   lhs = int_1^X |S(t)|^2 t^{-3-2/log x} dt            (exact step integral)
//   rhs = (1/2pi) int_{-T}^{T} |P(c+it)|^2/(c^2+t^2) dt (quadrature)
// with c = 1 + 1/log x and P the Dirichlet series of Lambda_{f_Gamma}
// truncated at the factor-table limit.
struct ParsevalResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs; 0 when both sides vanish
  double c = 0.0;
};
ParsevalResult parseval_ratio(const MultiplicativeSpec& spec, const OrdinateMultiset& gammas,
                              std::uint64_t x, double T, std::uint64_t X,
                              const FactorTable& table);

// Sorted (p^k, Lambda_{f_Gamma}(p^k)) pairs for p^k <= x.
std::vector<std::pair<std::uint64_t, Cplx>> lambda_prime_powers(const MultiplicativeSpec& spec,
                                                                const OrdinateMultiset& gammas,
                                                                std::uint64_t x,
                                                                const FactorTable& table);

}  // namespace multsum
