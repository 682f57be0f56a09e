#include <doctest.h>

#include <multsum/catalog.hpp>
#include <multsum/factor_table.hpp>
#include <multsum/mult_spec.hpp>
#include <multsum/value_table.hpp>

#include <cmath>
#include <complex>
#include <cstdint>

#include "oracle.hpp"

using multsum::Cplx;

TEST_CASE("dense evaluation matches trial-division oracle") {
  multsum::FactorTable table(10000);
  const auto mu = multsum::catalog("moebius");
  const auto vt = multsum::eval_range(mu, 10000, table);
  const auto brute = oracle::moebius_brute(10000);
  REQUIRE(vt.limit == 10000);
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    CHECK(vt.value(n).real() == doctest::Approx(static_cast<double>(brute[n])).epsilon(1e-12));
    CHECK(vt.value(n).imag() == 0.0);
  }
  const auto chi = multsum::catalog("legendre_chi:5");
  const auto chi_vt = multsum::eval_range(chi, 2000, table);
  const auto chi_brute = oracle::mult_values_brute(
      2000, [&](std::uint64_t p, std::uint32_t a) { return chi(p, a); });
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(std::abs(chi_vt.value(n) - chi_brute[n]) <= 1e-12);
  }
}

TEST_CASE("prefix sums accumulate in index order") {
  multsum::FactorTable table(100);
  const auto mu = multsum::catalog("moebius");
  const auto vt = multsum::eval_range(mu, 100, table);
  CHECK(vt.sum(10).real() == doctest::Approx(-1.0));  // Mertens function at 10
  CHECK(vt.sum(1).real() == doctest::Approx(1.0));
  const auto brute = oracle::moebius_brute(100);
  double running = 0.0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    running += static_cast<double>(brute[n]);
    CHECK(vt.sum(n).real() == doctest::Approx(running).epsilon(1e-12));
  }
}

TEST_CASE("table convolution matches the brute-force Dirichlet product") {
  multsum::FactorTable table(3000);
  const auto mu = multsum::catalog("moebius");
  const auto one = multsum::catalog("one");
  const auto fmu = multsum::eval_range(mu, 3000, table);
  const auto fone = multsum::eval_range(one, 3000, table);
  const auto conv = multsum::dirichlet_convolve(fmu, fone);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const double expect = (n == 1) ? 1.0 : 0.0;
    CHECK(std::abs(conv.value(n) - Cplx(expect)) <= 1e-12);
  }

  const auto tau2 = multsum::catalog("tau_k:2");
  const auto direct_tau = multsum::eval_range(tau2, 3000, table);
  const auto conv_tau = multsum::dirichlet_convolve(fone, fone);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(std::abs(conv_tau.value(n) - direct_tau.value(n)) <= 1e-12);
  }
}

TEST_CASE("twisted evaluation equals convolution with the divisor kernel") {
  multsum::FactorTable table(2000);
  const auto liouville = multsum::catalog("liouville");
  multsum::OrdinateMultiset gamma({0.0});
  const auto vt = multsum::eval_twisted_range(liouville, gamma, 2000, table);
  const auto f_dense = oracle::mult_values_brute(
      2000, [&](std::uint64_t p, std::uint32_t a) { return liouville(p, a); });
  std::vector<Cplx> ones(2001, Cplx(1.0));
  ones[0] = 0.0;
  const auto expect = oracle::convolve_brute(f_dense, ones);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(std::abs(vt.value(n) - expect[n]) <= 1e-10);
  }
}

TEST_CASE("tables built from explicit values") {
  std::vector<Cplx> vals = {Cplx(0.0), Cplx(1.0), Cplx(2.0, 1.0), Cplx(-3.0)};
  const auto vt = multsum::ValueTable::from_values(vals);
  CHECK(vt.limit == 3);
  CHECK(vt.value(2) == Cplx(2.0, 1.0));
  CHECK(vt.sum(3) == Cplx(0.0, 1.0));
  CHECK(vt.values.size() == 4);
  CHECK(vt.prefix.size() == 4);
}
