#include <doctest.h>

#include <multsum/catalog.hpp>
#include <multsum/mult_spec.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

using multsum::Cplx;

TEST_CASE("basic catalog entries") {
  const auto mu = multsum::catalog("moebius");
  CHECK(mu.name == "moebius");
  CHECK(mu.declared_size == doctest::Approx(1.0));
  CHECK(std::abs(mu(3, 1) - Cplx(-1.0)) <= 1e-15);
  CHECK(std::abs(mu(3, 2)) <= 1e-15);
  CHECK(std::abs(mu(2, 0) - Cplx(1.0)) <= 1e-15);

  const auto liouville = multsum::catalog("liouville");
  CHECK(std::abs(liouville(2, 5) - Cplx(-1.0)) <= 1e-15);
  CHECK(std::abs(liouville(2, 6) - Cplx(1.0)) <= 1e-15);

  const auto one = multsum::catalog("one");
  CHECK(std::abs(one(97, 4) - Cplx(1.0)) <= 1e-15);
}

TEST_CASE("divisor-type entries") {
  const auto tau2 = multsum::catalog("tau_k:2");
  CHECK(tau2.declared_size == doctest::Approx(2.0));
  CHECK(std::abs(tau2(5, 3) - Cplx(4.0)) <= 1e-15);

  const auto tau3 = multsum::catalog("tau_k:3");
  CHECK(std::abs(tau3(7, 2) - Cplx(6.0)) <= 1e-15);

  const auto tau1 = multsum::catalog("tau_k:1");
  CHECK(std::abs(tau1(7, 5) - Cplx(1.0)) <= 1e-15);

  const double kappa = std::sqrt(2.0);
  const auto neg = multsum::catalog("tau_minus_kappa:1.4142135623730951");
  CHECK(neg.declared_size == doctest::Approx(kappa));
  CHECK(std::abs(neg(11, 1) - Cplx(-kappa)) <= 1e-14);
  CHECK(std::abs(neg(11, 2) - Cplx(kappa * (kappa - 1.0) / 2.0)) <= 1e-14);
  CHECK(neg(11, 2).real() == doctest::Approx(0.2928932188134524).epsilon(1e-12));
}

TEST_CASE("quadratic character entries") {
  const auto chi = multsum::catalog("legendre_chi:5");
  // Quadratic residues mod 5 are {1, 4}.
  CHECK(std::abs(chi(2, 1) - Cplx(-1.0)) <= 1e-15);
  CHECK(std::abs(chi(3, 1) - Cplx(-1.0)) <= 1e-15);
  CHECK(std::abs(chi(11, 1) - Cplx(1.0)) <= 1e-15);
  CHECK(std::abs(chi(19, 1) - Cplx(1.0)) <= 1e-15);
  CHECK(std::abs(chi(5, 1)) <= 1e-15);
  CHECK(std::abs(chi(5, 3)) <= 1e-15);
  // Complete multiplicativity on prime powers.
  CHECK(std::abs(chi(2, 2) - Cplx(1.0)) <= 1e-15);
  CHECK(std::abs(chi(2, 3) - Cplx(-1.0)) <= 1e-15);
}

TEST_CASE("twist and product combinators") {
  const auto twisted = multsum::catalog("twist:moebius:1.0");
  const double lp = std::log(7.0);
  CHECK(std::abs(twisted(7, 1) + std::exp(Cplx(0.0, lp))) <= 1e-14);
  CHECK(twisted.declared_size == doctest::Approx(1.0));

  const auto prod = multsum::catalog("product:moebius:twist:moebius:1.0");
  CHECK(prod.declared_size == doctest::Approx(2.0));
  // At a prime: mu(p) + mu(p) p^i = -1 - p^i.
  const Cplx expect = Cplx(-1.0) - std::exp(Cplx(0.0, lp));
  CHECK(std::abs(prod(7, 1) - expect) <= 1e-14);

  // Nested twists compose phases.
  const auto nested = multsum::catalog("twist:twist:liouville:0.25:0.5");
  const double l2 = std::log(2.0);
  const Cplx phase = std::exp(Cplx(0.0, 0.75 * l2));
  CHECK(std::abs(nested(2, 1) + phase) <= 1e-14);
}

TEST_CASE("malformed names are rejected") {
  CHECK_THROWS_AS(multsum::catalog("unknown"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog(""), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("tau_k"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("tau_k:0"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("tau_k:2.5"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("tau_minus_kappa:-1.0"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("tau_minus_kappa:abc"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("legendre_chi:9"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("legendre_chi:2"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("twist:moebius"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("product:moebius"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("moebius:extra"), std::invalid_argument);
  CHECK_THROWS_AS(multsum::catalog("moebius:1.0"), std::invalid_argument);
}

TEST_CASE("catalog listing is nonempty and descriptive") {
  const auto& entries = multsum::catalog_entries();
  CHECK(entries.size() >= 6);
  bool has_moebius = false;
  for (const auto& e : entries) {
    CHECK_FALSE(e.pattern.empty());
    CHECK_FALSE(e.description.empty());
    if (e.pattern.find("moebius") != std::string::npos) has_moebius = true;
  }
  CHECK(has_moebius);
}
