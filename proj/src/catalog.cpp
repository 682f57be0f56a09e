#include "multsum/catalog.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace multsum {

namespace {

std::vector<std::string> tokenize(const std::string& name) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t sep = name.find(':', start);
    if (sep == std::string::npos) {
      out.push_back(name.substr(start));
      break;
    }
    out.push_back(name.substr(start, sep - start));
    start = sep + 1;
  }
  return out;
}

double parse_real(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog: malformed " + what + " parameter '" + tok + "'");
  }
}

long parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog: malformed " + what + " parameter '" + tok + "'");
  }
}

bool is_small_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

MultiplicativeSpec make_moebius() {
  MultiplicativeSpec s;
  s.name = "moebius";
  s.declared_size = 1.0;
  s.at_prime_power = [](std::uint64_t, std::uint32_t a) { return a == 1 ? Cplx(-1.0) : Cplx(0.0); };
  return s;
}

MultiplicativeSpec make_liouville() {
  MultiplicativeSpec s;
  s.name = "liouville";
  s.declared_size = 1.0;
  s.at_prime_power = [](std::uint64_t, std::uint32_t a) {
    return a % 2 == 0 ? Cplx(1.0) : Cplx(-1.0);
  };
  return s;
}

MultiplicativeSpec make_tau_k(long k) {
  if (k < 1) throw std::invalid_argument("catalog: tau_k needs K >= 1");
  MultiplicativeSpec s;
  s.name = "tau_k:" + std::to_string(k);
  s.declared_size = static_cast<double>(k);
  s.at_prime_power = [k](std::uint64_t, std::uint32_t a) {
    return Cplx(tau_d_prime_power(static_cast<double>(k), a));
  };
  return s;
}

MultiplicativeSpec make_tau_minus_kappa(double kappa, const std::string& token) {
  if (!(kappa > 0.0)) throw std::invalid_argument("catalog: tau_minus_kappa needs kappa > 0");
  MultiplicativeSpec s;
  s.name = "tau_minus_kappa:" + token;
  s.declared_size = kappa;
  // Coefficients of zeta(s)^{-kappa}: c_a = prod_{j<=a} (-kappa + j - 1)/j.
  s.at_prime_power = [kappa](std::uint64_t, std::uint32_t a) {
    return Cplx(tau_d_prime_power(-kappa, a));
  };
  return s;
}

MultiplicativeSpec make_legendre(long q) {
  if (q < 3 || q % 2 == 0 || !is_small_prime(static_cast<std::uint64_t>(q))) {
    throw std::invalid_argument("catalog: legendre_chi needs an odd prime modulus");
  }
  std::set<std::uint64_t> squares;
  for (long r = 1; r < q; ++r) squares.insert(static_cast<std::uint64_t>(r) * r % q);
  MultiplicativeSpec s;
  s.name = "legendre_chi:" + std::to_string(q);
  s.declared_size = 1.0;
  s.at_prime_power = [q, squares](std::uint64_t p, std::uint32_t a) -> Cplx {
    const std::uint64_t residue = p % static_cast<std::uint64_t>(q);
    if (residue == 0) return 0.0;
    const double chi = squares.count(residue) ? 1.0 : -1.0;
    return a % 2 == 0 ? 1.0 : chi;  // chi(p)^a with chi(p) = +-1
  };
  return s;
}

MultiplicativeSpec parse_spec(const std::vector<std::string>& toks, std::size_t& pos) {
  if (pos >= toks.size()) throw std::invalid_argument("catalog: truncated name");
  const std::string head = toks[pos++];
  if (head == "moebius") return make_moebius();
  if (head == "liouville") return make_liouville();
  if (head == "one") return make_tau_k(1);
  if (head == "tau_k") {
    if (pos >= toks.size()) throw std::invalid_argument("catalog: tau_k needs a parameter");
    return make_tau_k(parse_int(toks[pos++], "tau_k"));
  }
  if (head == "tau_minus_kappa") {
    if (pos >= toks.size()) throw std::invalid_argument("catalog: tau_minus_kappa needs a parameter");
    const std::string tok = toks[pos++];
    return make_tau_minus_kappa(parse_real(tok, "tau_minus_kappa"), tok);
  }
  if (head == "legendre_chi") {
    if (pos >= toks.size()) throw std::invalid_argument("catalog: legendre_chi needs a modulus");
    return make_legendre(parse_int(toks[pos++], "legendre_chi"));
  }
  if (head == "twist") {
    MultiplicativeSpec inner = parse_spec(toks, pos);
    if (pos >= toks.size()) throw std::invalid_argument("catalog: twist needs an ordinate");
    const std::string tok = toks[pos++];
    MultiplicativeSpec s = twist(inner, parse_real(tok, "twist"));
    s.name = "twist:" + inner.name + ":" + tok;
    return s;
  }
  if (head == "product") {
    MultiplicativeSpec a = parse_spec(toks, pos);
    MultiplicativeSpec b = parse_spec(toks, pos);
    MultiplicativeSpec s = convolve_specs(a, b, "product:" + a.name + ":" + b.name);
    return s;
  }
  throw std::invalid_argument("catalog: unknown function '" + head + "'");
}

}  // namespace

MultiplicativeSpec catalog(const std::string& name) {
  const std::vector<std::string> toks = tokenize(name);
  std::size_t pos = 0;
  MultiplicativeSpec s = parse_spec(toks, pos);
  if (pos != toks.size()) {
    throw std::invalid_argument("catalog: trailing tokens in '" + name + "'");
  }
  return s;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"moebius", "Moebius function mu"},
      {"liouville", "Liouville function lambda"},
      {"one", "constant 1 (tau_1)"},
      {"tau_k:<K>", "K-fold divisor function"},
      {"tau_minus_kappa:<kappa>", "coefficients of zeta^{-kappa}"},
      {"legendre_chi:<q>", "Legendre symbol mod odd prime q, completely multiplicative"},
      {"twist:<spec>:<gamma>", "f(n) n^{i gamma}"},
      {"product:<spec>:<spec>", "Dirichlet convolution of two catalog functions"},
  };
  return entries;
}

}  // namespace multsum
