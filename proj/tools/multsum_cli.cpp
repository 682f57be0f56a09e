#include <CLI11.hpp>

#include <multsum/catalog.hpp>
#include <multsum/experiment.hpp>
#include <multsum/factor_table.hpp>
#include <multsum/lseries.hpp>
#include <multsum/mult_spec.hpp>
#include <multsum/numfmt.hpp>
#include <multsum/parallel.hpp>
#include <multsum/sieve_weights.hpp>
#include <multsum/sums.hpp>
#include <multsum/value_table.hpp>

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using multsum::Cplx;

// 0 = success / all checks pass, 2 = checks ran but failed, 1 = hard error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitError = 1;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + out_path + "'");
}

multsum::OrdinateMultiset to_multiset(const std::vector<double>& ordinates) {
  multsum::OrdinateMultiset gamma;
  for (double g : ordinates) gamma.add(g);
  return gamma;
}

multsum::ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return multsum::ReportFormat::csv;
  if (name == "json") return multsum::ReportFormat::json;
  if (name == "svg") return multsum::ReportFormat::svg;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json, or svg)");
}

struct CliOptions {
  std::uint64_t limit = 10'000'000;
  int threads = 1;
  std::string out_path;
  std::string format = "csv";
};

int run_eval(const CliOptions& global, const std::string& name, double sigma, double t,
             std::uint64_t N, const std::vector<double>& gammas, bool log_deriv_mode) {
  const multsum::FactorTable table(global.limit);
  const auto spec = multsum::catalog(name);
  const std::uint64_t terms = N == 0 ? global.limit : N;
  std::ostringstream text;
  if (log_deriv_mode) {
    const auto res = multsum::log_deriv(spec, Cplx(sigma, t), terms, table);
    text << "quantity,value_re,value_im,truncation,tail_bound\n";
    text << "neg_log_deriv," << multsum::fmt_double(res.value.real()) << ","
         << multsum::fmt_double(res.value.imag()) << "," << res.truncation << ","
         << multsum::fmt_double(res.tail_bound) << "\n";
  } else if (sigma > 1.0) {
    const auto res = multsum::evaluate_L(spec, Cplx(sigma, t), terms, table);
    text << "quantity,value_re,value_im,truncation,tail_bound\n";
    text << "L_value," << multsum::fmt_double(res.value.real()) << ","
         << multsum::fmt_double(res.value.imag()) << "," << res.truncation << ","
         << multsum::fmt_double(res.tail_bound) << "\n";
  } else if (sigma == 1.0) {
    const auto res = multsum::evaluate_L_on_line(spec, to_multiset(gammas), t, terms, table);
    text << "quantity,value_re,value_im,truncation,tail_estimate\n";
    text << "L_boundary," << multsum::fmt_double(res.value.real()) << ","
         << multsum::fmt_double(res.value.imag()) << "," << res.truncation << ","
         << multsum::fmt_double(res.tail_bound) << "\n";
  } else {
    throw std::invalid_argument("eval needs sigma >= 1");
  }
  write_output(text.str(), global.out_path);
  return kExitPass;
}

int run_lambda(const CliOptions& global, const std::string& name, std::uint64_t x,
               const std::vector<double>& gammas) {
  const multsum::FactorTable table(global.limit);
  const auto spec = multsum::catalog(name);
  const auto lam = multsum::lambda_prime_powers(spec, to_multiset(gammas), x, table);
  std::ostringstream text;
  text << "prime_power,lambda_re,lambda_im\n";
  for (const auto& [q, v] : lam) {
    text << q << "," << multsum::fmt_double(v.real()) << "," << multsum::fmt_double(v.imag())
         << "\n";
  }
  write_output(text.str(), global.out_path);
  return kExitPass;
}

int run_zeros(const CliOptions& global, const std::string& name, double T, double step,
              std::uint64_t X, double threshold) {
  const multsum::FactorTable table(global.limit);
  const auto spec = multsum::catalog(name);
  const std::uint64_t x_top = X == 0 ? global.limit : X;
  const auto report = multsum::zero_scan(spec, T, step, x_top, table, threshold);
  write_output(report.to_json(), global.out_path);
  return kExitPass;
}

int run_verify(const CliOptions& global, const std::string& name, double D, std::uint64_t x) {
  const multsum::FactorTable table(global.limit);
  const auto spec = multsum::catalog(name);
  const auto rep = multsum::verify_class(spec, D, x, table);
  std::ostringstream text;
  text << "check,value\n";
  text << "size_bound," << multsum::fmt_double(rep.size_bound) << "\n";
  text << "lambda_ratio," << multsum::fmt_double(rep.lambda_ratio) << "\n";
  text << "f_ratio," << multsum::fmt_double(rep.f_ratio) << "\n";
  text << "inverse_ratio," << multsum::fmt_double(rep.inverse_ratio) << "\n";
  text << "worst_prime_power," << rep.worst_lambda_prime << "^" << rep.worst_lambda_exponent
       << "\n";
  text << "pass," << (rep.pass ? "true" : "false") << "\n";
  write_output(text.str(), global.out_path);
  return rep.pass ? kExitPass : kExitCheckFailed;
}

int run_sieve_demo(const CliOptions& global, double z, double u, std::uint64_t N) {
  const multsum::FactorTable table(std::max<std::uint64_t>(global.limit, 1000));
  std::vector<std::uint32_t> primes;
  for (std::uint64_t p : table.primes()) {
    if (static_cast<double>(p) > z) break;
    primes.push_back(static_cast<std::uint32_t>(p));
  }
  const auto sys = multsum::build_weights(z, u, primes);
  const auto sandwich = multsum::sandwich_check(sys, N, table);
  const auto moment = multsum::moment_compare(sys, multsum::catalog("one"), 0);
  std::ostringstream text;
  text << "quantity,value\n";
  text << "z," << multsum::fmt_double(z) << "\n";
  text << "u," << multsum::fmt_double(u) << "\n";
  text << "level," << multsum::fmt_double(sys.level()) << "\n";
  text << "support_size," << sys.support.size() << "\n";
  text << "sandwich_checked," << sandwich.checked << "\n";
  text << "sandwich_violations," << sandwich.violations << "\n";
  text << "moment_plus," << multsum::fmt_double(moment.sieved_plus) << "\n";
  text << "moment_minus," << multsum::fmt_double(moment.sieved_minus) << "\n";
  text << "moment_mobius," << multsum::fmt_double(moment.mobius) << "\n";
  text << "moment_scale," << multsum::fmt_double(moment.scale) << "\n";
  write_output(text.str(), global.out_path);
  return sandwich.violations == 0 ? kExitPass : kExitCheckFailed;
}

int run_remark(const CliOptions& global, const std::vector<double>& gammas,
               const std::vector<std::uint64_t>& xs) {
  const multsum::FactorTable table(global.limit);
  std::ostringstream text;
  text << "gamma,x,lhs_re,lhs_im,main_re,main_im,err_scale\n";
  double fitted = 0.0;
  for (double g : gammas) {
    for (std::uint64_t x : xs) {
      const auto res = multsum::twisted_prime_sum_check(g, x, table);
      fitted = std::max(fitted, res.err_scale);
      text << multsum::fmt_double(g) << "," << x << "," << multsum::fmt_double(res.lhs.real())
           << "," << multsum::fmt_double(res.lhs.imag()) << ","
           << multsum::fmt_double(res.main.real()) << "," << multsum::fmt_double(res.main.imag())
           << "," << multsum::fmt_double(res.err_scale) << "\n";
    }
  }
  text << "# fitted_err_scale," << multsum::fmt_double(fitted) << "\n";
  write_output(text.str(), global.out_path);
  return kExitPass;
}

int run_experiment_cmd(const CliOptions& global, const std::string& config_path,
                       const std::string& function, int D, double A, double T,
                       const std::vector<std::uint64_t>& x_grid, const std::vector<double>& gammas,
                       bool declared, bool remark_mode) {
  multsum::ExperimentConfig cfg;
  cfg.format = parse_format(global.format);
  cfg.output_path = global.out_path;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot read config '" + config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = multsum::parse_config_text(buf.str(), cfg);
  }
  if (!function.empty()) cfg.function_name = function;
  if (cfg.function_name.empty()) throw std::invalid_argument("experiment needs a function name");
  if (D > 0) cfg.D = D;
  if (A > 0.0) cfg.A = A;
  if (T > 0.0) cfg.T = T;
  if (!x_grid.empty()) cfg.x_grid = x_grid;
  if (declared || !gammas.empty()) {
    cfg.gamma_mode = multsum::GammaMode::declared;
    cfg.declared_gamma = to_multiset(gammas);
  }
  if (remark_mode) cfg.remark_mode = true;
  if (!global.out_path.empty()) cfg.output_path = global.out_path;

  const multsum::FactorTable table(std::max(global.limit, cfg.x_grid.back()));
  const auto report = multsum::run_experiment(cfg, table);
  const std::string text = multsum::emit_report(report, cfg.format, cfg.output_path);
  if (cfg.output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::cerr << "report written to " << cfg.output_path << "\n";
  }
  return report.all_passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial sums of multiplicative functions: evaluation, zeros, sieves"};
  app.require_subcommand(1);

  CliOptions global;
  app.add_option("--limit", global.limit, "factor table limit (default 10^7)");
  app.add_option("--threads", global.threads, "worker thread count (results independent of it)");
  app.add_option("--out", global.out_path, "output file (default stdout)");
  app.add_option("--format", global.format, "report format: csv, json, svg");

  std::string name;
  double sigma = 2.0, t = 0.0;
  std::uint64_t N = 0;
  std::vector<double> gammas;
  bool log_deriv_mode = false;
  auto* eval = app.add_subcommand("eval", "evaluate L(s, f) or its negative log derivative")->fallthrough();
  eval->add_option("function", name, "catalog name, e.g. moebius or tau_k:2")->required();
  eval->add_option("--sigma", sigma, "Re(s); sigma > 1 for series, sigma = 1 for boundary");
  eval->add_option("--t", t, "Im(s)");
  eval->add_option("--N", N, "truncation (default: table limit)");
  eval->add_option("--gamma", gammas, "twist ordinates for boundary evaluation");
  eval->add_flag("--log-deriv", log_deriv_mode, "compute -L'/L instead of L");

  std::uint64_t lam_x = 1000;
  auto* lambda = app.add_subcommand("lambda", "tabulate Lambda_f on prime powers")->fallthrough();
  lambda->add_option("function", name, "catalog name")->required();
  lambda->add_option("--x", lam_x, "list prime powers q <= x");
  lambda->add_option("--gamma", gammas, "twist ordinates");

  double T = 5.0, step = 0.01, threshold = 0.05;
  std::uint64_t X = 0;
  auto* zeros = app.add_subcommand("zeros", "scan |L(1+it)| for zeros and their multiplicities")->fallthrough();
  zeros->add_option("function", name, "catalog name")->required();
  zeros->add_option("--T", T, "scan t in [-T, T]");
  zeros->add_option("--step", step, "grid step (<= 0.05)");
  zeros->add_option("--X", X, "series truncation (default: table limit)");
  zeros->add_option("--threshold", threshold, "dip threshold on |L|");

  double D = 1.0;
  std::uint64_t verify_x = 100000;
  auto* verify = app.add_subcommand("verify", "check the divisor-bound class membership")->fallthrough();
  verify->add_option("function", name, "catalog name")->required();
  verify->add_option("--D", D, "claimed size bound");
  verify->add_option("--x", verify_x, "dense check range");

  double z = 10.0, u = 3.0;
  std::uint64_t demo_N = 1'000'000;
  auto* sieve_demo = app.add_subcommand("sieve-demo", "build beta-sieve weights and validate them")->fallthrough();
  sieve_demo->add_option("--z", z, "sift primes below z");
  sieve_demo->add_option("--u", u, "level parameter: weights supported below z^u");
  sieve_demo->add_option("--N", demo_N, "sandwich check range");

  std::vector<double> remark_gammas = {0.0, 0.5, 1.0, 2.0, 5.0};
  std::vector<std::uint64_t> remark_xs = {10000, 100000, 1000000};
  auto* remark = app.add_subcommand("remark", "twisted prime sums against the rotated main term")->fallthrough();
  remark->add_option("--gamma", remark_gammas, "ordinates gamma");
  remark->add_option("--x", remark_xs, "evaluation points");

  std::string config_path, exp_function;
  int exp_D = 0;
  double exp_A = 0.0, exp_T = 0.0;
  std::vector<std::uint64_t> exp_grid;
  std::vector<double> exp_gammas;
  bool exp_declared = false, exp_remark_mode = false;
  auto* experiment =
      app.add_subcommand("experiment", "full pipeline: class check, zeros, discrepancy, envelope")->fallthrough();
  experiment->add_option("--config", config_path, "flat key = value config file");
  experiment->add_option("--function", exp_function, "catalog name");
  experiment->add_option("--D", exp_D, "divisor-bound class parameter");
  experiment->add_option("--A", exp_A, "envelope exponent parameter (A > D + 1 unless remark mode)");
  experiment->add_option("--T", exp_T, "zero-scan window");
  experiment->add_option("--x-grid", exp_grid, "ascending evaluation grid");
  experiment->add_option("--gamma", exp_gammas, "declared ordinates (switches off scanning)");
  experiment->add_flag("--declared", exp_declared, "use declared ordinates (possibly empty)");
  experiment->add_flag("--remark-mode", exp_remark_mode, "permit A <= D + 1");

  CLI11_PARSE(app, argc, argv);

  try {
    multsum::set_worker_threads(global.threads);
    if (eval->parsed()) return run_eval(global, name, sigma, t, N, gammas, log_deriv_mode);
    if (lambda->parsed()) return run_lambda(global, name, lam_x, gammas);
    if (zeros->parsed()) return run_zeros(global, name, T, step, X, threshold);
    if (verify->parsed()) return run_verify(global, name, D, verify_x);
    if (sieve_demo->parsed()) return run_sieve_demo(global, z, u, demo_N);
    if (remark->parsed()) return run_remark(global, remark_gammas, remark_xs);
    if (experiment->parsed()) {
      return run_experiment_cmd(global, config_path, exp_function, exp_D, exp_A, exp_T, exp_grid,
                                exp_gammas, exp_declared, exp_remark_mode);
    }
    std::cerr << "no subcommand selected\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
