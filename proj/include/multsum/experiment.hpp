#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multsum/lseries.hpp"
#include "multsum/mult_spec.hpp"
#include "multsum/sums.hpp"

namespace multsum {

class FactorTable;

enum class GammaMode { declared, scanned };
enum class ReportFormat { csv, json, svg };

struct ExperimentConfig {
  std::string function_name;
  int D = 1;
  double A = 3.0;
  std::vector<std::uint64_t> x_grid = {1000, 10000, 100000, 1000000, 10000000};
  double T = 50.0;
  GammaMode gamma_mode = GammaMode::scanned;
  OrdinateMultiset declared_gamma;
  // Remark mode permits A <= D + 1 (the regime where the main bound fails and
  // the discrepancy is expected not to decay).
  bool remark_mode = false;
  std::string output_path;
  ReportFormat format = ReportFormat::csv;
  // Scan parameters (used when gamma_mode == scanned).
  double scan_step = 0.01;
  double scan_threshold = 0.05;

  void validate() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  OrdinateMultiset gamma_used;
  ClassReport class_report;
  SumGrid grid;                   // discrepancy per x
  std::vector<double> envelope;   // main-bound envelope per x
  double fitted_constant = 0.0;   // max |discrepancy| / envelope
  // (name, value) pairs; value is "pass"/"fail" or a fitted number.
  std::vector<std::pair<std::string, std::string>> verdicts;

  bool all_passed() const;
  std::string to_csv() const;
  std::string to_json() const;
  std::string to_svg() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg, const FactorTable& table);

// Writes the report in the configured format to config.output_path (or the
// given override); returns the emitted text.
std::string emit_report(const ExperimentReport& report, ReportFormat format,
                        const std::string& path);

// lhs = sum_{p<=x} p^{i gamma} log p; main = x^{1+i gamma}/(1+i gamma);
// err_scale = |lhs - main| log x / x, expected bounded over desk-scale grids.
struct TwistedPrimeSumCheck {
  Cplx lhs;
  Cplx main;
  double err_scale = 0.0;
};
TwistedPrimeSumCheck twisted_prime_sum_check(double gamma, std::uint64_t x,
                                             const FactorTable& table);

// Parses a flat "key = value" config file ("#" comments allowed) over the
// given defaults.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig defaults);

}  // namespace multsum
