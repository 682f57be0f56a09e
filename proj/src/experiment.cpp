#include "multsum/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "multsum/catalog.hpp"
#include "multsum/factor_table.hpp"
#include "multsum/numfmt.hpp"

namespace multsum {

void ExperimentConfig::validate() const {
  if (function_name.empty()) throw std::invalid_argument("config: function_name required");
  if (D < 1) throw std::invalid_argument("config: D must be >= 1");
  if (x_grid.empty()) throw std::invalid_argument("config: x_grid must be nonempty");
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    if (x_grid[i] <= x_grid[i - 1]) throw std::invalid_argument("config: x_grid must be ascending");
  }
  if (x_grid.front() < 16) throw std::invalid_argument("config: x_grid points must be >= 16");
  if (!remark_mode && !(A > D + 1)) {
    throw std::invalid_argument("config: A must exceed D + 1 unless remark_mode is set");
  }
  if (T <= 0.0) throw std::invalid_argument("config: T must be positive");
}

bool ExperimentReport::all_passed() const {
  for (const auto& [name, value] : verdicts) {
    if (value == "fail") return false;
  }
  return true;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const FactorTable& table) {
  cfg.validate();
  const std::uint64_t x_max = cfg.x_grid.back();
  if (x_max > table.limit()) throw std::out_of_range("run_experiment beyond table limit");

  ExperimentReport report;
  report.config = cfg;
  const MultiplicativeSpec spec = catalog(cfg.function_name);

  const std::uint64_t class_x = std::min<std::uint64_t>(100000, table.limit());
  report.class_report = verify_class(spec, static_cast<double>(cfg.D), class_x, table);

  if (cfg.gamma_mode == GammaMode::declared) {
    report.gamma_used = cfg.declared_gamma;
  } else {
    const ZeroReport zeros =
        zero_scan(spec, cfg.T, cfg.scan_step, x_max, table, cfg.scan_threshold);
    report.gamma_used = zeros.ordinates;
  }

  report.grid = discrepancy_grid(spec, report.gamma_used, cfg.x_grid, table);

  const int m = report.gamma_used.total_multiplicity();
  const double decay_exp = std::min(1.0, cfg.A - cfg.D - 1.0) / 2.0;
  report.envelope.reserve(cfg.x_grid.size());
  for (std::uint64_t x : cfg.x_grid) {
    const double xd = static_cast<double>(x);
    const double lx = std::log(xd);
    const double llx = std::log(lx);
    const double main_term = xd * std::pow(llx, cfg.D + m) / std::pow(lx, decay_exp);
    const double scan_term = xd * std::pow(std::log(cfg.T), cfg.D + m) / std::sqrt(cfg.T);
    report.envelope.push_back(main_term + scan_term);
  }

  double fitted = 0.0;
  for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) {
    fitted = std::max(fitted, std::abs(report.grid.values[i]) / report.envelope[i]);
  }
  report.fitted_constant = fitted;

  // Verdicts, in a fixed order for reproducible reports.
  report.verdicts.emplace_back("class_check", report.class_report.pass ? "pass" : "fail");
  report.verdicts.emplace_back("zero_count_le_D", m <= cfg.D ? "pass" : "fail");
  bool monotone = true;
  for (std::size_t i = 1; i < cfg.x_grid.size(); ++i) {
    const double prev = std::abs(report.grid.values[i - 1]) / static_cast<double>(cfg.x_grid[i - 1]);
    const double cur = std::abs(report.grid.values[i]) / static_cast<double>(cfg.x_grid[i]);
    if (cur > prev * (1.0 + 1e-12)) monotone = false;
  }
  report.verdicts.emplace_back("disc_over_x_monotone", monotone ? "pass" : "fail");
  {
    const double first =
        std::abs(report.grid.values.front()) / static_cast<double>(cfg.x_grid.front());
    const double last =
        std::abs(report.grid.values.back()) / static_cast<double>(cfg.x_grid.back());
    report.verdicts.emplace_back("trend_halved", last <= 0.5 * first ? "pass" : "fail");
  }
  report.verdicts.emplace_back("envelope_constant", fmt_double(fitted));
  return report;
}

std::string ExperimentReport::to_csv() const {
  std::string out = "x,disc_re,disc_im,disc_abs,envelope\n";
  for (std::size_t i = 0; i < grid.x_points.size(); ++i) {
    out += std::to_string(grid.x_points[i]) + "," + fmt_double(grid.values[i].real()) + "," +
           fmt_double(grid.values[i].imag()) + "," + fmt_double(std::abs(grid.values[i])) + "," +
           fmt_double(envelope[i]) + "\n";
  }
  for (const auto& [name, value] : verdicts) {
    out += "# verdict," + name + "," + value + "\n";
  }
  return out;
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string ExperimentReport::to_json() const {
  std::string out = "{\"config\":{";
  out += "\"function\":\"" + json_escape(config.function_name) + "\"";
  out += ",\"D\":" + std::to_string(config.D);
  out += ",\"A\":" + fmt_double(config.A);
  out += ",\"T\":" + fmt_double(config.T);
  out += ",\"gamma_mode\":\"" +
         std::string(config.gamma_mode == GammaMode::declared ? "declared" : "scanned") + "\"";
  out += ",\"remark_mode\":" + std::string(config.remark_mode ? "true" : "false");
  out += ",\"fitted_constant\":" + fmt_double(fitted_constant);
  out += "},\"gamma\":[";
  bool first = true;
  for (const auto& e : gamma_used.entries()) {
    if (!first) out += ",";
    first = false;
    out += "{\"ordinate\":" + fmt_double(e.ordinate) +
           ",\"multiplicity\":" + std::to_string(e.multiplicity) + "}";
  }
  out += "],\"grid\":[";
  for (std::size_t i = 0; i < grid.x_points.size(); ++i) {
    if (i) out += ",";
    out += "{\"x\":" + std::to_string(grid.x_points[i]) +
           ",\"re\":" + fmt_double(grid.values[i].real()) +
           ",\"im\":" + fmt_double(grid.values[i].imag()) +
           ",\"abs\":" + fmt_double(std::abs(grid.values[i])) +
           ",\"envelope\":" + fmt_double(envelope[i]) + "}";
  }
  out += "],\"verdicts\":{";
  first = true;
  for (const auto& [name, value] : verdicts) {
    if (!first) out += ",";
    first = false;
    out += "\"" + json_escape(name) + "\":\"" + json_escape(value) + "\"";
  }
  out += "}}";
  return out;
}

std::string ExperimentReport::to_svg() const {
  // Log-log plot of |discrepancy|/x and fitted-envelope/x against x.
  const double W = 640.0, H = 480.0, ML = 60.0, MR = 20.0, MT = 20.0, MB = 50.0;
  std::vector<double> xs, d_over_x, e_over_x;
  for (std::size_t i = 0; i < grid.x_points.size(); ++i) {
    xs.push_back(std::log10(static_cast<double>(grid.x_points[i])));
    const double dv = std::abs(grid.values[i]) / static_cast<double>(grid.x_points[i]);
    d_over_x.push_back(std::log10(std::max(dv, 1e-18)));
    const double ev =
        fitted_constant * envelope[i] / static_cast<double>(grid.x_points[i]);
    e_over_x.push_back(std::log10(std::max(ev, 1e-18)));
  }
  double x_lo = xs.front(), x_hi = xs.back();
  double y_lo = 1e300, y_hi = -1e300;
  for (double v : d_over_x) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  for (double v : e_over_x) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  auto px = [&](double x) { return ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB); };
  auto polyline = [&](const std::vector<double>& ys, const std::string& color) {
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) pts += " ";
      pts += fmt_fixed(px(xs[i]), 2) + "," + fmt_fixed(py(ys[i]), 2);
    }
    return "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
  };
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
      "viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + fmt_fixed(ML, 2) + "\" y1=\"" + fmt_fixed(H - MB, 2) + "\" x2=\"" +
         fmt_fixed(W - MR, 2) + "\" y2=\"" + fmt_fixed(H - MB, 2) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_fixed(ML, 2) + "\" y1=\"" + fmt_fixed(MT, 2) + "\" x2=\"" +
         fmt_fixed(ML, 2) + "\" y2=\"" + fmt_fixed(H - MB, 2) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fmt_fixed(W / 2, 2) + "\" y=\"" + fmt_fixed(H - 12, 2) +
         "\" font-size=\"13\" text-anchor=\"middle\">log10 x</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt_fixed(H / 2, 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt_fixed(H / 2, 2) + ")\">log10 value</text>\n";
  svg += polyline(d_over_x, "#1f77b4");
  svg += polyline(e_over_x, "#d62728");
  svg += "<text x=\"" + fmt_fixed(W - MR - 4, 2) + "\" y=\"" + fmt_fixed(MT + 14, 2) +
         "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f77b4\">|discrepancy|/x</text>\n";
  svg += "<text x=\"" + fmt_fixed(W - MR - 4, 2) + "\" y=\"" + fmt_fixed(MT + 30, 2) +
         "\" font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\">C*envelope/x</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format,
                        const std::string& path) {
  std::string text;
  switch (format) {
    case ReportFormat::csv:
      text = report.to_csv();
      break;
    case ReportFormat::json:
      text = report.to_json();
      break;
    case ReportFormat::svg:
      text = report.to_svg();
      break;
  }
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
  }
  return text;
}

TwistedPrimeSumCheck twisted_prime_sum_check(double gamma, std::uint64_t x,
                                             const FactorTable& table) {
  if (x < 2 || x > table.limit()) throw std::out_of_range("twisted_prime_sum_check range error");
  TwistedPrimeSumCheck out;
  Cplx lhs = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    const double logp = std::log(static_cast<double>(p));
    lhs += std::polar(1.0, gamma * logp) * logp;
  }
  const Cplx s(1.0, gamma);
  const double xd = static_cast<double>(x);
  out.lhs = lhs;
  out.main = std::exp(s * std::log(xd)) / s;
  out.err_scale = std::abs(out.lhs - out.main) * std::log(xd) / xd;
  return out;
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig defaults) {
  ExperimentConfig cfg = std::move(defaults);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "function") {
      cfg.function_name = value;
    } else if (key == "D") {
      cfg.D = std::stoi(value);
    } else if (key == "A") {
      cfg.A = std::stod(value);
    } else if (key == "T") {
      cfg.T = std::stod(value);
    } else if (key == "remark_mode") {
      cfg.remark_mode = value == "true" || value == "1";
    } else if (key == "gamma_mode") {
      if (value == "declared") {
        cfg.gamma_mode = GammaMode::declared;
      } else if (value == "scanned") {
        cfg.gamma_mode = GammaMode::scanned;
      } else {
        throw std::invalid_argument("config: gamma_mode must be declared or scanned");
      }
    } else if (key == "gamma") {
      cfg.declared_gamma = OrdinateMultiset{};
      std::istringstream gs(value);
      double g = 0.0;
      while (gs >> g) cfg.declared_gamma.add(g);
    } else if (key == "x_grid") {
      cfg.x_grid.clear();
      std::istringstream xs(value);
      std::uint64_t x = 0;
      while (xs >> x) cfg.x_grid.push_back(x);
    } else if (key == "scan_step") {
      cfg.scan_step = std::stod(value);
    } else if (key == "scan_threshold") {
      cfg.scan_threshold = std::stod(value);
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = ReportFormat::csv;
      } else if (value == "json") {
        cfg.format = ReportFormat::json;
      } else if (value == "svg") {
        cfg.format = ReportFormat::svg;
      } else {
        throw std::invalid_argument("config: format must be csv, json or svg");
      }
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace multsum
