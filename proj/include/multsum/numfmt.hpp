#pragma once

#include <complex>
#include <cstdio>
#include <string>

namespace multsum {

// Shortest round-trip decimal formatting, locale independent.  All report,
// CSV and JSON emitters go through these helpers so that output bytes depend
// only on the computed values.
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  if (back == x) {
    for (int prec = 1; prec < 17; ++prec) {
      char probe[40];
      std::snprintf(probe, sizeof(probe), "%.*g", prec, x);
      std::sscanf(probe, "%lf", &back);
      if (back == x) return probe;
    }
  }
  return buf;
}

inline std::string fmt_fixed(double x, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, x);
  return buf;
}

inline std::string fmt_complex(std::complex<double> z) {
  return fmt_double(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_double(std::abs(z.imag())) + "i";
}

}  // namespace multsum
