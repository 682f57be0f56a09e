#pragma once

#include <functional>

namespace multsum {

// Adaptive composite Simpson integration of f over [a, b].  The interval is
// first split into `panels` equal panels (a fixed decomposition, so results
// do not depend on the worker count); each panel is refined recursively until
// its error estimate fits its share of the absolute tolerance.  The absolute
// tolerance is rel_tol times a coarse composite-Simpson estimate of the whole
// integral, floored at abs_floor.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-6, int panels = 64, int max_depth = 28,
                          double abs_floor = 1e-12);

}  // namespace multsum
