#include "multsum/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "multsum/parallel.hpp"

namespace multsum {

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int panels, int max_depth, double abs_floor) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive needs b > a");
  if (panels < 1) throw std::invalid_argument("integrate_adaptive needs panels >= 1");
  const double h = (b - a) / panels;

  // Panel endpoints/midpoints evaluated once; the coarse composite estimate
  // fixes the absolute tolerance before refinement starts.
  std::vector<double> fe(panels + 1), fm(panels);
  for (int i = 0; i <= panels; ++i) fe[i] = f(a + i * h);
  for (int i = 0; i < panels; ++i) fm[i] = f(a + (i + 0.5) * h);
  double coarse = 0.0;
  for (int i = 0; i < panels; ++i) coarse += simpson(fe[i], fm[i], fe[i + 1], h);
  const double tol = std::max(std::abs(coarse) * rel_tol, abs_floor);

  std::vector<double> partial(panels, 0.0);
  parallel_chunks(panels, 1, [&](std::size_t c, std::size_t lo, std::size_t) {
    const int i = static_cast<int>(lo);
    const double pa = a + i * h;
    const double pb = pa + h;
    const double whole = simpson(fe[i], fm[i], fe[i + 1], h);
    partial[c] = adapt(f, pa, pb, fe[i], fm[i], fe[i + 1], whole, tol / panels, max_depth);
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace multsum
