#pragma once

// Sign-change bracketing along straight lines in the complex v plane,
// shared by the ring and open-chain solvers.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace latticegreen::detail {

using cplx = std::complex<double>;

struct ScanLine {
  std::function<cplx(double)> point;
  std::function<double(cplx)> scalar;
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool log_spaced = false;
};

// Bisects until the bracket cannot shrink further in double precision.
inline cplx bisect(const ScanLine& line, double a, double b, double fa) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = line.scalar(line.point(mid));
    if (fm == 0.0) return line.point(mid);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return line.point(0.5 * (a + b));
}

inline std::vector<cplx> scan_line(const ScanLine& line, int points) {
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    t[i] = line.log_spaced ? line.t_lo * std::pow(line.t_hi / line.t_lo, f)
                           : line.t_lo + f * (line.t_hi - line.t_lo);
  }
  std::vector<double> y(points);
  for (int i = 0; i < points; ++i) y[i] = line.scalar(line.point(t[i]));
  std::vector<cplx> roots;
  for (int i = 0; i < points; ++i) {
    if (y[i] == 0.0) {
      roots.push_back(line.point(t[i]));
      continue;
    }
    if (i + 1 < points && y[i + 1] != 0.0 && (y[i] < 0.0) != (y[i + 1] < 0.0))
      roots.push_back(bisect(line, t[i], t[i + 1], y[i]));
  }
  return roots;
}

}  // namespace latticegreen::detail
