#pragma once

#include <complex>
#include <span>
#include <vector>

#include "latticegreen/green_params.hpp"

namespace latticegreen {

using cplx = std::complex<double>;
using ComplexSequence = std::vector<cplx>;

/// Q_m = (2 pi m + Delta) / N for m = 0 .. N-1.
struct QuasimomentumGrid {
  int N = 1;
  double Delta = 0.0;
  std::vector<double> values;
};

/// X = X_M + M N with 0 <= X_M < N.
struct MainIntervalCoord {
  long long X = 0;
  long long X_M = 0;
  long long M = 0;

  friend bool operator==(const MainIntervalCoord&, const MainIntervalCoord&) = default;
};

QuasimomentumGrid make_grid(int N, double Delta);

/// a(X) = (1/N) sum_m b(Q_m) e^{i Q_m X}
cplx idft(std::span<const cplx> b, const QuasimomentumGrid& grid, long long X);

/// b(Q_m) = sum_{X=0}^{N-1} a(X) e^{-i Q_m X}; inverse of idft on the main interval.
ComplexSequence dft_forward(std::span<const cplx> a, const QuasimomentumGrid& grid);

MainIntervalCoord to_main_interval(long long X, int N);

// Literal O(N) lattice sums. These are the oracles every closed form in the
// library is checked against, so they never take shortcuts.

/// (1/N) sum_m e^{i Q_m X} / (cosh v - cos(Q_m + eta)); throws
/// ResonantParameter when a denominator has magnitude below 1e-12.
cplx direct_green_sum(const GreenParams& params);

/// (2/N) sum_m cos(Q_m X) / (cosh v - cos(Q_m + eta))
cplx direct_green_cos_sum(const GreenParams& params);

/// (2/N) sum_m sin(Q_m X) / (cosh v - cos(Q_m + eta))
cplx direct_green_sin_sum(const GreenParams& params);

/// (1/N) sum_m exp(z cos(Q_m + eta)) e^{i Q_m X}
cplx direct_exponential_sum(cplx z, int N, double Delta, double eta, long long X);

/// Smallest |cosh v - cos(Q_m + eta)| over the grid.
double min_resonance_distance(const GreenParams& params);

inline constexpr double kResonanceThreshold = 1e-12;

}  // namespace latticegreen
