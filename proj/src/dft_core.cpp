#include "latticegreen/dft_core.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

#include "latticegreen/error.hpp"

namespace latticegreen {

void GreenParams::validate() const {
  if (N < 1) throw DomainError("GreenParams: N must be >= 1");
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !std::isfinite(eta) ||
      !std::isfinite(Delta))
    throw DomainError("GreenParams: parameters must be finite");
}

QuasimomentumGrid make_grid(int N, double Delta) {
  if (N < 1) throw DomainError("make_grid: N must be >= 1");
  QuasimomentumGrid grid{N, Delta, std::vector<double>(static_cast<std::size_t>(N))};
  for (int m = 0; m < N; ++m) grid.values[m] = (2.0 * std::numbers::pi * m + Delta) / N;
  return grid;
}

cplx idft(std::span<const cplx> b, const QuasimomentumGrid& grid, long long X) {
  if (b.size() != grid.values.size()) throw DomainError("idft: length must equal N");
  cplx sum{0.0, 0.0};
  for (std::size_t m = 0; m < b.size(); ++m)
    sum += b[m] * std::polar(1.0, grid.values[m] * static_cast<double>(X));
  return sum / static_cast<double>(grid.N);
}

ComplexSequence dft_forward(std::span<const cplx> a, const QuasimomentumGrid& grid) {
  if (a.size() != grid.values.size()) throw DomainError("dft_forward: length must equal N");
  ComplexSequence b(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    cplx sum{0.0, 0.0};
    for (std::size_t x = 0; x < a.size(); ++x)
      sum += a[x] * std::polar(1.0, -grid.values[m] * static_cast<double>(x));
    b[m] = sum;
  }
  return b;
}

MainIntervalCoord to_main_interval(long long X, int N) {
  if (N < 1) throw DomainError("to_main_interval: N must be >= 1");
  const long long n = N;
  const long long x_m = ((X % n) + n) % n;
  return {X, x_m, (X - x_m) / n};
}

namespace {

template <typename Weight>
cplx weighted_green_sum(const GreenParams& params, Weight weight) {
  params.validate();
  const cplx p = params.p();
  const auto grid = make_grid(params.N, params.Delta);
  cplx sum{0.0, 0.0};
  for (double q : grid.values) {
    const cplx denom = p - std::cos(q + params.eta);
    if (std::abs(denom) < kResonanceThreshold)
      throw ResonantParameter("lattice sum: cosh v coincides with cos(Q + eta)");
    sum += weight(q * static_cast<double>(params.X)) / denom;
  }
  return sum / static_cast<double>(params.N);
}

}  // namespace

cplx direct_green_sum(const GreenParams& params) {
  return weighted_green_sum(params, [](double phase) { return std::polar(1.0, phase); });
}

cplx direct_green_cos_sum(const GreenParams& params) {
  return 2.0 * weighted_green_sum(params, [](double phase) { return cplx{std::cos(phase), 0.0}; });
}

cplx direct_green_sin_sum(const GreenParams& params) {
  return 2.0 * weighted_green_sum(params, [](double phase) { return cplx{std::sin(phase), 0.0}; });
}

cplx direct_exponential_sum(cplx z, int N, double Delta, double eta, long long X) {
  const auto grid = make_grid(N, Delta);
  cplx sum{0.0, 0.0};
  for (double q : grid.values)
    sum += std::exp(z * std::cos(q + eta)) * std::polar(1.0, q * static_cast<double>(X));
  return sum / static_cast<double>(N);
}

double min_resonance_distance(const GreenParams& params) {
  params.validate();
  const cplx p = params.p();
  double best = std::numeric_limits<double>::infinity();
  for (double q : make_grid(params.N, params.Delta).values)
    best = std::min(best, std::abs(p - std::cos(q + params.eta)));
  return best;
}

}  // namespace latticegreen
