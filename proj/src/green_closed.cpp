#include "latticegreen/green_closed.hpp"

#include <cmath>
#include <numbers>

#include "latticegreen/dft_core.hpp"
#include "latticegreen/error.hpp"

namespace latticegreen {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
// Below this |v| (or |v -+ i pi|) the 1/sinh v prefactor is replaced by the
// analytic limit of the removable singularity.
constexpr double kSmallV = 1e-6;

// e^a / sinh(b) without forming either factor separately.
cplx exp_over_sinh(cplx a, cplx b) {
  if (b.real() >= 0.0) {
    const cplx den = 1.0 - std::exp(-2.0 * b);
    if (std::abs(den) < kResonanceThreshold)
      throw ResonantParameter("closed form: sinh denominator vanishes (simple pole)");
    return 2.0 * std::exp(a - b) / den;
  }
  const cplx den = 1.0 - std::exp(2.0 * b);
  if (std::abs(den) < kResonanceThreshold)
    throw ResonantParameter("closed form: sinh denominator vanishes (simple pole)");
  return -2.0 * std::exp(a + b) / den;
}

cplx cosh_over_sinh(cplx a, cplx b) { return 0.5 * (exp_over_sinh(a, b) + exp_over_sinh(-a, b)); }
cplx sinh_over_sinh(cplx a, cplx b) { return 0.5 * (exp_over_sinh(a, b) - exp_over_sinh(-a, b)); }

struct Layout {
  double d;      // N/2 - X_M
  double shift;  // M + 1/2
  double xi;     // Delta + eta N
};

Layout layout(const GreenParams& params) {
  const auto coord = to_main_interval(params.X, params.N);
  return {0.5 * params.N - static_cast<double>(coord.X_M), static_cast<double>(coord.M) + 0.5,
          params.Delta + params.eta * params.N};
}

// cosh v -> -cosh v is the same as cos(Q + eta) -> cos(Q + eta + pi).
enum class Near { zero, plus_i_pi, minus_i_pi, none };

Near near_removable(cplx v) {
  if (std::abs(v) < kSmallV) return Near::zero;
  if (std::abs(v - kI * kPi) < kSmallV) return Near::plus_i_pi;
  if (std::abs(v + kI * kPi) < kSmallV) return Near::minus_i_pi;
  return Near::none;
}

cplx green_general(const GreenParams& params) {
  const Layout g = layout(params);
  const cplx v = params.v;
  const cplx sinh_v = std::sinh(v);
  const cplx phase = std::exp(kI * (params.eta * g.d + g.shift * params.Delta));
  const cplx n_v = v * static_cast<double>(params.N);
  const cplx bracket = exp_over_sinh(v * g.d, 0.5 * (n_v + kI * g.xi)) +
                       exp_over_sinh(-v * g.d, 0.5 * (n_v - kI * g.xi));
  return phase * bracket / (2.0 * sinh_v);
}

// v -> 0 limit: the bracket is odd in v, so G(0) = bracket'(0) / 2.
cplx green_at_zero(const GreenParams& params) {
  const Layout g = layout(params);
  const cplx s = std::sinh(kI * (0.5 * g.xi));
  if (std::abs(s) < kResonanceThreshold)
    throw ResonantParameter("closed form: p = 1 coincides with cos(Q + eta)");
  const cplx c = std::cosh(kI * (0.5 * g.xi));
  const cplx phase = std::exp(kI * (params.eta * g.d + g.shift * params.Delta));
  return phase * (g.d / s - 0.5 * params.N * c / (s * s));
}

cplx shifted_by_i_pi(const GreenParams& params, double direction,
                     cplx (*eval)(const GreenParams&)) {
  GreenParams shifted = params;
  shifted.v = params.v - direction * kI * kPi;
  shifted.eta = params.eta + kPi;
  return -eval(shifted);
}

}  // namespace

cplx green_closed(const GreenParams& params) {
  params.validate();
  switch (near_removable(params.v)) {
    case Near::zero:
      return green_at_zero(params);
    case Near::plus_i_pi:
      return shifted_by_i_pi(params, 1.0, green_closed);
    case Near::minus_i_pi:
      return shifted_by_i_pi(params, -1.0, green_closed);
    case Near::none:
      break;
  }
  return green_general(params);
}

cplx green_cos(const GreenParams& params) {
  params.validate();
  if (near_removable(params.v) != Near::none) {
    GreenParams mirrored = params;
    mirrored.X = -params.X;
    return green_closed(params) + green_closed(mirrored);
  }
  const Layout g = layout(params);
  const cplx vp = params.v + kI * params.eta;
  const cplx vm = params.v - kI * params.eta;
  const double n_half = 0.5 * params.N;
  const double delta_half = 0.5 * params.Delta;
  const cplx rhs =
      cosh_over_sinh(vp * g.d + kI * (g.shift * params.Delta), vp * n_half + kI * delta_half) +
      cosh_over_sinh(vm * g.d - kI * (g.shift * params.Delta), vm * n_half - kI * delta_half);
  return rhs / std::sinh(params.v);
}

cplx green_sin(const GreenParams& params) {
  params.validate();
  if (near_removable(params.v) != Near::none) {
    GreenParams mirrored = params;
    mirrored.X = -params.X;
    return (green_closed(params) - green_closed(mirrored)) / kI;
  }
  const Layout g = layout(params);
  const cplx vp = params.v + kI * params.eta;
  const cplx vm = params.v - kI * params.eta;
  const double n_half = 0.5 * params.N;
  const double delta_half = 0.5 * params.Delta;
  const cplx rhs =
      sinh_over_sinh(vp * g.d + kI * (g.shift * params.Delta), vp * n_half + kI * delta_half) -
      sinh_over_sinh(vm * g.d - kI * (g.shift * params.Delta), vm * n_half - kI * delta_half);
  return rhs / (kI * std::sinh(params.v));
}

cplx continue_to_scattering(int N, double w, double eta, double Delta, long long X) {
  GreenParams params{N, cplx{0.0, w}, eta, Delta, X};
  params.validate();
  if (min_resonance_distance(params) < kResonanceThreshold)
    throw ResonantParameter("continue_to_scattering: cos w coincides with cos(Q + eta)");
  return green_closed(params);
}

cplx spectral_parameter(cplx p) {
  cplx v = std::acosh(p);
  if (v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0)) v = -v;
  if (v.imag() <= -kPi) v += cplx{0.0, 2.0 * kPi};
  if (v.imag() > kPi) v -= cplx{0.0, 2.0 * kPi};
  return v;
}

}  // namespace latticegreen
