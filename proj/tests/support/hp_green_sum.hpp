#pragma once

// Extended-precision literal lattice sum, for tests only. The cancellation in
// (1/N) sum_m e^{i Q_m X} / (cosh v - cos(Q_m + eta)) can reach e^{-100}
// relative to the individual terms, which double precision cannot resolve.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>

#include "latticegreen/green_params.hpp"

namespace latticegreen::testing {

using hp_real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<90>>;

struct hp_cplx {
  hp_real re, im;
  hp_cplx operator*(const hp_cplx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  hp_cplx operator-(const hp_cplx& o) const { return {re - o.re, im - o.im}; }
  hp_cplx operator+(const hp_cplx& o) const { return {re + o.re, im + o.im}; }
  hp_cplx operator/(const hp_cplx& o) const {
    const hp_real den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
};

inline hp_cplx hp_polar(const hp_real& angle) { return {cos(angle), sin(angle)}; }

inline hp_cplx hp_power(hp_cplx base, long long e) {
  if (e < 0) return hp_power(hp_cplx{1, 0} / base, -e);
  hp_cplx out{1, 0};
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

// Phases advance by exact multiplication with e^{2 pi i/N}; only a handful of
// transcendental calls per evaluation.
inline std::complex<double> hp_green_sum(const GreenParams& p) {
  const hp_real pi = boost::math::constants::pi<hp_real>();
  const hp_real a = p.v.real(), b = p.v.imag();
  const hp_cplx cosh_v{cosh(a) * cos(b), sinh(a) * sin(b)};
  const hp_real q0 = hp_real(p.Delta) / p.N;
  const hp_cplx step = hp_polar(2 * pi / p.N);
  hp_cplx rot = hp_polar(q0 + hp_real(p.eta));  // e^{i (Q_m + eta)}
  hp_cplx wave = hp_polar(q0 * hp_real(p.X));   // e^{i Q_m X}
  const hp_cplx wave_step = hp_power(step, p.X);
  hp_cplx sum{0, 0};
  for (int m = 0; m < p.N; ++m) {
    sum = sum + wave / (cosh_v - hp_cplx{rot.re, 0});
    rot = rot * step;
    wave = wave * wave_step;
  }
  return {static_cast<double>(sum.re / p.N), static_cast<double>(sum.im / p.N)};
}

}  // namespace latticegreen::testing
