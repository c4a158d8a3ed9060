#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace latticegreen {

using cplx = std::complex<double>;

/// Truncation control shared by every series in the library. A series stops
/// once the magnitude of its last term falls below abs_tol times the
/// magnitude accumulated so far.
struct SeriesTolerance {
  double abs_tol = 1e-15;
  int max_terms = 10000;

  void validate() const;
};

/// Integration range [0, upper_cutoff] split into step_count panels.
struct QuadratureSpec {
  double upper_cutoff = 80.0;
  int step_count = 100000;

  void validate() const;
};

/// Modified Bessel function I_n(z) of integer order. Ascending series for
/// |z| <= 2(|n|+1), Miller backward recurrence normalised by
/// e^z = I_0 + 2 sum_k I_k otherwise. I_{-n} = I_n by construction.
cplx bessel_i(int n, cplx z, const SeriesTolerance& tol = {});

/// e^{-|Re z|} I_n(z); finite for arguments where I_n itself overflows.
cplx bessel_i_scaled(int n, cplx z, const SeriesTolerance& tol = {});

/// I_0(z) ... I_{n_max}(z) from one backward recurrence (or series calls
/// where the recurrence does not apply).
std::vector<cplx> bessel_i_sequence(int n_max, cplx z, const SeriesTolerance& tol = {});

/// Trapezoid estimate of c_n = (1/2pi) int_0^{2pi} f(y) e^{-iny} dy.
cplx fourier_coefficient_oracle(const std::function<cplx(double)>& f, int n, int samples);

struct LaplacePair {
  double numeric = 0.0;
  double closed = 0.0;
};

/// Compares int_0^inf e^{-pz} I_n(z) dz, integrated numerically on
/// [0, quad.upper_cutoff], with e^{-|n| v} / sinh v where p = cosh v.
/// Requires p > 1.
LaplacePair laplace_identity_check(int n, double p, const QuadratureSpec& quad);

/// Same comparison with the cutoff doubled (at fixed step width) until the
/// numeric value changes by less than 1e-10.
LaplacePair laplace_identity_check_adaptive(int n, double p, double step_width = 4e-3,
                                            double initial_cutoff = 20.0);

}  // namespace latticegreen
