#pragma once

#include <complex>

#include "latticegreen/green_params.hpp"

namespace latticegreen {

/// Closed form of the finite-chain propagator
///   (1/N) sum_m e^{i Q_m X} / (cosh v - cos(Q_m + eta)),  Q_m = (Delta + 2 pi m)/N,
/// in terms of the main-interval decomposition X = X_M + M N:
///   e^{i eta (N/2 - X_M) + i (M + 1/2) Delta} / (2 sinh v)
///     * [ e^{ v (N/2 - X_M)} / sinh((vN + i xi)/2)
///       + e^{-v (N/2 - X_M)} / sinh((vN - i xi)/2) ],   xi = Delta + eta N.
/// Each exponential / sinh ratio is formed in the log domain, so large
/// N Re v does not overflow. The removable singularity at sinh v = 0 is
/// evaluated from its limit. Throws ResonantParameter at the simple poles.
cplx green_closed(const GreenParams& params);

/// (2/N) sum_m cos(Q_m X) / (cosh v - cos(Q_m + eta)) from the cosh/sinh
/// closed form. green_cos + i green_sin == 2 green_closed.
cplx green_cos(const GreenParams& params);

/// (2/N) sum_m sin(Q_m X) / (cosh v - cos(Q_m + eta)) from the sinh/sinh
/// closed form.
cplx green_sin(const GreenParams& params);

/// green_closed continued to v = i w (real w), the scattering region
/// p = cos w < 1. Throws ResonantParameter when cos w hits cos(Q_m + eta).
cplx continue_to_scattering(int N, double w, double eta, double Delta, long long X);

/// Principal v = arccosh(p): Re v >= 0, Im v in (-pi, pi].
cplx spectral_parameter(cplx p);

}  // namespace latticegreen
