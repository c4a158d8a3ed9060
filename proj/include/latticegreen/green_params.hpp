#pragma once

#include <complex>

namespace latticegreen {

using cplx = std::complex<double>;

/// Parameters of the finite-chain propagator
///   G(X) = (1/N) sum_m e^{i Q_m X} / (cosh v - cos(Q_m + eta)),
///   Q_m = (Delta + 2 pi m) / N.
/// v is the spectral parameter, p = cosh v.
struct GreenParams {
  int N = 1;
  cplx v{1.0, 0.0};
  double eta = 0.0;
  double Delta = 0.0;
  long long X = 0;

  cplx p() const { return std::cosh(v); }
  void validate() const;
};

}  // namespace latticegreen
