#pragma once

#include <complex>

#include "latticegreen/special_functions.hpp"

namespace latticegreen {

/// A truncated Bessel series together with its truncation diagnostics.
/// `truncated` is the TruncationWarning: the last retained term is larger
/// than tol.abs_tol relative to the total.
struct SeriesValue {
  cplx value{0.0, 0.0};
  double last_term = 0.0;
  int k_max = 0;
  bool truncated = false;
};

struct JacobiSumSpec {
  int N = 1;
  cplx z{1.0, 0.0};
  cplx Delta{0.0, 0.0};
  double eta = 0.0;
  long long X = 0;
  int k_max = -1;  // negative selects default_k_max
  SeriesTolerance tol{};

  void validate() const;
};

/// Smallest K such that every omitted order |kN + X|, |k| > K, has
/// I_{|kN+X|}(|z|) below 1e-16 of the largest term; capped at 64 + |X|/N.
int default_k_max(int N, cplx z, long long X);

/// I_0(z) + 2 sum_{k=1}^{k_max} I_{kN}(z) cos(k Delta)
///   == (1/N) sum_m exp(z cos((Delta + 2 pi m)/N))
SeriesValue jacobi_sum(int N, cplx z, cplx Delta, int k_max, const SeriesTolerance& tol = {});

/// sum_{k=-k_max}^{k_max} I_{kN}(z) w^{kN}
///   == (1/N) sum_m exp((z/2)(w e^{2 pi i m/N} + e^{-2 pi i m/N}/w))
SeriesValue jacobi_sum_w(int N, cplx z, cplx w, int k_max, const SeriesTolerance& tol = {});

/// e^{-i eta X} sum_{k=-k_max}^{k_max} I_{kN+X}(z) e^{-ik(Delta + eta N)}
///   == (1/N) sum_m exp(z cos(Q_m + eta)) e^{i Q_m X}
/// The k = 0 term alone is the infinite-chain value.
SeriesValue bessel_series_green(const JacobiSumSpec& spec);

struct ThetaPair {
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
};

/// Delta = theta + pi/2 specialisation of jacobi_sum: lhs is the direct
/// N-point sum, rhs the split even-cos / odd-sin Bessel series.
ThetaPair theta_variant_check(int N, double z, double theta, int k_max);

}  // namespace latticegreen
