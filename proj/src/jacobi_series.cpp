#include "latticegreen/jacobi_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "latticegreen/error.hpp"

namespace latticegreen {

namespace {

constexpr int kDefaultKCap = 64;

long long abs_order(long long k, int N, long long X) { return std::llabs(k * N + X); }

void check_common(int N, int k_max) {
  if (N < 1) throw DomainError("jacobi series: N must be >= 1");
  if (k_max < 0) throw DomainError("jacobi series: k_max must be >= 0");
}

std::vector<cplx> orders_up_to(long long n_max, cplx z, const SeriesTolerance& tol) {
  if (n_max > 1000000) throw DomainError("jacobi series: Bessel order exceeds 1e6");
  return bessel_i_sequence(static_cast<int>(n_max), z, tol);
}

SeriesValue finish(cplx value, double last_term, int k_max, const SeriesTolerance& tol) {
  return {value, last_term, k_max, last_term > tol.abs_tol * std::abs(value)};
}

}  // namespace

void JacobiSumSpec::validate() const {
  if (N < 1) throw DomainError("JacobiSumSpec: N must be >= 1");
  tol.validate();
}

int default_k_max(int N, cplx z, long long X) {
  if (N < 1) throw DomainError("default_k_max: N must be >= 1");
  const double modulus = std::abs(z);
  if (modulus == 0.0) return 1;
  const long long ax = std::llabs(X);
  const long long x_m = ((X % N) + N) % N;
  const long long largest_order = std::min<long long>(x_m, N - x_m);
  // the cap grows with |X| / N so that the near-zero orders k N ~ -X stay inside
  const int cap = kDefaultKCap + static_cast<int>(ax / N);
  const auto bessel = orders_up_to(static_cast<long long>(cap + 1) * N, cplx{modulus, 0.0}, {});
  const double reference = std::abs(bessel[largest_order]);
  for (int k = 1; k < cap; ++k) {
    // smallest order left out of -k..k
    const long long omitted = static_cast<long long>(k + 1) * N - ax;
    if (omitted <= 0) continue;
    if (std::abs(bessel[omitted]) < 1e-16 * reference) return k;
  }
  return cap;
}

SeriesValue jacobi_sum(int N, cplx z, cplx Delta, int k_max, const SeriesTolerance& tol) {
  if (k_max < 0) k_max = default_k_max(N, z, 0);
  check_common(N, k_max);
  tol.validate();
  const auto bessel = orders_up_to(static_cast<long long>(k_max) * N, z, tol);
  cplx sum = bessel[0];
  double last = std::abs(bessel[0]);
  for (int k = 1; k <= k_max; ++k) {
    const cplx term = 2.0 * bessel[static_cast<std::size_t>(k) * N] * std::cos(static_cast<double>(k) * Delta);
    sum += term;
    last = std::abs(term);
  }
  return finish(sum, last, k_max, tol);
}

SeriesValue jacobi_sum_w(int N, cplx z, cplx w, int k_max, const SeriesTolerance& tol) {
  if (k_max < 0) k_max = default_k_max(N, z, 0);
  check_common(N, k_max);
  tol.validate();
  if (w == cplx{0.0, 0.0}) throw DomainError("jacobi_sum_w: w must be nonzero");
  const cplx log_w = std::log(w);
  if (static_cast<double>(k_max) * N * std::abs(log_w.real()) > 700.0)
    throw OverflowError("jacobi_sum_w: |w|^(k_max N) overflows");
  const auto bessel = orders_up_to(static_cast<long long>(k_max) * N, z, tol);
  cplx sum = bessel[0];
  double last = std::abs(bessel[0]);
  for (int k = 1; k <= k_max; ++k) {
    const double power = static_cast<double>(k) * N;
    const cplx i_kn = bessel[static_cast<std::size_t>(k) * N];
    const cplx up = i_kn * std::exp(power * log_w);
    const cplx down = i_kn * std::exp(-power * log_w);
    sum += up + down;
    last = std::max(std::abs(up), std::abs(down));
  }
  return finish(sum, last, k_max, tol);
}

SeriesValue bessel_series_green(const JacobiSumSpec& spec) {
  spec.validate();
  const int k_max = spec.k_max < 0 ? default_k_max(spec.N, spec.z, spec.X) : spec.k_max;
  const long long top = static_cast<long long>(k_max) * spec.N + std::llabs(spec.X);
  const auto bessel = orders_up_to(top, spec.z, spec.tol);
  const cplx xi = spec.Delta + spec.eta * static_cast<double>(spec.N);
  const cplx i{0.0, 1.0};

  auto term = [&](int k) {
    return bessel[abs_order(k, spec.N, spec.X)] * std::exp(-i * static_cast<double>(k) * xi);
  };
  cplx sum = term(0);
  double last = std::abs(sum);
  for (int k = 1; k <= k_max; ++k) {
    const cplx up = term(k);
    const cplx down = term(-k);
    sum += up + down;
    last = std::max(std::abs(up), std::abs(down));
  }
  const cplx phase = std::polar(1.0, -spec.eta * static_cast<double>(spec.X));
  SeriesValue out = finish(phase * sum, last, k_max, spec.tol);
  return out;
}

ThetaPair theta_variant_check(int N, double z, double theta, int k_max) {
  check_common(N, k_max);
  ThetaPair out;
  const double pi = std::numbers::pi;
  for (int m = 0; m < N; ++m)
    out.lhs += std::exp(z * std::cos(theta / N + pi / (2.0 * N) + 2.0 * pi * m / N));
  out.lhs /= static_cast<double>(N);

  const auto bessel = orders_up_to(static_cast<long long>(2 * k_max + 1) * N, cplx{z, 0.0}, {});
  cplx rhs = bessel[0];
  for (int k = 1; k <= k_max; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rhs += 2.0 * sign * bessel[static_cast<std::size_t>(2 * k) * N] * std::cos(2.0 * k * theta);
  }
  for (int k = 0; k <= k_max; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rhs -= 2.0 * sign * bessel[static_cast<std::size_t>(2 * k + 1) * N] *
           std::sin((2.0 * k + 1.0) * theta);
  }
  out.rhs = rhs;
  return out;
}

}  // namespace latticegreen
