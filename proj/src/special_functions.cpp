#include "latticegreen/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticegreen/error.hpp"

namespace latticegreen {

namespace {

constexpr int kMaxOrder = 1000000;

void check_order(int n) {
  if (n > kMaxOrder || n < -kMaxOrder) throw DomainError("bessel_i: |n| exceeds 1e6");
}

bool use_power_series(int n, cplx z) { return std::abs(z) <= 2.0 * (n + 1); }

// sum_k (z/2)^{n+2k} / (k! (n+k)!) times e^{log_scale}.
cplx ascending_series(int n, cplx z, double log_scale, const SeriesTolerance& tol) {
  if (z == cplx{0.0, 0.0}) return n == 0 ? cplx{std::exp(log_scale), 0.0} : cplx{0.0, 0.0};
  const cplx half = 0.5 * z;
  // (z/2)^n / n! as a running product; the binary exponent is kept apart so
  // large n neither underflows early nor loses digits through exp(log(...)).
  cplx lead{1.0, 0.0};
  int exponent = 0;
  for (int j = 1; j <= n; ++j) {
    lead *= half / static_cast<double>(j);
    int e = 0;
    std::frexp(std::abs(lead), &e);
    lead = {std::ldexp(lead.real(), -e), std::ldexp(lead.imag(), -e)};
    exponent += e;
  }
  const cplx q = half * half;
  cplx term{1.0, 0.0};
  cplx sum = term;
  for (int k = 1; k < tol.max_terms; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < tol.abs_tol * std::abs(sum) || term == cplx{0.0, 0.0}) {
      const cplx scaled = sum * lead * std::exp(log_scale);
      return {std::ldexp(scaled.real(), exponent), std::ldexp(scaled.imag(), exponent)};
    }
  }
  throw NonConvergence("bessel_i: ascending series exceeded max_terms");
}

int miller_start(int n_max, double modulus) {
  const double scale = std::max(static_cast<double>(n_max), modulus);
  return static_cast<int>(std::ceil(scale + 20.0 + std::sqrt(60.0 * scale)));
}

// Backward recurrence for Re z >= 0. Returns e^{-Re z} I_k(z), k = 0..n_max.
std::vector<cplx> miller_scaled(int n_max, cplx z, const SeriesTolerance& tol) {
  const int start = miller_start(n_max, std::abs(z));
  if (start > tol.max_terms)
    throw NonConvergence("bessel_i: backward recurrence start order exceeds max_terms");

  std::vector<cplx> kept(static_cast<std::size_t>(n_max) + 1);
  cplx above{0.0, 0.0};
  cplx current{1e-30, 0.0};
  cplx norm_sum{0.0, 0.0};
  const cplx two_over_z = 2.0 / z;
  for (int k = start; k >= 1; --k) {
    if (k <= n_max) kept[k] = current;
    norm_sum += 2.0 * current;
    const cplx below = above + static_cast<double>(k) * two_over_z * current;
    above = current;
    current = below;
    if (std::abs(current) > 1e200) {
      current *= 1e-200;
      above *= 1e-200;
      norm_sum *= 1e-200;
      for (int j = k; j <= n_max; ++j) kept[j] *= 1e-200;
    }
  }
  kept[0] = current;
  norm_sum += current;

  // sum equals e^z; divide it out and restore the phase e^{i Im z}.
  const cplx factor = std::exp(cplx{0.0, z.imag()}) / norm_sum;
  for (auto& value : kept) value *= factor;
  return kept;
}

}  // namespace

void SeriesTolerance::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("SeriesTolerance: abs_tol must be positive");
  if (max_terms < 1) throw DomainError("SeriesTolerance: max_terms must be >= 1");
}

void QuadratureSpec::validate() const {
  if (!(upper_cutoff > 0.0)) throw DomainError("QuadratureSpec: upper_cutoff must be positive");
  if (step_count < 2) throw DomainError("QuadratureSpec: step_count must be >= 2");
}

cplx bessel_i_scaled(int n, cplx z, const SeriesTolerance& tol) {
  tol.validate();
  check_order(n);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("bessel_i: argument must be finite");
  n = std::abs(n);
  // I_n(-z) = (-1)^n I_n(z) moves the recurrence to Re z >= 0.
  const bool flip = z.real() < 0.0;
  const cplx w = flip ? -z : z;
  const double sign = (flip && (n % 2 == 1)) ? -1.0 : 1.0;
  if (use_power_series(n, w)) return sign * ascending_series(n, w, -w.real(), tol);
  return sign * miller_scaled(n, w, tol)[n];
}

cplx bessel_i(int n, cplx z, const SeriesTolerance& tol) {
  tol.validate();
  check_order(n);
  const int order = std::abs(n);
  if (use_power_series(order, z)) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("bessel_i: argument must be finite");
    return ascending_series(order, z, 0.0, tol);
  }
  return bessel_i_scaled(order, z, tol) * std::exp(std::abs(z.real()));
}

std::vector<cplx> bessel_i_sequence(int n_max, cplx z, const SeriesTolerance& tol) {
  tol.validate();
  check_order(n_max);
  if (n_max < 0) throw DomainError("bessel_i_sequence: n_max must be >= 0");
  std::vector<cplx> out(static_cast<std::size_t>(n_max) + 1);
  if (use_power_series(0, z)) {
    for (int k = 0; k <= n_max; ++k) out[k] = ascending_series(k, z, 0.0, tol);
    return out;
  }
  const bool flip = z.real() < 0.0;
  const cplx w = flip ? -z : z;
  out = miller_scaled(n_max, w, tol);
  const double grow = std::exp(w.real());
  for (int k = 0; k <= n_max; ++k) {
    // Small orders are fine either way; large ones past 2(k+1) >= |z| are
    // more accurate from the ascending series.
    if (use_power_series(k, w)) out[k] = ascending_series(k, w, 0.0, tol);
    else out[k] *= grow;
    if (flip && k % 2 == 1) out[k] = -out[k];
  }
  return out;
}

cplx fourier_coefficient_oracle(const std::function<cplx(double)>& f, int n, int samples) {
  if (samples < 4 * std::abs(n) + 16)
    throw DomainError("fourier_coefficient_oracle: need samples >= 4|n| + 16");
  cplx sum{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / samples;
  for (int j = 0; j < samples; ++j) {
    const double y = step * j;
    // n*j reduced mod samples keeps the phase argument small.
    const long long reduced = (static_cast<long long>(n) * j) % samples;
    sum += f(y) * std::polar(1.0, -step * static_cast<double>(reduced));
  }
  return sum / static_cast<double>(samples);
}

namespace {

double laplace_closed(int n, double p) {
  const double v = std::acosh(p);
  return std::exp(-std::abs(n) * v) / std::sinh(v);
}

// e^{-pz} I_n(z) and its z-derivative, both via the scaled Bessel function.
double laplace_integrand(int n, double p, double z) {
  return std::exp(-(p - 1.0) * z) * bessel_i_scaled(n, z).real();
}

double laplace_integrand_derivative(int n, double p, double z) {
  const double lower = bessel_i_scaled(n - 1, z).real();
  const double upper = bessel_i_scaled(n + 1, z).real();
  const double mid = bessel_i_scaled(n, z).real();
  return std::exp(-(p - 1.0) * z) * (0.5 * (lower + upper) - p * mid);
}

// Composite trapezoid plus the leading Euler-Maclaurin endpoint term.
double corrected_trapezoid(int n, double p, double cutoff, long long steps) {
  const double h = cutoff / static_cast<double>(steps);
  double sum = 0.5 * (laplace_integrand(n, p, 0.0) + laplace_integrand(n, p, cutoff));
  for (long long j = 1; j < steps; ++j) sum += laplace_integrand(n, p, h * static_cast<double>(j));
  const double end_term = laplace_integrand_derivative(n, p, cutoff) -
                          laplace_integrand_derivative(n, p, 0.0);
  return h * sum - h * h / 12.0 * end_term;
}

}  // namespace

LaplacePair laplace_identity_check(int n, double p, const QuadratureSpec& quad) {
  if (!(p > 1.0)) throw DomainError("laplace_identity_check: requires p > 1");
  quad.validate();
  return {corrected_trapezoid(n, p, quad.upper_cutoff, quad.step_count), laplace_closed(n, p)};
}

LaplacePair laplace_identity_check_adaptive(int n, double p, double step_width,
                                            double initial_cutoff) {
  if (!(p > 1.0)) throw DomainError("laplace_identity_check: requires p > 1");
  if (!(step_width > 0.0) || !(initial_cutoff > 0.0))
    throw DomainError("laplace_identity_check_adaptive: step width and cutoff must be positive");
  double cutoff = initial_cutoff;
  auto steps_for = [&](double c) {
    return std::max<long long>(2, std::llround(std::ceil(c / step_width)));
  };
  double previous = corrected_trapezoid(n, p, cutoff, steps_for(cutoff));
  for (int doubling = 0; doubling < 16; ++doubling) {
    cutoff *= 2.0;
    const double next = corrected_trapezoid(n, p, cutoff, steps_for(cutoff));
    if (std::abs(next - previous) < 1e-10) return {next, laplace_closed(n, p)};
    previous = next;
  }
  throw NonConvergence("laplace_identity_check_adaptive: cutoff doubling did not settle");
}

}  // namespace latticegreen
