#include "latticegreen/open_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "latticegreen/error.hpp"
#include "latticegreen/green_closed.hpp"
#include "root_scan.hpp"

namespace latticegreen {

namespace {

using detail::ScanLine;
using detail::scan_line;

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEndpointTol = 1e-12;

bool at_zero(cplx v) { return std::abs(v) < kEndpointTol; }
bool at_i_pi(cplx v) { return std::abs(v - kI * kPi) < kEndpointTol; }

// R e^{-(L-1)(2 Re v + i Im v)}: real on real v and u + i pi, imaginary on i w.
cplx residual_scaled(const OpenChainModel& m, cplx v) {
  const double a = m.alpha(), b = m.beta();
  const double lm1 = m.L - 1;
  const cplx ev = std::exp(v), emv = std::exp(-v);
  return std::polar(1.0, v.imag() * lm1) * (ev - a) * (ev - b) -
         std::polar(std::exp(-2.0 * v.real() * lm1), -v.imag() * lm1) * (emv - a) * (emv - b);
}

// For a == b, R = R+ R- with R+- = e^{v(L-1)} (e^v - a) -+ (e^{-v} - a),
// scaled by e^{-Re v (L-1)}, and on v = i w also by e^{-i w (L-1)/2} so that
// R+ is imaginary and R- real there.
cplx factor_scaled(const OpenChainModel& m, cplx v, double sign, bool symmetric = false) {
  const double a = m.alpha();
  const double lm1 = m.L - 1;
  const double half = symmetric ? 0.5 * v.imag() * lm1 : 0.0;
  return std::polar(1.0, v.imag() * lm1 - half) * (std::exp(v) - a) -
         sign * std::polar(std::exp(-v.real() * lm1), -half) * (std::exp(-v) - a);
}

// sinh(z) e^{-shift}
cplx sinh_scaled(cplx z, double shift) {
  return 0.5 * (std::exp(z - shift) - std::exp(-z - shift));
}

ComplexSequence normalise(ComplexSequence a) {
  double norm = 0.0, largest = 0.0;
  for (const cplx& c : a) {
    norm += std::norm(c);
    largest = std::max(largest, std::abs(c));
  }
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw DegenerateAmplitude("amplitude_open: the amplitude vanishes identically");
  cplx phase{1.0, 0.0};
  for (const cplx& c : a)
    if (std::abs(c) >= (1.0 - 1e-12) * largest) {
      phase = c / std::abs(c);
      break;
    }
  for (auto& c : a) c /= phase * norm;
  return a;
}

// Limits of the amplitude formula divided by sinh-like vanishing factors.
ComplexSequence endpoint_amplitude(const OpenChainModel& m, bool zero) {
  const double a = m.alpha();
  ComplexSequence out(m.L);
  for (int x = 0; x < m.L; ++x) {
    if (zero)
      out[x] = (x + 1.0) - a * x;
    else
      out[x] = (x % 2 == 0 ? -1.0 : 1.0) * ((x + 1.0) + a * x);
  }
  return out;
}

ComplexSequence stable_amplitude(const OpenChainModel& m, cplx v) {
  if (v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0)) v = -v;
  if (at_zero(v)) return endpoint_amplitude(m, true);
  if (at_i_pi(v)) return endpoint_amplitude(m, false);
  const int L = m.L;
  const double a = m.alpha(), b = m.beta();
  ComplexSequence out(L);
  if (a == b) {
    // at a root of R+-: a(x) ~ +-e^{-v(L-1-x)} - e^{-v x}
    const double sign = std::abs(factor_scaled(m, v, 1.0)) <= std::abs(factor_scaled(m, v, -1.0))
                            ? 1.0
                            : -1.0;
    for (int x = 0; x < L; ++x)
      out[x] = sign * std::exp(-v * static_cast<double>(L - 1 - x)) -
               std::exp(-v * static_cast<double>(x));
    return out;
  }
  const double shift = v.real() * L;
  const cplx ev = std::exp(v);
  // the growing exponential of the left form carries (e^v - a); when that
  // factor is the small one, count from the right end instead
  const bool from_left = std::abs(ev - a) >= std::abs(ev - b);
  for (int x = 0; x < L; ++x) {
    if (from_left)
      out[x] = sinh_scaled(v * static_cast<double>(x + 1), shift) -
               a * sinh_scaled(v * static_cast<double>(x), shift);
    else
      out[x] = sinh_scaled(v * static_cast<double>(L - x), shift) -
               b * sinh_scaled(v * static_cast<double>(L - 1 - x), shift);
  }
  return out;
}

double endpoint_scale(const OpenChainModel& m) {
  const double a = std::abs(m.alpha()), b = std::abs(m.beta());
  return 2.0 * (m.L - 1) * (1.0 + a) * (1.0 + b) + 2.0 * (2.0 + a + b);
}

std::vector<cplx> find_roots(const OpenChainModel& m, int points, double t_lo) {
  const double v_max = open_v_max(m);
  auto real_line = [](double u) { return cplx{u, 0.0}; };
  auto pi_line = [](double u) { return cplx{u, kPi}; };
  auto imag_line = [](double w) { return cplx{0.0, w}; };
  std::vector<ScanLine> lines;
  if (m.alpha() == m.beta()) {
    for (double sign : {1.0, -1.0}) {
      auto f = [&m, sign](cplx v) { return factor_scaled(m, v, sign); };
      auto g = [&m, sign](cplx v) { return factor_scaled(m, v, sign, true); };
      lines.push_back({real_line, [f](cplx v) { return f(v).real(); }, t_lo, v_max, true});
      lines.push_back({pi_line, [f](cplx v) { return f(v).real(); }, t_lo, v_max, true});
      if (sign > 0.0)
        lines.push_back({imag_line, [g](cplx v) { return g(v).imag(); }, t_lo, kPi - t_lo, false});
      else
        lines.push_back({imag_line, [g](cplx v) { return g(v).real(); }, t_lo, kPi - t_lo, false});
    }
  } else {
    auto f = [&m](cplx v) { return residual_scaled(m, v); };
    lines.push_back({real_line, [f](cplx v) { return f(v).real(); }, t_lo, v_max, true});
    lines.push_back({pi_line, [f](cplx v) { return f(v).real(); }, t_lo, v_max, true});
    lines.push_back({imag_line, [f](cplx v) { return f(v).imag(); }, t_lo, kPi - t_lo, false});
  }
  std::vector<cplx> roots;
  for (const auto& line : lines)
    for (cplx v : scan_line(line, points)) roots.push_back(v);
  // v = 0 and v = i pi always solve R; they are states only at a higher-order zero
  const double scale = endpoint_scale(m);
  for (cplx end : {cplx{0.0, 0.0}, cplx{0.0, kPi}})
    if (std::abs(eigenenergy_residual_open_derivative(m, end)) < 1e-9 * scale) roots.push_back(end);
  return roots;
}

void fill_constants(const OpenChainModel& m, MagnonState& st) {
  st.C1 = st.C2 = cplx{kNaN, kNaN};
  ComplexMatrix sys;
  try {
    sys = constants_system(m, st.v);
  } catch (const ResonantParameter&) {
    return;
  }
  cplx c1 = -sys(0, 1), c2 = sys(0, 0);
  if (std::norm(sys(1, 1)) + std::norm(sys(1, 0)) > std::norm(c1) + std::norm(c2)) {
    c1 = sys(1, 1);
    c2 = -sys(1, 0);
  }
  // amplitude of the doubled-ring solution, -C1 G(x) - C2 G(x - L + 1)
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (int x = 0; x < m.L; ++x) {
    const cplx g0 = green_closed({2 * m.L, st.v, 0.0, 0.0, x});
    const cplx g1 = green_closed({2 * m.L, st.v, 0.0, 0.0, x - m.L + 1});
    const cplx d = -c1 * g0 - c2 * g1;
    num += std::conj(d) * st.amplitude[x];
    den += std::norm(d);
  }
  if (!(den > 0.0)) return;
  const cplx scale = num / den;
  st.C1 = scale * c1;
  st.C2 = scale * c2;
}

}  // namespace

const char* to_string(MagnonClass c) {
  return c == MagnonClass::bound ? "bound" : "scattered";
}

OpenChainModel build_model(int L, double eta, double mu, double nu) {
  if (L < 2) throw DomainError("build_model: L must be >= 2");
  if (!std::isfinite(eta) || !std::isfinite(mu) || !std::isfinite(nu))
    throw DomainError("build_model: parameters must be finite");
  OpenChainModel m;
  m.L = L;
  m.eta = eta;
  m.mu = mu;
  m.nu = nu;
  m.E0 = -eta * (L - 1) / 2.0 - (mu + nu) / 2.0;
  m.grid = make_grid(2 * L, 0.0);
  return m;
}

cplx eigenenergy_residual_open(const OpenChainModel& m, cplx v) {
  const double a = m.alpha(), b = m.beta();
  const cplx ev = std::exp(v), emv = std::exp(-v);
  return std::exp(2.0 * v * static_cast<double>(m.L - 1)) * (ev - a) * (ev - b) -
         (emv - a) * (emv - b);
}

cplx eigenenergy_residual_open_derivative(const OpenChainModel& m, cplx v) {
  const double a = m.alpha(), b = m.beta();
  const double lm1 = m.L - 1;
  const cplx ev = std::exp(v), emv = std::exp(-v);
  return std::exp(2.0 * v * lm1) * (2.0 * lm1 * (ev - a) * (ev - b) + ev * (2.0 * ev - a - b)) +
         emv * (2.0 * emv - a - b);
}

double open_v_max(const OpenChainModel& m) {
  const double largest = std::max({std::abs(m.alpha()), std::abs(m.beta()), 2.0});
  return std::max(10.0, 2.0 * std::abs(std::log(largest)));
}

std::vector<MagnonState> solve_open(const OpenChainModel& model, const OpenSolveOptions& options) {
  if (model.L < 2) throw DomainError("solve_open: L must be >= 2");
  if (options.grid_points < 16) throw DomainError("solve_open: grid_points must be >= 16");
  // imaginary roots are ~pi/L apart
  int points = std::max(options.grid_points, 16 * model.L);
  double t_lo = 1e-6;
  std::vector<cplx> roots;
  for (int attempt = 0; attempt <= options.max_refinements; ++attempt) {
    roots = find_roots(model, points, t_lo);
    if (static_cast<int>(roots.size()) == model.L) break;
    points *= 2;
    t_lo /= 16.0;
  }
  if (static_cast<int>(roots.size()) != model.L)
    throw RootCountMismatch("solve_open: found " + std::to_string(roots.size()) +
                            " roots for L = " + std::to_string(model.L));
  std::vector<MagnonState> out;
  for (cplx v : roots) {
    MagnonState st;
    st.v = v;
    st.E = model.E0 + model.eta - std::cosh(v).real();
    st.classification = v.real() > 0.0 ? MagnonClass::bound : MagnonClass::scattered;
    st.amplitude = amplitude_open(model, v);
    const bool endpoint = at_zero(v) || at_i_pi(v);
    st.gamma = std::abs(st.amplitude[0]) / (endpoint ? 1.0 : std::abs(std::sinh(v)));
    fill_constants(model, st);
    out.push_back(std::move(st));
  }
  std::sort(out.begin(), out.end(),
            [](const MagnonState& a, const MagnonState& b) { return a.E < b.E; });
  return out;
}

ComplexSequence amplitude_open(const OpenChainModel& model, cplx v) {
  if (model.L < 2) throw DomainError("amplitude_open: L must be >= 2");
  return normalise(stable_amplitude(model, v));
}

cplx amplitude_open_formula(const OpenChainModel& model, cplx v, long long x) {
  const double xd = static_cast<double>(x);
  return std::sinh(v * (xd + 1.0)) - model.alpha() * std::sinh(v * xd);
}

ComplexMatrix constants_system(const OpenChainModel& m, cplx v) {
  const int n = 2 * m.L;
  auto g = [&](long long x) { return green_closed({n, v, 0.0, 0.0, x}); };
  const double a = m.alpha(), b = m.beta();
  const long long L = m.L;
  ComplexMatrix sys(2);
  sys(0, 0) = 1.0 + 0.5 * (g(-1) - a * g(0));
  sys(0, 1) = 0.5 * (g(-L) - a * g(1 - L));
  sys(1, 0) = 0.5 * (g(L) - b * g(L - 1));
  sys(1, 1) = 1.0 + 0.5 * (g(1) - b * g(0));
  return sys;
}

RealMatrix open_hamiltonian(const OpenChainModel& m) {
  if (m.L < 2) throw DomainError("open_hamiltonian: L must be >= 2");
  RealMatrix h(m.L);
  for (int j = 0; j < m.L; ++j) {
    h(j, j) = m.eta;
    if (j + 1 < m.L) h(j, j + 1) = h(j + 1, j) = -0.5;
  }
  // the boundary terms replace one bond's eta/2 by the end field
  h(0, 0) = 0.5 * m.eta + m.mu;
  h(m.L - 1, m.L - 1) = 0.5 * m.eta + m.nu;
  return h;
}

OpenEdResult ed_oracle_open(const OpenChainModel& m) {
  if (m.L < 2 || m.L > 2048) throw DomainError("ed_oracle_open: L must lie in [2, 2048]");
  std::vector<double> diag(m.L, m.eta), off(m.L - 1, -0.5);
  diag.front() = 0.5 * m.eta + m.mu;
  diag.back() = 0.5 * m.eta + m.nu;
  auto es = tridiagonal_eigen(diag, off);
  OpenEdResult out;
  for (double e : es.values) out.energies.push_back(m.E0 + e);
  out.vectors = std::move(es.vectors);
  return out;
}

StabilityReport stability_check(const OpenChainModel& model) {
  const auto states = solve_open(model);
  const auto& lowest = states.front();
  StabilityReport r;
  r.min_excitation = lowest.E - model.E0;
  r.v = lowest.v;
  r.momentum = lowest.v.imag();
  r.unstable = model.eta < 1.0 && r.min_excitation < -1e-12;
  return r;
}

}  // namespace latticegreen
