#include "latticegreen/heisenberg_ring.hpp"

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
// |F| below this at v = 0 or v = i pi counts as an exact root there.
constexpr double kEndpointTol = 1e-12;
// A root whose (scaled) amplitude vanishes on X = 1 .. N-1 is not a state.
constexpr double kNullAmplitude = 1e-8;
constexpr double kFreeBoundaryTol = 1e-10;

double half_cos(const RingSector& s) { return std::cos(0.5 * s.P); }

// cos(P/2) vanishes only for k = N/2; exact test on the integers.
bool is_degenerate(const RingSector& s) { return 2 * s.k == s.N; }

// e^{-N v / 2} cosh(v (N/2 - X) + i pi k / 2), bounded for Re v >= 0.
ComplexSequence raw_amplitude(const RingSector& s, cplx v) {
  const double phi = 0.5 * kPi * s.k;
  ComplexSequence a(s.N);
  for (int x = 0; x < s.N; ++x)
    a[x] = 0.5 * (std::exp(-v * static_cast<double>(x) + kI * phi) +
                  std::exp(-v * static_cast<double>(s.N - x) - kI * phi));
  return a;
}

double interior_norm(const ComplexSequence& a) {
  double sum = 0.0;
  for (std::size_t x = 1; x < a.size(); ++x) sum += std::norm(a[x]);
  return std::sqrt(sum);
}

// Unit norm over X = 1 .. N-1, largest component real and positive (the
// first of equal-magnitude components wins).
ComplexSequence normalise(ComplexSequence a) {
  const double norm = interior_norm(a);
  double largest = 0.0;
  for (std::size_t x = 1; x < a.size(); ++x) largest = std::max(largest, std::abs(a[x]));
  cplx phase{1.0, 0.0};
  for (std::size_t x = 1; x < a.size(); ++x)
    if (std::abs(a[x]) >= (1.0 - 1e-12) * largest) {
      phase = a[x] / std::abs(a[x]);
      break;
    }
  for (auto& value : a) value /= phase * norm;
  return a;
}

struct PhysicalMode {
  double E = 0.0;
  std::vector<double> a;  // X = 1 .. N-1
};

// Eigenpairs of the relative equation restricted to a(N - X) = (-1)^k a(X).
std::vector<PhysicalMode> physical_modes(int N, int k, double J) {
  const RealMatrix m = relative_equation_matrix(N, 2.0 * kPi * k / N, J);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  // orthonormal parity-adapted basis on indices X - 1
  std::vector<std::vector<double>> basis;
  for (int x = 1; 2 * x < N; ++x) {
    std::vector<double> u(N - 1, 0.0);
    u[x - 1] = std::sqrt(0.5);
    u[N - x - 1] = sign * std::sqrt(0.5);
    basis.push_back(u);
  }
  if (N % 2 == 0 && sign > 0.0) {
    std::vector<double> u(N - 1, 0.0);
    u[N / 2 - 1] = 1.0;
    basis.push_back(u);
  }
  const std::size_t d = basis.size();
  ComplexMatrix reduced(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      for (int r = 0; r < N - 1; ++r) {
        if (basis[i][r] == 0.0) continue;
        for (int c = std::max(0, r - 1); c <= std::min(N - 2, r + 1); ++c)
          sum += basis[i][r] * m(r, c) * basis[j][c];
      }
      reduced(i, j) = sum;
    }
  const auto es = hermitian_eigen(reduced);
  std::vector<PhysicalMode> out;
  for (std::size_t n = 0; n < d; ++n) {
    PhysicalMode mode{es.values[n], std::vector<double>(N - 1, 0.0)};
    // the reduced matrix is real, so the eigenvector is real up to a phase
    cplx phase{1.0, 0.0};
    for (const cplx& c : es.vectors[n])
      if (std::abs(c) > 1e-8) {
        phase = c / std::abs(c);
        break;
      }
    for (std::size_t j = 0; j < d; ++j) {
      const double coeff = (es.vectors[n][j] / phase).real();
      for (int r = 0; r < N - 1; ++r) mode.a[r] += coeff * basis[j][r];
    }
    out.push_back(std::move(mode));
  }
  return out;
}

std::vector<TwoMagnonState> solve_degenerate(const RingSector& sector, const RingModel& model) {
  std::vector<TwoMagnonState> out;
  for (const auto& mode : physical_modes(sector.N, sector.k, model.J)) {
    TwoMagnonState st;
    st.sector = sector;
    st.v = cplx{kNaN, kNaN};
    st.E = mode.E;
    st.classification =
        mode.E < 2.0 * model.J * (1.0 - 1e-9) ? StateClass::bound : StateClass::scattered;
    ComplexSequence a(sector.N, 0.0);
    for (int x = 1; x < sector.N; ++x) a[x] = mode.a[x - 1];
    st.amplitude = normalise(std::move(a));
    st.C = cplx{kNaN, kNaN};
    out.push_back(std::move(st));
  }
  return out;
}

StateClass classify(const RingSector& s, cplx v) {
  if (v.real() > 0.0) return StateClass::bound;
  if (v == cplx{0.0, 0.0}) return StateClass::free_boundary;
  if (std::abs(std::cos(v.imag()) - half_cos(s)) < kFreeBoundaryTol)
    return StateClass::free_boundary;
  return StateClass::scattered;
}

cplx fit_constant(const RingSector& s, cplx v, const ComplexSequence& a) {
  const GreenParams probe{s.N, v, 0.0, s.Delta, 0};
  if (min_resonance_distance(probe) < 1e-9) return cplx{kNaN, kNaN};
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (int x = 1; x < s.N; ++x) {
    const cplx f = fourier_amplitude(s, v, x);
    num += std::conj(f) * a[x];
    den += std::norm(f);
  }
  return num / den;
}

std::vector<cplx> find_roots(const RingSector& s, const RingSolveOptions& opt, int points) {
  const double delta_half = 0.5 * s.Delta;
  const cplx real_rot = std::polar(1.0, delta_half);
  const cplx pi_rot = std::polar(1.0, -0.5 * (s.N * kPi - s.Delta));
  auto regular = [&s](cplx v) { return eigenenergy_residual_regular(s, v); };
  const std::vector<ScanLine> lines = {
      {[](double u) { return cplx{u, 0.0}; },
       [&](cplx v) { return (regular(v) * real_rot).real(); }, 1e-6, opt.v_max, true},
      {[](double u) { return cplx{u, kPi}; },
       [&](cplx v) { return (regular(v) * pi_rot).real(); }, 1e-6, opt.v_max, true},
      {[](double w) { return cplx{0.0, w}; }, [&](cplx v) { return regular(v).real(); }, 1e-6,
       kPi - 1e-6, false},
  };
  std::vector<cplx> roots;
  for (const auto& line : lines)
    for (cplx v : scan_line(line, points)) roots.push_back(v);
  for (cplx end : {cplx{0.0, 0.0}, cplx{0.0, kPi}})
    if (std::abs(regular(end)) < kEndpointTol) roots.push_back(end);
  std::erase_if(roots, [&s](cplx v) { return interior_norm(raw_amplitude(s, v)) < kNullAmplitude; });
  return roots;
}

}  // namespace

void RingModel::validate() const {
  if (N < 3) throw DomainError("RingModel: N must be >= 3");
  if (!(J > 0.0) || !std::isfinite(J)) throw DomainError("RingModel: J must be positive");
}

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::bound:
      return "bound";
    case StateClass::scattered:
      return "scattered";
    case StateClass::free_boundary:
      return "free_boundary";
  }
  return "unknown";
}

RingSector make_sector(int N, int k) {
  if (N < 3) throw DomainError("make_sector: N must be >= 3");
  if (k < 0 || k >= N) throw DomainError("make_sector: k must lie in [0, N)");
  RingSector s;
  s.N = N;
  s.k = k;
  s.P = 2.0 * kPi * k / N;
  s.parity = (k % 2 == 0) ? RingParity::symmetric : RingParity::antisymmetric;
  s.Delta = (k % 2 == 0) ? 0.0 : kPi;
  s.Q_grid = make_grid(N, s.Delta);
  return s;
}

int sector_dimension(int N, int k) {
  if (N < 3 || k < 0 || k >= N) throw DomainError("sector_dimension: invalid N or k");
  if (N % 2 == 1) return (N - 1) / 2;
  return (k % 2 == 0) ? N / 2 : N / 2 - 1;
}

cplx eigenenergy_residual(const RingSector& s, cplx v) {
  const cplx arg = 0.5 * (static_cast<double>(s.N) * v - kI * s.Delta);
  // coth in the form that does not overflow for large |Re arg|
  const double sign = arg.real() >= 0.0 ? 1.0 : -1.0;
  const cplx e = std::exp(-2.0 * sign * arg);
  if (std::abs(1.0 - e) < 1e-12) throw PoleError("eigenenergy_residual: coth is singular");
  const cplx coth = sign * (1.0 + e) / (1.0 - e);
  return (std::cosh(v) - half_cos(s)) * coth - std::sinh(v);
}

cplx eigenenergy_residual_regular(const RingSector& s, cplx v) {
  const cplx arg = 0.5 * (static_cast<double>(s.N) * v - kI * s.Delta);
  const double r = std::abs(arg.real());
  const cplx up = std::exp(arg - r), down = std::exp(-arg - r);
  const cplx ch = 0.5 * (up + down), sh = 0.5 * (up - down);
  return (std::cosh(v) - half_cos(s)) * ch - std::sinh(v) * sh;
}

ComplexSequence amplitude(const RingSector& sector, cplx v) {
  return normalise(raw_amplitude(sector, v));
}

ComplexSequence amplitude(const TwoMagnonState& state) {
  if (is_degenerate(state.sector)) return state.amplitude;
  return amplitude(state.sector, state.v);
}

cplx fourier_amplitude(const RingSector& s, cplx v, long long X) {
  // cos Q cos QX = (cos Q(X+1) + cos Q(X-1)) / 2, and green_cos carries 2/N
  const GreenParams up{s.N, v, 0.0, s.Delta, X + 1};
  const GreenParams down{s.N, v, 0.0, s.Delta, X - 1};
  return 0.25 * (green_cos(up) + green_cos(down));
}

std::vector<TwoMagnonState> solve_sector(const RingSector& sector, const RingModel& model,
                                         const RingSolveOptions& options) {
  model.validate();
  if (sector.N != model.N) throw DomainError("solve_sector: sector and model disagree on N");
  if (options.grid_points < 16) throw DomainError("solve_sector: grid_points must be >= 16");
  if (!(options.v_max > 0.0)) throw DomainError("solve_sector: v_max must be positive");
  if (is_degenerate(sector)) return solve_degenerate(sector, model);

  const int expected = sector_dimension(sector.N, sector.k);
  std::vector<cplx> roots;
  // roots on the imaginary line are ~pi/N apart
  int points = std::max(options.grid_points, 16 * sector.N);
  for (int attempt = 0; attempt <= options.max_refinements; ++attempt, points *= 2) {
    roots = find_roots(sector, options, points);
    if (static_cast<int>(roots.size()) == expected) break;
  }
  if (static_cast<int>(roots.size()) != expected)
    throw RootCountMismatch("solve_sector: found " + std::to_string(roots.size()) +
                            " roots, sector holds " + std::to_string(expected) + " states");

  const double c = half_cos(sector);
  std::vector<TwoMagnonState> out;
  for (cplx v : roots) {
    TwoMagnonState st;
    st.sector = sector;
    st.v = v;
    st.E = 2.0 * model.J * (1.0 - c * std::cosh(v).real());
    st.classification = classify(sector, v);
    st.amplitude = amplitude(sector, v);
    st.C = st.classification == StateClass::free_boundary ? cplx{kNaN, kNaN}
                                                          : fit_constant(sector, v, st.amplitude);
    out.push_back(std::move(st));
  }
  std::sort(out.begin(), out.end(), [](const TwoMagnonState& a, const TwoMagnonState& b) {
    return a.E < b.E;
  });
  return out;
}

ComplexMatrix two_magnon_block(const RingModel& model) {
  model.validate();
  const int n = model.N;
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  int dim = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) index[a][b] = dim++;
  ComplexMatrix h(dim);
  const double J = model.J;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int row = index[a][b];
      std::vector<bool> down(n, false);
      down[a] = down[b] = true;
      int antiparallel = 0;
      for (int i = 0; i < n; ++i)
        if (down[i] != down[(i + 1) % n]) ++antiparallel;
      h(row, row) += 0.5 * J * antiparallel;
      // -J/2 (S+S- + S-S+) moves a flipped spin to an up neighbour
      for (int moving : {a, b}) {
        const int other = moving == a ? b : a;
        for (int step : {-1, 1}) {
          const int target = ((moving + step) % n + n) % n;
          if (down[target]) continue;
          const int lo = std::min(target, other), hi = std::max(target, other);
          h(row, index[lo][hi]) += -0.5 * J;
        }
      }
    }
  return h;
}

RingEdSector ed_sector(const RingModel& model, int k) {
  model.validate();
  const int n = model.N;
  if (k < 0 || k >= n) throw DomainError("ed_sector: k must lie in [0, N)");
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  int dim = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) index[a][b] = dim++;
  const ComplexMatrix h = two_magnon_block(model);
  const double P = 2.0 * kPi * k / n;

  std::vector<std::vector<cplx>> basis;
  for (int x = 1; 2 * x <= n; ++x) {
    std::vector<cplx> b(dim, 0.0);
    for (int n1 = 0; n1 < n; ++n1) {
      const int n2 = (n1 + x) % n;
      b[index[std::min(n1, n2)][std::max(n1, n2)]] += std::polar(1.0, P * (n1 + 0.5 * x));
    }
    double norm = 0.0;
    for (const cplx& c : b) norm += std::norm(c);
    if (norm < 1e-20) continue;  // X = N/2 cancels for odd k
    for (auto& c : b) c /= std::sqrt(norm);
    basis.push_back(std::move(b));
  }
  const std::size_t d = basis.size();
  std::vector<std::vector<cplx>> hb(d, std::vector<cplx>(dim, 0.0));
  for (std::size_t j = 0; j < d; ++j)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (h(r, c) != cplx{0.0, 0.0}) hb[j][r] += h(r, c) * basis[j][c];
  ComplexMatrix sector(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx sum = 0.0;
      for (int r = 0; r < dim; ++r) sum += std::conj(basis[i][r]) * hb[j][r];
      sector(i, j) = sum;
    }
  const auto es = hermitian_eigen(sector, 1e-15);
  return {es.values, es.vectors};
}

std::map<int, std::vector<double>> ed_oracle(const RingModel& model) {
  model.validate();
  if (model.N > 24) throw DomainError("ed_oracle: N must be <= 24");
  std::map<int, std::vector<double>> out;
  for (int k = 0; k < model.N; ++k) out[k] = ed_sector(model, k).values;
  return out;
}

std::vector<cplx> to_separation_basis(const ComplexSequence& a, int N) {
  if (static_cast<int>(a.size()) != N) throw DomainError("to_separation_basis: need N values");
  std::vector<cplx> y;
  for (int x = 1; 2 * x < N; ++x) y.push_back(a[x]);
  if (N % 2 == 0 && std::abs(a[N / 2]) > 0.0) y.push_back(a[N / 2] / std::sqrt(2.0));
  double norm = 0.0;
  for (const cplx& c : y) norm += std::norm(c);
  for (auto& c : y) c /= std::sqrt(norm);
  return y;
}

RealMatrix relative_equation_matrix(int N, double P, double J) {
  if (N < 3) throw DomainError("relative_equation_matrix: N must be >= 3");
  const int d = N - 1;
  RealMatrix m(d);
  const double hop = -J * std::cos(0.5 * P);
  for (int i = 0; i < d; ++i) {
    m(i, i) = (i == 0 || i == d - 1) ? J : 2.0 * J;
    if (i + 1 < d) m(i, i + 1) = m(i + 1, i) = hop;
  }
  return m;
}

std::vector<double> relative_equation_spectrum(int N, int k, double J) {
  if (N < 3 || k < 0 || k >= N) throw DomainError("relative_equation_spectrum: invalid N or k");
  std::vector<double> out;
  for (const auto& mode : physical_modes(N, k, J)) out.push_back(mode.E);
  return out;
}

BoundStateLimit bound_state_limit(double P, double J) {
  const double c = std::cos(0.5 * P);
  if (!(std::abs(P) < kPi) || c <= 0.0)
    throw DomainError("bound_state_limit: requires |P| < pi");
  const double s = std::sin(0.5 * P);
  return {-std::log(c), J * s * s};
}

}  // namespace latticegreen
