#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "latticegreen/error.hpp"
#include "latticegreen/green_closed.hpp"
#include "latticegreen/open_chain.hpp"

using namespace latticegreen;

constexpr double kPi = std::numbers::pi;

namespace {

double overlap_ed(const ComplexSequence& a, const std::vector<double>& b) {
  cplx dot{0.0, 0.0};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += b[i] * b[i];
  }
  return std::norm(dot) / (na * nb);
}

double relative_residual(const OpenChainModel& m, cplx v) {
  const double lm1 = m.L - 1;
  const cplx ev = std::exp(v), emv = std::exp(-v);
  const double scale =
      std::exp(2.0 * v.real() * lm1) * (std::abs(ev) + std::abs(m.alpha())) *
          (std::abs(ev) + std::abs(m.beta())) +
      (std::abs(emv) + std::abs(m.alpha())) * (std::abs(emv) + std::abs(m.beta()));
  return std::abs(eigenenergy_residual_open(m, v)) / scale;
}

}  // namespace

TEST_CASE("build_model") {
  CHECK(build_model(4, 1.0, 0.0, 0.0).E0 == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(build_model(2, 0.0, 1.0, 0.0).E0 == doctest::Approx(-0.5).epsilon(1e-15));
  const auto m = build_model(8, 1.3, 0.2, 0.7);
  CHECK(m.E0 == doctest::Approx(-5.0).epsilon(1e-14));
  CHECK(m.alpha() == doctest::Approx(0.9));
  CHECK(m.beta() == doctest::Approx(-0.1));
  CHECK(m.grid.values.size() == 16);
  CHECK(m.grid.values[1] == doctest::Approx(kPi / 8));
  CHECK_THROWS_AS(build_model(1, 1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(build_model(4, std::nan(""), 0.0, 0.0), DomainError);
}

TEST_CASE("two-site chain by hand") {
  const double eta = 0.7, mu = 0.3, nu = -0.4;
  const auto m = build_model(2, eta, mu, nu);
  const auto h = open_hamiltonian(m);
  CHECK(h(0, 0) == doctest::Approx(eta / 2 + mu));
  CHECK(h(1, 1) == doctest::Approx(eta / 2 + nu));
  CHECK(h(0, 1) == -0.5);
  CHECK(h(1, 0) == -0.5);
  const double mean = eta / 2 + (mu + nu) / 2;
  const double split = std::sqrt(0.25 * (mu - nu) * (mu - nu) + 0.25);
  const auto states = solve_open(m);
  REQUIRE(states.size() == 2);
  CHECK(std::abs(states[0].E - (m.E0 + mean - split)) < 1e-12);
  CHECK(std::abs(states[1].E - (m.E0 + mean + split)) < 1e-12);
  const auto ed = ed_oracle_open(m);
  CHECK(std::abs(ed.energies[0] - (m.E0 + mean - split)) < 1e-12);
  CHECK(std::abs(ed.energies[1] - (m.E0 + mean + split)) < 1e-12);
}

TEST_CASE("residual symmetries") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int L = 2 + t % 9;
    const auto m = build_model(L, 1.0 + u(rng), u(rng), u(rng));
    const auto swapped = build_model(L, m.eta, m.nu, m.mu);
    const cplx v{u(rng), 3.0 * u(rng)};
    const cplx r = eigenenergy_residual_open(m, v);
    const cplx rm = eigenenergy_residual_open(m, -v);
    // v -> -v maps the residual to minus itself times e^{-2v(L-1)}
    const cplx expect = -std::exp(-2.0 * v * static_cast<double>(L - 1)) * r;
    CHECK(std::abs(rm - expect) < 1e-12 * (1.0 + std::abs(rm)));
    CHECK(std::abs(eigenenergy_residual_open(swapped, v) - r) < 1e-12 * (1.0 + std::abs(r)));
    const double h = 1e-6;
    const cplx numeric =
        (eigenenergy_residual_open(m, v + h) - eigenenergy_residual_open(m, v - h)) / (2.0 * h);
    const cplx exact = eigenenergy_residual_open_derivative(m, v);
    CHECK(std::abs(numeric - exact) < 1e-6 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("unit product of boundary parameters gives harmonic roots") {
  const auto m = build_model(4, 1.0, 1.0, 1.0);
  for (int mm = 1; mm <= 4; ++mm)
    CHECK(std::abs(eigenenergy_residual_open(m, cplx{0.0, kPi * mm / 4})) < 1e-12);
  const auto states = solve_open(m);
  REQUIRE(states.size() == 4);
  std::vector<double> w;
  for (const auto& s : states) {
    CHECK(std::abs(s.v.real()) < 1e-12);
    w.push_back(s.v.imag());
  }
  std::sort(w.begin(), w.end());
  for (int mm = 1; mm <= 4; ++mm) CHECK(std::abs(w[mm - 1] - kPi * mm / 4) < 1e-10);

  // a b = 1 with a != b: L - 1 harmonic roots plus one bound state e^v = max(a, b)
  const int L = 7;
  const auto g = build_model(L, 1.0, 0.1, -0.125);
  REQUIRE(g.alpha() * g.beta() == doctest::Approx(1.0));
  const auto gs = solve_open(g);
  REQUIRE(gs.size() == L);
  int bound = 0;
  for (const auto& s : gs) {
    if (s.classification == MagnonClass::bound) {
      ++bound;
      CHECK(std::abs(s.v.real() - std::log(1.25)) < 1e-10);
      continue;
    }
    const double m = s.v.imag() * L / kPi;
    CHECK(std::abs(m - std::round(m)) < 1e-9);
  }
  CHECK(bound == 1);
}

TEST_CASE("strong end fields approach fixed boundaries") {
  const int L = 8;
  const auto m = build_model(L, 1.0, 1e6, 1e6);
  const auto states = solve_open(m);
  REQUIRE(states.size() == L);
  std::vector<double> p;
  for (const auto& s : states)
    if (s.classification == MagnonClass::scattered) p.push_back(s.v.imag());
  REQUIRE(p.size() == L - 2);
  std::sort(p.begin(), p.end());
  for (int k = 0; k < L - 2; ++k) CHECK(std::abs(p[k] - kPi * (k + 1) / (L - 1)) < 1e-4);

  // interior of the ED eigenvectors are standing waves sin(p x)
  const auto ed = ed_oracle_open(m);
  for (int k = 0; k < L - 2; ++k) {
    const auto& vec = ed.vectors[k];
    const double q = kPi * (k + 1) / (L - 1);
    std::vector<double> wave(L);
    for (int x = 0; x < L; ++x) wave[x] = std::sin(q * x);
    double dot = 0.0, nw = 0.0;
    for (int x = 0; x < L; ++x) {
      dot += wave[x] * vec[x];
      nw += wave[x] * wave[x];
    }
    CHECK(dot * dot / nw > 1.0 - 1e-8);
  }
}

TEST_CASE("spectrum, amplitudes and constants against ED") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ue(0.0, 2.0), uf(-1.0, 1.0);
  for (int L : {2, 4, 8, 16}) {
    double worst_e = 0.0, worst_overlap = 1.0, worst_res = 0.0, worst_det = 0.0;
    double worst_bc = 0.0, worst_mirror = 1.0, worst_recon = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto m = build_model(L, ue(rng), uf(rng), uf(rng));
      const auto states = solve_open(m);
      const auto ed = ed_oracle_open(m);
      REQUIRE(states.size() == static_cast<std::size_t>(L));
      const auto mirror = solve_open(build_model(L, m.eta, m.nu, m.mu));
      for (int i = 0; i < L; ++i) {
        const auto& s = states[i];
        worst_e = std::max(worst_e, std::abs(s.E - ed.energies[i]));
        worst_overlap = std::min(worst_overlap, overlap_ed(s.amplitude, ed.vectors[i]));
        worst_res = std::max(worst_res, relative_residual(m, s.v));
        CHECK(s.E == doctest::Approx(m.E0 + m.eta - std::cosh(s.v).real()));
        CHECK(std::abs(std::cosh(s.v).imag()) < 1e-12);

        double norm = 0.0;
        for (const auto& c : s.amplitude) norm += std::norm(c);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

        // bulk recurrence continued to x = -1 reproduces the boundary equation
        const cplx a_m1 = 2.0 * std::cosh(s.v) * s.amplitude[0] - (L > 1 ? s.amplitude[1] : 0.0);
        worst_bc = std::max(worst_bc, std::abs(a_m1 - m.alpha() * s.amplitude[0]));

        ComplexSequence reversed(mirror[i].amplitude.rbegin(), mirror[i].amplitude.rend());
        worst_mirror = std::min(worst_mirror, overlap(s.amplitude, reversed));

        const auto M = constants_system(m, s.v);
        const cplx det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        const double scale = std::abs(M(0, 0) * M(1, 1)) + std::abs(M(0, 1) * M(1, 0));
        worst_det = std::max(worst_det, std::abs(det) / std::max(1.0, scale));

        REQUIRE(std::isfinite(s.C1.real()));
        for (int x = 0; x < L; ++x) {
          const cplx d = -s.C1 * green_closed({2 * L, s.v, 0.0, 0.0, x}) -
                         s.C2 * green_closed({2 * L, s.v, 0.0, 0.0, x - L + 1});
          worst_recon = std::max(worst_recon, std::abs(d - s.amplitude[x]));
        }
      }
    }
    INFO("L = " << L);
    CHECK(worst_e < 1e-9);
    CHECK(worst_overlap > 1.0 - 1e-8);
    CHECK(worst_res < 1e-10);
    CHECK(worst_det < 1e-10);
    CHECK(worst_bc < 1e-10);
    CHECK(worst_mirror > 1.0 - 1e-8);
    CHECK(worst_recon < 1e-9);
  }
}

TEST_CASE("regression model") {
  const auto m = build_model(8, 1.3, 0.2, 0.7);
  const auto states = solve_open(m);
  const auto ed = ed_oracle_open(m);
  REQUIRE(states.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(states[i].E - ed.energies[i]) < 1e-9);
  // a = 0.9 < 1, b = -0.1: no bound state survives
  for (const auto& s : states) CHECK(s.classification == MagnonClass::scattered);
}

TEST_CASE("bound states") {
  // strong attractive left field: e^v close to a = eta - 2 mu = -3
  const auto m = build_model(12, 1.0, 2.0, 0.0);
  const auto states = solve_open(m);
  const auto ed = ed_oracle_open(m);
  REQUIRE(states.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(std::abs(states[i].E - ed.energies[i]) < 1e-9);
  const auto& top = states.back();
  CHECK(top.classification == MagnonClass::bound);
  CHECK(std::abs(top.v.imag() - kPi) < 1e-12);
  CHECK(std::abs(top.v.real() - std::log(3.0)) < 1e-6);
  // localised at the left end
  CHECK(std::abs(top.amplitude[0]) > 0.8);
  CHECK(std::abs(top.amplitude[11]) < 1e-4);

  const auto far = build_model(40, 1.0, -3.0, -3.0);
  const auto fs = solve_open(far);
  const auto fe = ed_oracle_open(far);
  REQUIRE(fs.size() == 40);
  for (int i = 0; i < 40; ++i) CHECK(std::abs(fs[i].E - fe.energies[i]) < 1e-9);
  // the two end states are degenerate to roundoff; compare the pair subspace
  for (int i = 0; i < 40; ++i) {
    double weight = 0.0;
    for (int j = 0; j < 40; ++j)
      if (std::abs(fe.energies[j] - fe.energies[i]) < 1e-9)
        weight += overlap_ed(fs[i].amplitude, fe.vectors[j]);
    CHECK(weight > 1.0 - 1e-8);
  }
}

TEST_CASE("band edge endpoint states") {
  // eta = 1, no fields: the uniform magnon v = 0 is an eigenstate
  const auto m = build_model(6, 1.0, 0.0, 0.0);
  const auto states = solve_open(m);
  REQUIRE(states.size() == 6);
  CHECK(std::abs(states[0].v) == 0.0);
  CHECK(states[0].classification == MagnonClass::scattered);
  CHECK(std::abs(states[0].E - m.E0) < 1e-14);
  for (const auto& c : states[0].amplitude) CHECK(std::abs(c - 1.0 / std::sqrt(6.0)) < 1e-14);
  const auto ed = ed_oracle_open(m);
  for (int i = 0; i < 6; ++i) CHECK(overlap_ed(states[i].amplitude, ed.vectors[i]) > 1.0 - 1e-8);
}

TEST_CASE("amplitude formula") {
  const auto m = build_model(8, 1.3, 0.2, 0.7);
  const cplx v{0.0, 0.9};
  CHECK(std::abs(amplitude_open_formula(m, v, 0) - std::sinh(v)) < 1e-15);
  CHECK(std::abs(amplitude_open_formula(m, v, -1) - m.alpha() * std::sinh(v)) < 1e-15);
  const auto s = solve_open(m)[3];
  ComplexSequence raw(8);
  for (int x = 0; x < 8; ++x) raw[x] = amplitude_open_formula(m, s.v, x);
  CHECK(overlap(raw, s.amplitude) > 1.0 - 1e-12);
  CHECK(std::abs(std::abs(s.amplitude[0]) - s.gamma * std::abs(std::sinh(s.v))) < 1e-14);
  CHECK_THROWS_AS(amplitude_open(m, cplx{std::numeric_limits<double>::quiet_NaN(), 0.0}),
                  DegenerateAmplitude);
}

TEST_CASE("doubled-ring sums") {
  for (int L : {2, 3, 5, 8, 13}) {
    for (double v : {0.05, 0.4, 1.7}) {
      const double den = std::sinh(v) * std::sinh(v * L);
      const int n = 2 * L;
      CHECK(std::abs(green_closed({n, v, 0.0, 0.0, -1}) - std::cosh(v * (L - 1)) / den) <
            1e-12 * std::cosh(v * L) / den);
      CHECK(std::abs(green_closed({n, v, 0.0, 0.0, 0}) - std::cosh(v * L) / den) <
            1e-12 * std::cosh(v * L) / den);
      CHECK(std::abs(green_closed({n, v, 0.0, 0.0, -(L - 1)}) - std::cosh(v) / den) <
            1e-12 * std::cosh(v * L) / den);
      if (L >= 2)
        CHECK(std::abs(green_closed({n, v, 0.0, 0.0, -(L - 2)}) - std::cosh(2 * v) / den) <
              1e-12 * std::cosh(v * L) / den);
    }
  }
}

TEST_CASE("ed oracle") {
  const auto m = build_model(9, 0.8, -0.3, 0.45);
  const auto h = open_hamiltonian(m);
  const auto ed = ed_oracle_open(m);
  double trace = 0.0, sum = 0.0;
  for (int i = 0; i < 9; ++i) trace += h(i, i);
  for (double e : ed.energies) sum += e - m.E0;
  CHECK(std::abs(trace - sum) < 1e-10);
  CHECK(std::is_sorted(ed.energies.begin(), ed.energies.end()));
  CHECK_THROWS_AS(ed_oracle_open(build_model(2049, 1.0, 0.0, 0.0)), DomainError);
}

TEST_CASE("stability") {
  // a = b = 0: e^{2v(L+1)} = 1, p = pi m / (L + 1)
  const auto harmonic = build_model(10, 0.5, 0.25, 0.25);
  const auto r = stability_check(harmonic);
  CHECK(r.unstable);
  CHECK(r.min_excitation == doctest::Approx(0.5 - std::cos(kPi / 11)).epsilon(1e-12));
  CHECK(r.momentum == doctest::Approx(kPi / 11).epsilon(1e-12));

  // a b = 1 (a = b = -1): p = pi m / L
  const auto product = stability_check(build_model(10, 0.5, 0.75, 0.75));
  CHECK(product.unstable);
  CHECK(product.momentum == doctest::Approx(kPi / 10).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uf(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) CHECK_FALSE(stability_check(build_model(12, 2.0, uf(rng), uf(rng))).unstable);

  const auto marginal = stability_check(build_model(200, 1.0, 0.0, 0.0));
  CHECK_FALSE(marginal.unstable);
  CHECK(std::abs(marginal.min_excitation) < 1e-12);
}
