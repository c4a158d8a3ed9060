#include "doctest.h"

#include <cmath>
#include <numbers>

#include "latticegreen/error.hpp"
#include "latticegreen/heisenberg_ring.hpp"

using namespace latticegreen;

constexpr double kPi = std::numbers::pi;

namespace {

const TwoMagnonState* lowest_bound(const std::vector<TwoMagnonState>& states) {
  for (const auto& s : states)
    if (s.classification == StateClass::bound) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("make_sector") {
  const auto s2 = make_sector(8, 2);
  CHECK(s2.parity == RingParity::symmetric);
  CHECK(s2.Delta == 0.0);
  CHECK(s2.Q_grid.values[0] == 0.0);
  CHECK(s2.Q_grid.values[1] == doctest::Approx(kPi / 4));
  const auto s3 = make_sector(8, 3);
  CHECK(s3.parity == RingParity::antisymmetric);
  CHECK(s3.Delta == doctest::Approx(kPi));
  CHECK(s3.Q_grid.values[0] == doctest::Approx(kPi / 8));
  CHECK(s3.Q_grid.values[1] == doctest::Approx(3 * kPi / 8));
  const auto s0 = make_sector(3, 0);
  CHECK(s0.Q_grid.values.size() == 3);
  CHECK(s0.Q_grid.values[2] == doctest::Approx(4 * kPi / 3));
  CHECK_THROWS_AS(make_sector(8, 8), DomainError);
  CHECK_THROWS_AS(make_sector(8, -1), DomainError);
  CHECK_THROWS_AS(make_sector(2, 0), DomainError);
}

TEST_CASE("sector dimensions add up to N(N-1)/2") {
  for (int n = 3; n <= 20; ++n) {
    int total = 0;
    for (int k = 0; k < n; ++k) total += sector_dimension(n, k);
    CHECK(total == n * (n - 1) / 2);
  }
}

TEST_CASE("eigenenergy_residual") {
  const auto s0 = make_sector(8, 0);
  // coth -> 1 at large real v
  const cplx far = eigenenergy_residual(s0, 12.0);
  CHECK(std::abs(far - (std::cosh(12.0) - 1.0 - std::sinh(12.0))) < 1e-10);
  CHECK_THROWS_AS(eigenenergy_residual(s0, 0.0), PoleError);
  // thermodynamic limit of the bound state
  const double P = kPi / 2;
  RingSector big = make_sector(400, 100);
  REQUIRE(big.P == doctest::Approx(P));
  CHECK(std::abs(eigenenergy_residual(big, -std::log(std::cos(P / 2)))) < 1e-12);
  // pole-free form vanishes at the same roots
  const auto states = solve_sector(make_sector(8, 2), RingModel{8, 1.0});
  for (const auto& st : states) {
    CHECK(std::abs(eigenenergy_residual_regular(st.sector, st.v)) < 1e-12);
    if (st.classification == StateClass::bound)
      CHECK(std::abs(eigenenergy_residual(st.sector, st.v)) < 1e-10);
  }
}

TEST_CASE("ED oracle: counting and trace") {
  const auto three = ed_oracle(RingModel{3, 1.0});
  for (const auto& [k, values] : three) CHECK(values.size() == 1);
  for (int n : {5, 8}) {
    const RingModel model{n, 1.3};
    const auto block = two_magnon_block(model);
    CHECK(block.size() == static_cast<std::size_t>(n * (n - 1) / 2));
    double sum = 0.0;
    for (const auto& [k, values] : ed_oracle(model))
      for (double e : values) sum += e;
    CHECK(sum == doctest::Approx(block.trace().real()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ed_oracle(RingModel{25, 1.0}), DomainError);
}

TEST_CASE("spectral completeness against ED for N in {6, 8, 12, 16}") {
  for (int n : {6, 8, 12, 16}) {
    const RingModel model{n, 1.0};
    const auto ed = ed_oracle(model);
    for (int k = 0; k < n; ++k) {
      const auto states = solve_sector(make_sector(n, k), model);
      const auto& ref = ed.at(k);
      REQUIRE(states.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i)
        CHECK(std::abs(states[i].E - ref[i]) <= 1e-9 * model.J);
    }
  }
}

TEST_CASE("N=4, k=0 roots reproduce ED") {
  const RingModel model{4, 1.0};
  const auto states = solve_sector(make_sector(4, 0), model);
  const auto ref = ed_sector(model, 0).values;
  REQUIRE(states.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(states[i].E - ref[i]) < 1e-10);
}

TEST_CASE("relative equation matrix") {
  const auto m = relative_equation_matrix(8, kPi / 2, 2.0);
  CHECK(m(3, 3) == 4.0);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(6, 6) == 2.0);
  CHECK(m(3, 4) == doctest::Approx(-2.0 * std::cos(kPi / 4)));
  CHECK(m(4, 3) == m(3, 4));
  CHECK(m(2, 5) == 0.0);
  const RingModel model{6, 1.0};
  for (int k = 0; k < 6; ++k) {
    const auto rel = relative_equation_spectrum(6, k);
    const auto ref = ed_sector(model, k).values;
    REQUIRE(rel.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(rel[i] - ref[i]) < 1e-10);
  }
}

TEST_CASE("energy relation, symmetry and normalisation of every state") {
  for (int n : {7, 12}) {
    const RingModel model{n, 1.7};
    for (int k = 0; k < n; ++k) {
      for (const auto& st : solve_sector(make_sector(n, k), model)) {
        const auto& a = st.amplitude;
        REQUIRE(static_cast<int>(a.size()) == n);
        double norm = 0.0;
        for (int x = 1; x < n; ++x) norm += std::norm(a[x]);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int x = 1; x < n; ++x) CHECK(std::abs(a[x] - sign * a[n - x]) < 1e-10);
        if (2 * k != n) {
          const double e = 2.0 * model.J * (1.0 - std::cos(st.sector.P / 2) * std::cosh(st.v).real());
          CHECK(std::abs(st.E - e) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("eigenvector overlap with ED") {
  for (int n : {8, 9, 12}) {
    const RingModel model{n, 1.0};
    for (int k = 0; k < n; ++k) {
      const auto states = solve_sector(make_sector(n, k), model);
      const auto ed = ed_sector(model, k);
      for (std::size_t i = 0; i < states.size(); ++i) {
        // degenerate ED levels admit any rotation inside the eigenspace
        const bool isolated = (i == 0 || ed.values[i] - ed.values[i - 1] > 1e-8) &&
                              (i + 1 == states.size() || ed.values[i + 1] - ed.values[i] > 1e-8);
        if (!isolated) continue;
        const auto y = to_separation_basis(states[i].amplitude, n);
        CHECK(overlap(y, ed.vectors[i]) >= 1.0 - 1e-8);
      }
    }
  }
}

TEST_CASE("N=8, k=2: bound state") {
  const RingModel model{8, 1.0};
  const auto states = solve_sector(make_sector(8, 2), model);
  const auto* bound = lowest_bound(states);
  REQUIRE(bound != nullptr);
  CHECK(bound->v.imag() == 0.0);
  const auto ed = ed_sector(model, 2);
  CHECK(std::abs(bound->E - ed.values[0]) < 1e-9);
  CHECK(overlap(to_separation_basis(bound->amplitude, 8), ed.vectors[0]) >= 1.0 - 1e-8);
  // nodeless in a symmetric sector
  for (int x = 1; x < 8; ++x) CHECK(bound->amplitude[x].real() > 0.0);
}

TEST_CASE("scattered states oscillate") {
  for (int k : {0, 2, 4}) {
    for (const auto& st : solve_sector(make_sector(12, k), RingModel{12, 1.0})) {
      if (st.classification != StateClass::scattered) continue;
      int changes = 0;
      for (int x = 1; x + 1 <= 6; ++x)
        if ((st.amplitude[x].real() < 0.0) != (st.amplitude[x + 1].real() < 0.0)) ++changes;
      CHECK(changes >= 1);
    }
  }
}

TEST_CASE("N=16, k=1: imaginary roots") {
  const auto states = solve_sector(make_sector(16, 1), RingModel{16, 1.0});
  int imaginary = 0;
  for (const auto& st : states)
    if (st.v.real() == 0.0) ++imaginary;
  CHECK(imaginary >= 16 / 2 - 2);
  CHECK(imaginary <= 16 / 2);
}

TEST_CASE("P = pi is the degenerate sector") {
  for (int n : {6, 8, 10}) {
    const RingModel model{n, 1.0};
    const auto states = solve_sector(make_sector(n, n / 2), model);
    const auto ref = ed_sector(model, n / 2).values;
    REQUIRE(states.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(std::abs(states[i].E - ref[i]) < 1e-10);
      CHECK(std::isnan(states[i].v.real()));
    }
  }
}

TEST_CASE("amplitude equals the Fourier form") {
  for (int k : {1, 2, 3, 7}) {
    for (const auto& st : solve_sector(make_sector(10, k), RingModel{10, 1.0})) {
      if (std::isnan(st.C.real())) {
        CHECK(st.classification == StateClass::free_boundary);
        continue;
      }
      for (int x = 1; x < 10; ++x)
        CHECK(std::abs(st.C * fourier_amplitude(st.sector, st.v, x) - st.amplitude[x]) < 1e-10);
    }
  }
}

TEST_CASE("free-boundary states sit on the continuum edge") {
  const auto states = solve_sector(make_sector(10, 2), RingModel{10, 1.0});
  const double c = std::cos(make_sector(10, 2).P / 2);
  int found = 0;
  for (const auto& st : states)
    if (st.classification == StateClass::free_boundary) {
      ++found;
      CHECK(st.E == doctest::Approx(2.0 * (1.0 - c * c)).epsilon(1e-12));
    }
  CHECK(found == 1);
  // v = 0 at P = 0 is the bottom of the two-free-magnon band
  const auto zero = solve_sector(make_sector(10, 0), RingModel{10, 1.0});
  CHECK(std::abs(zero.front().E) < 1e-14);
  CHECK(zero.front().classification == StateClass::free_boundary);
}

TEST_CASE("bound_state_limit") {
  const auto half = bound_state_limit(kPi / 2);
  CHECK(half.v == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-15));
  CHECK(half.E == doctest::Approx(0.5).epsilon(1e-15));
  const auto zero = bound_state_limit(0.0);
  CHECK(zero.v == 0.0);
  CHECK(zero.E == 0.0);
  CHECK_THROWS_AS(bound_state_limit(kPi), DomainError);
}

TEST_CASE("N=64, k=16 bound state approaches the infinite-ring value") {
  const auto states = solve_sector(make_sector(64, 16), RingModel{64, 1.0});
  const auto* bound = lowest_bound(states);
  REQUIRE(bound != nullptr);
  CHECK(std::abs(bound->E - 0.5) <= 1e-6);
  CHECK(std::abs(bound->v.real() - bound_state_limit(kPi / 2).v) <= 1e-6);
}

TEST_CASE("bound-state doublet splitting decays with N") {
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32}) {
    const RingModel model{n, 1.0};
    const auto even = solve_sector(make_sector(n, n / 4), model);
    const auto odd = solve_sector(make_sector(n, n / 4 + 1), model);
    const auto* s = lowest_bound(even);
    const auto* a = lowest_bound(odd);
    REQUIRE(s != nullptr);
    REQUIRE(a != nullptr);
    const double split = std::abs(a->E - s->E);
    CHECK(split < previous);
    previous = split;
  }
}

TEST_CASE("larger rings solve without count mismatches") {
  for (int n : {33, 64}) {
    const RingModel model{n, 1.0};
    for (int k = 0; k < n; ++k)
      CHECK(solve_sector(make_sector(n, k), model).size() ==
            static_cast<std::size_t>(sector_dimension(n, k)));
  }
}
