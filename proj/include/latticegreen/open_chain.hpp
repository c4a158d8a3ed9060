#pragma once

#include <complex>
#include <vector>

#include "latticegreen/dft_core.hpp"
#include "latticegreen/linalg.hpp"

namespace latticegreen {

/// Open anisotropic chain of L sites with end fields mu (site 0) and nu
/// (site L-1), in units of J_x. E0 = -eta (L-1)/2 - (mu+nu)/2 is the
/// all-up reference energy; grid holds Q = 2 pi m / (2L) on the doubled ring.
struct OpenChainModel {
  int L = 2;
  double eta = 1.0;
  double mu = 0.0;
  double nu = 0.0;
  double E0 = 0.0;
  QuasimomentumGrid grid;

  double alpha() const { return eta - 2.0 * mu; }
  double beta() const { return eta - 2.0 * nu; }
};

enum class MagnonClass { bound, scattered };

const char* to_string(MagnonClass c);

/// One single-magnon eigenstate: E = E0 + eta - cosh v. amplitude holds
/// a(0 .. L-1) with unit norm and its largest component real positive.
/// gamma is |prefactor| of sinh(v(x+1)) - (eta - 2mu) sinh(vx) (limit form at
/// v = 0, i pi). C1, C2 are the boundary constants of the doubled-ring
/// solution scaled to this amplitude; NaN where the doubled-ring sums are
/// resonant.
struct MagnonState {
  cplx v{0.0, 0.0};
  double E = 0.0;
  MagnonClass classification = MagnonClass::scattered;
  ComplexSequence amplitude;
  double gamma = 0.0;
  cplx C1{0.0, 0.0};
  cplx C2{0.0, 0.0};
};

OpenChainModel build_model(int L, double eta, double mu, double nu);

/// e^{2v(L-1)} (e^v - a)(e^v - b) - (e^{-v} - a)(e^{-v} - b),
/// a = eta - 2mu, b = eta - 2nu.
cplx eigenenergy_residual_open(const OpenChainModel& model, cplx v);

/// d/dv of eigenenergy_residual_open.
cplx eigenenergy_residual_open_derivative(const OpenChainModel& model, cplx v);

struct OpenSolveOptions {
  int grid_points = 2048;
  int max_refinements = 5;
};

/// Bound-state search range max(10, 2 |ln max(|a|, |b|, 2)|).
double open_v_max(const OpenChainModel& model);

/// All L single-magnon states sorted by energy. Roots are bracketed on
/// v = i w (scattered), real v and v = u + i pi (bound), one representative
/// per v <-> -v pair. v = 0 and v = i pi always solve the residual and are
/// kept only where it vanishes to second order. Throws RootCountMismatch if
/// the count is not L after grid refinement.
std::vector<MagnonState> solve_open(const OpenChainModel& model,
                                    const OpenSolveOptions& options = {});

/// a(x) ~ sinh(v(x+1)) - (eta - 2mu) sinh(vx), x = 0 .. L-1, unit norm.
/// Evaluated in an equivalent cancellation-free form when v is a root.
/// Throws DegenerateAmplitude if the sequence vanishes.
ComplexSequence amplitude_open(const OpenChainModel& model, cplx v);

/// Analytic continuation of the unnormalised amplitude formula to any x.
cplx amplitude_open_formula(const OpenChainModel& model, cplx v, long long x);

/// Coefficient matrix M of M (C1, C2)^T = 0 built from the doubled-ring
/// propagator G(X) (N = 2L, no twist):
///   M11 = 1 + [G(-1) - a G(0)]/2,   M12 = [G(-L) - a G(1-L)]/2,
///   M21 = [G(L) - b G(L-1)]/2,      M22 = 1 + [G(1) - b G(0)]/2.
/// det M vanishes at the eigenvalues. Throws ResonantParameter.
ComplexMatrix constants_system(const OpenChainModel& model, cplx v);

struct OpenEdResult {
  std::vector<double> energies;  // absolute, E0 + eigenvalue
  std::vector<std::vector<double>> vectors;
};

/// (H - E0) on the single-magnon states: tridiagonal with diagonal
/// (eta/2 + mu, eta, ..., eta, eta/2 + nu) and off-diagonal -1/2.
RealMatrix open_hamiltonian(const OpenChainModel& model);

/// Tridiagonal diagonalisation of open_hamiltonian. Requires L <= 2048.
OpenEdResult ed_oracle_open(const OpenChainModel& model);

struct StabilityReport {
  bool unstable = false;
  double min_excitation = 0.0;  // min (E - E0)
  double momentum = 0.0;        // Im v of the lowest state
  cplx v{0.0, 0.0};
};

/// Flags eta < 1 models whose lowest magnon has E - E0 < 0.
StabilityReport stability_check(const OpenChainModel& model);

}  // namespace latticegreen
