#pragma once

#include <complex>
#include <map>
#include <vector>

#include "latticegreen/dft_core.hpp"
#include "latticegreen/linalg.hpp"

namespace latticegreen {

/// Periodic ferromagnetic ring H = -J sum_i S_i . S_{i+1}.
struct RingModel {
  int N = 8;
  double J = 1.0;

  void validate() const;
};

enum class RingParity { symmetric, antisymmetric };

/// Total-momentum sector P = 2 pi k / N. Even k: a(X) = a(X + N), Delta = 0;
/// odd k: a(X) = -a(X + N), Delta = pi.
struct RingSector {
  int N = 8;
  int k = 0;
  double P = 0.0;
  RingParity parity = RingParity::symmetric;
  double Delta = 0.0;
  QuasimomentumGrid Q_grid;
};

enum class StateClass { bound, scattered, free_boundary };

const char* to_string(StateClass c);

/// One two-magnon eigenstate. v is the spectral parameter with
/// E = 2J (1 - cos(P/2) cosh v); NaN at P = pi where E does not depend on v.
/// amplitude holds a(X) for X = 0 .. N-1 normalised so that
/// sum_{X=1}^{N-1} |a(X)|^2 = 1 (the self-conjugate X = N/2 counted once).
/// C is the prefactor in b(Q) = C cos Q / (cosh v - cos Q); NaN where that
/// form does not exist (b(Q) concentrated on a grid point, or P = pi).
struct TwoMagnonState {
  RingSector sector;
  cplx v{0.0, 0.0};
  double E = 0.0;
  StateClass classification = StateClass::scattered;
  ComplexSequence amplitude;
  cplx C{0.0, 0.0};
};

RingSector make_sector(int N, int k);

/// Number of two-magnon states with momentum index k.
int sector_dimension(int N, int k);

/// (cosh v - cos(P/2)) coth((N v - i Delta)/2) - sinh v. Throws PoleError
/// where the coth is singular.
cplx eigenenergy_residual(const RingSector& sector, cplx v);

/// Pole-free multiple of the residual,
///   (cosh v - cos(P/2)) cosh s - sinh v sinh s,   s = (N v - i Delta)/2,
/// scaled by e^{-N Re v / 2}.
cplx eigenenergy_residual_regular(const RingSector& sector, cplx v);

struct RingSolveOptions {
  int grid_points = 2048;
  double v_max = 10.0;
  int max_refinements = 5;
};

/// All eigenstates of one momentum sector, sorted by energy. Roots are
/// bracketed on real v, on v = u + i pi (bound states with cos(P/2) < 0) and
/// on v = i w (scattered), then bisected to machine precision. Throws
/// RootCountMismatch if the count disagrees with sector_dimension after grid
/// refinement.
std::vector<TwoMagnonState> solve_sector(const RingSector& sector, const RingModel& model,
                                         const RingSolveOptions& options = {});

/// a(X) ~ cosh(v (N/2 - X) + i P N / 4) for X = 0 .. N-1, normalised as in
/// TwoMagnonState. The phase is fixed so the largest component is real and
/// positive.
ComplexSequence amplitude(const RingSector& sector, cplx v);
ComplexSequence amplitude(const TwoMagnonState& state);

/// (1/N) sum_Q cos Q cos(QX) / (cosh v - cos Q) over the sector grid: the
/// Fourier form of the amplitude with C = 1.
cplx fourier_amplitude(const RingSector& sector, cplx v, long long X);

/// One exact-diagonalisation sector: eigenvalues (excitation energies above
/// the all-up state) and eigenvectors in the separation basis
/// X = 1 .. floor(N/2), |X> ~ sum_n e^{i P (n + X/2)} |n, n + X>.
struct RingEdSector {
  std::vector<double> values;
  std::vector<std::vector<cplx>> vectors;
};

/// Two-magnon block of H in the basis |n1 < n2>, energies measured from the
/// all-up state. Dimension N (N - 1) / 2.
ComplexMatrix two_magnon_block(const RingModel& model);

/// Projects the two-magnon block on momentum k and diagonalises it with the
/// Jacobi solver.
RingEdSector ed_sector(const RingModel& model, int k);

/// Sorted sector spectra for every k. Requires N <= 24.
std::map<int, std::vector<double>> ed_oracle(const RingModel& model);

/// Maps a relative amplitude a(X) onto the ED separation basis of ed_sector:
/// y_X = a(X) for X < N/2 and y_{N/2} = a(N/2) / sqrt(2), unit-normalised.
std::vector<cplx> to_separation_basis(const ComplexSequence& a, int N);

/// The relative-motion equation on a(1 .. N-1) with the boundary closure
/// a(0) terms folded in: diagonal 2J (J at X = 1 and X = N - 1),
/// off-diagonals -J cos(P/2). Real symmetric.
RealMatrix relative_equation_matrix(int N, double P, double J = 1.0);

/// Eigenvalues of relative_equation_matrix whose eigenvectors have the
/// physical reflection parity a(N - X) = (-1)^k a(X).
std::vector<double> relative_equation_spectrum(int N, int k, double J = 1.0);

struct BoundStateLimit {
  double v = 0.0;
  double E = 0.0;
};

/// Infinite-ring bound state: v = -ln cos(P/2), E = J sin^2(P/2).
BoundStateLimit bound_state_limit(double P, double J = 1.0);

}  // namespace latticegreen
