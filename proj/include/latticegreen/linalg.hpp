#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace latticegreen {

using cplx = std::complex<double>;

// Dense row-major square matrix. Only what the eigensolvers and the
// Hamiltonian builders need.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  T trace() const {
    T t{};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<cplx>;

/// Eigenpairs sorted by ascending eigenvalue; vectors[i] belongs to values[i]
/// and has unit 2-norm.
template <typename T>
struct EigenSystem {
  std::vector<double> values;
  std::vector<std::vector<T>> vectors;
};

/// Cyclic Jacobi rotations for a Hermitian matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below tol times the matrix norm.
/// Throws ConvergenceError after max_sweeps.
EigenSystem<cplx> hermitian_eigen(const ComplexMatrix& a, double tol = 1e-14,
                                  int max_sweeps = 100);

/// Implicit QL with Wilkinson shifts for a real symmetric tridiagonal matrix
/// given by its diagonal and off-diagonal (off.size() == diag.size() - 1).
EigenSystem<double> tridiagonal_eigen(std::vector<double> diag,
                                      std::vector<double> off,
                                      int max_iterations_per_value = 60);

/// |<u, w>|^2 / (|u|^2 |w|^2)
double overlap(const std::vector<cplx>& u, const std::vector<cplx>& w);

}  // namespace latticegreen
