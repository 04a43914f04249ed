#ifndef QFOCK_LINALG_HPP
#define QFOCK_LINALG_HPP

#include <complex>
#include <optional>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

using Complex = std::complex<double>;

/// Small dense complex Hermitian matrix, column-major storage.
/// Construction symmetrizes M <- (M + M^H)/2 and rejects inputs whose
/// anti-Hermitian residual exceeds 1e-12 * ||M||_F.
class HermitianMatrix {
public:
  explicit HermitianMatrix(std::size_t order);
  HermitianMatrix(std::size_t order, std::vector<Complex> column_major);

  std::size_t order() const { return n_; }
  Complex operator()(std::size_t i, std::size_t j) const { return a_[j * n_ + i]; }
  void set(std::size_t i, std::size_t j, Complex v);  // sets (i,j) and (j,i)
  const std::vector<Complex>& data() const { return a_; }

  double frobenius_norm() const;

  HermitianMatrix operator-(const HermitianMatrix& other) const;

private:
  std::size_t n_;
  std::vector<Complex> a_;
};

struct EigenDecomposition {
  std::vector<double> values;            // ascending
  std::vector<Complex> vectors;          // column-major unitary, column k pairs values[k]
  Complex vector_entry(std::size_t i, std::size_t k, std::size_t n) const {
    return vectors[k * n + i];
  }
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
/// Throws ConvergenceFailure after 100 sweeps (never observed at order <= 16).
EigenDecomposition eig_hermitian(const HermitianMatrix& m);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  /// Normalized eigenvector of the minimal eigenvalue, present when min < 0.
  std::optional<std::vector<Complex>> witness;
};

/// PSD test with threshold min_eig >= -tol * max(1, ||M||_F).
PsdReport is_psd(const HermitianMatrix& m, double tol = 1e-10);

/// Entrywise (Schur) product; Hermitian whenever both inputs are.
HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b);

/// Determinant via LU with partial pivoting.
Complex det(const HermitianMatrix& m);

}  // namespace qfock

#endif
