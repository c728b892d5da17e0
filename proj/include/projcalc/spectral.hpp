#pragma once

#include <cstddef>
#include <vector>

#include "projcalc/matrix.hpp"
#include "projcalc/tolerance.hpp"

namespace projcalc {

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // columns, unitary
};

// Householder tridiagonalization followed by implicit QL.
// Throws NotSquare, NotHermitian (||H - H*||_F > hermitian_tol * (1 + ||H||_F)) or NoConvergence.
HermitianEig hermitian_eigendecompose(const DenseMatrix& h, double hermitian_tol = 1e-9);
std::vector<double> hermitian_eigenvalues(const DenseMatrix& h, double hermitian_tol = 1e-9);

namespace serial {
// Cyclic complex Jacobi. Slow but simple; kept as a reference for tests and benchmarks.
HermitianEig jacobi_eigendecompose(const DenseMatrix& h, double hermitian_tol = 1e-9);
}  // namespace serial

struct ValidationReport {
  bool passed = false;
  double algebraic_residual = 0.0;  // ||P^2 - P|| for projections, ||U^2 - I|| for symmetries
  double adjoint_residual = 0.0;    // ||X - X*||
};

ValidationReport validate_projection(const DenseMatrix& p, double tol);
ValidationReport validate_symmetry(const DenseMatrix& u, double tol);

// Largest singular value.
double operator_norm(const DenseMatrix& a);
// Descending; taken from the Hermitian dilation [[0, M], [M*, 0]].
std::vector<double> singular_values(const DenseMatrix& m);
std::size_t rank_with_tol(const DenseMatrix& m, double tol);

// Columns spanning the eigenvalue-1 eigenspace of a projection, phase-normalized.
DenseMatrix orthonormal_range_basis(const DenseMatrix& p, const ToleranceConfig& tol = {});

}  // namespace projcalc
