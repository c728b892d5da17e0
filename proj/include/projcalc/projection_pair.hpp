#pragma once

#include <cstddef>
#include <vector>

#include "projcalc/matrix.hpp"
#include "projcalc/tolerance.hpp"

namespace projcalc {

// Two orthogonal projections on the same space, validated on construction.
class ProjectionPair {
 public:
  // Throws InconsistentDims on a shape mismatch and ValidationFailed when either
  // matrix misses validate_projection at tol.tol_validate.
  ProjectionPair(DenseMatrix p, DenseMatrix q, const ToleranceConfig& tol = {});

  const DenseMatrix& p() const noexcept { return p_; }
  const DenseMatrix& q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return p_.rows(); }
  // P - Q
  DenseMatrix difference() const { return p_ - q_; }

 private:
  DenseMatrix p_;
  DenseMatrix q_;
};

// Corner dimensions and generic cells of a pair of projections.
//
// Columns of `basis` are ordered [m11 | m00 | m10 | m01 | cells], each cell
// occupying two columns in which P and Q read
//   P = 1/2 [[1, 1], [1, 1]],   Q = 1/2 [[1, e^{i theta}], [e^{-i theta}, 1]].
// theta is the argument of the point on the upper semicircle, so the classical
// principal angle is theta / 2 and P - Q has eigenvalues +-sin(theta / 2) there.
struct HalmosDecomposition {
  std::size_t m11 = 0;  // ran P  & ran Q
  std::size_t m00 = 0;  // ker P  & ker Q
  std::size_t m10 = 0;  // ran P  & ker Q
  std::size_t m01 = 0;  // ker P  & ran Q
  std::vector<double> angles;  // one entry per cell, ascending, in (0, pi)
  DenseMatrix basis;
  // Eigenvalues that sat inside a corner cluster but visibly off its centre.
  std::size_t near_degenerate = 0;

  std::size_t corner_dim() const noexcept { return m11 + m00 + m10 + m01; }
  std::size_t dim() const noexcept { return corner_dim() + 2 * angles.size(); }
};

struct PairedEigenvalue {
  double lambda = 0.0;  // in (0, 1)
  std::size_t multiplicity = 0;
};

struct SpectrumReport {
  std::size_t plus_ones = 0;
  std::size_t minus_ones = 0;
  std::size_t zeros = 0;
  std::vector<PairedEigenvalue> paired;
  // Largest distance from an eigenvalue of P - Q to its assigned cluster or pair centre.
  double residual = 0.0;

  std::size_t dim() const noexcept;
};

DenseMatrix symmetry_of(const DenseMatrix& p, double tol = 1e-9);
DenseMatrix projection_of(const DenseMatrix& u, double tol = 1e-9);

// Throws PairingFailure when the interior spectrum is not symmetric.
SpectrumReport difference_spectrum(const ProjectionPair& pair, const ToleranceConfig& tol = {});

// Throws PairingFailure or DegenerateAngle.
HalmosDecomposition halmos_decompose(const ProjectionPair& pair, const ToleranceConfig& tol = {});

// The block-diagonal model pair described by the decomposition's data (basis ignored).
ProjectionPair canonical_form(const HalmosDecomposition& dec);

// max(||B* P B - P_can||, ||B* Q B - Q_can||).
double verify_decomposition(const ProjectionPair& pair, const HalmosDecomposition& dec);

// tr (P - Q)^{2k+1}
double trace_odd_power(const ProjectionPair& pair, unsigned k);

struct TraceStabilityReport {
  std::vector<double> traces;  // index k
  double max_deviation = 0.0;  // max_k |traces[k] - traces[0]|
  double max_imaginary = 0.0;
  bool passed = false;
};

TraceStabilityReport trace_stability_check(const ProjectionPair& pair, unsigned k_max,
                                           const ToleranceConfig& tol = {});

}  // namespace projcalc
