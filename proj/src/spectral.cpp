#include "projcalc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "projcalc/error.hpp"

namespace projcalc {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::PairingFailure: return "PairingFailure";
    case Errc::DegenerateAngle: return "DegenerateAngle";
    case Errc::InconsistentDims: return "InconsistentDims";
    case Errc::MismatchedArity: return "MismatchedArity";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ParseError: return "ParseError";
    case Errc::LengthExceeded: return "LengthExceeded";
  }
  return "Unknown";
}

void ToleranceConfig::check() const {
  if (!(tol_validate > 0.0 && tol_cluster > 0.0 && tol_rank > 0.0 && tol_report > 0.0)) {
    throw Error(Errc::InvalidSpec, "tolerances must be strictly positive");
  }
  if (tol_validate > tol_report) {
    throw Error(Errc::InvalidSpec, "tol_validate must not exceed tol_report");
  }
}

namespace {

// Largest |eigenvalue| of an (assumed) Hermitian matrix.
double hermitian_norm(const DenseMatrix& h) {
  if (h.rows() == 0) return 0.0;
  const auto ev = hermitian_eigenvalues(h, 1e300);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

// i(X - X*) is Hermitian with the same norm as X - X*.
double skew_residual(const DenseMatrix& x) {
  DenseMatrix d = x - adjoint(x);
  d *= Complex{0.0, 1.0};
  return hermitian_norm(hermitian_part(d));
}

}  // namespace

double operator_norm(const DenseMatrix& a) {
  if (a.empty()) return 0.0;
  if (a.is_square() && hermitian_defect(a) == 0.0) return hermitian_norm(a);
  const DenseMatrix gram = a.rows() >= a.cols() ? adjoint_times(a, a) : matmul(a, adjoint(a));
  const auto ev = hermitian_eigenvalues(hermitian_part(gram), 1e300);
  return std::sqrt(std::max(0.0, ev.back()));
}

std::vector<double> singular_values(const DenseMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  const std::size_t k = std::min(r, c);
  if (k == 0) return {};
  DenseMatrix dilation(r + c, r + c);
  dilation.set_block(0, r, m);
  dilation.set_block(r, 0, adjoint(m));
  auto ev = hermitian_eigenvalues(dilation);
  // Eigenvalues are {±sigma_i} plus |r - c| zeros; the top k are the singular values.
  std::vector<double> sv(ev.rbegin(), ev.rbegin() + static_cast<std::ptrdiff_t>(k));
  for (double& s : sv) s = std::max(0.0, s);
  return sv;
}

std::size_t rank_with_tol(const DenseMatrix& m, double tol) {
  const auto sv = singular_values(m);
  if (sv.empty()) return 0;
  const double cutoff = tol * std::max(1.0, sv.front());
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cutoff](double s) { return s > cutoff; }));
}

ValidationReport validate_projection(const DenseMatrix& p, double tol) {
  if (!p.is_square()) throw Error(Errc::NotSquare, "projection candidate is not square");
  ValidationReport report;
  report.adjoint_residual = skew_residual(p);
  const DenseMatrix sq = matmul(p, p) - p;
  // P^2 - P is Hermitian only when P is; fall back to the general norm otherwise.
  report.algebraic_residual = report.adjoint_residual == 0.0 ? hermitian_norm(hermitian_part(sq))
                                                             : operator_norm(sq);
  report.passed = report.algebraic_residual <= tol && report.adjoint_residual <= tol;
  return report;
}

ValidationReport validate_symmetry(const DenseMatrix& u, double tol) {
  if (!u.is_square()) throw Error(Errc::NotSquare, "symmetry candidate is not square");
  ValidationReport report;
  report.adjoint_residual = skew_residual(u);
  const DenseMatrix sq = matmul(u, u) - DenseMatrix::identity(u.rows());
  report.algebraic_residual = report.adjoint_residual == 0.0 ? hermitian_norm(hermitian_part(sq))
                                                             : operator_norm(sq);
  report.passed = report.algebraic_residual <= tol && report.adjoint_residual <= tol;
  return report;
}

DenseMatrix orthonormal_range_basis(const DenseMatrix& p, const ToleranceConfig& tol) {
  const auto report = validate_projection(p, tol.tol_validate);
  if (!report.passed) {
    throw Error(Errc::ValidationFailed,
                "not a projection (||P^2-P|| = " + std::to_string(report.algebraic_residual) +
                    ", ||P-P*|| = " + std::to_string(report.adjoint_residual) + ")");
  }
  const std::size_t n = p.rows();
  if (n == 0) return {};
  const HermitianEig eig = hermitian_eigendecompose(p, tol.tol_validate);
  std::size_t first = n;
  while (first > 0 && std::abs(eig.eigenvalues[first - 1] - 1.0) <= tol.tol_cluster) --first;
  const auto expected = static_cast<std::size_t>(std::llround(std::max(0.0, trace(p).real())));
  if (n - first != expected) {
    throw Error(Errc::ValidationFailed, "range dimension " + std::to_string(n - first) +
                                            " disagrees with round(tr P) = " +
                                            std::to_string(expected));
  }
  DenseMatrix basis = eig.eigenvectors.columns(first, n - first);
  normalize_column_phases(basis);
  return basis;
}

}  // namespace projcalc
