#include "projcalc/projection_pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "projcalc/error.hpp"
#include "projcalc/spectral.hpp"

namespace projcalc {

ProjectionPair::ProjectionPair(DenseMatrix p, DenseMatrix q, const ToleranceConfig& tol)
    : p_(std::move(p)), q_(std::move(q)) {
  if (!p_.is_square() || !q_.is_square() || p_.rows() != q_.rows()) {
    throw Error(Errc::InconsistentDims, "projection pair needs two square matrices of equal size");
  }
  for (const auto* m : {&p_, &q_}) {
    const auto report = validate_projection(*m, tol.tol_validate);
    if (!report.passed) {
      throw Error(Errc::ValidationFailed,
                  std::string(m == &p_ ? "P" : "Q") + " is not a projection (||X^2-X|| = " +
                      std::to_string(report.algebraic_residual) +
                      ", ||X-X*|| = " + std::to_string(report.adjoint_residual) + ")");
    }
  }
}

std::size_t SpectrumReport::dim() const noexcept {
  std::size_t d = plus_ones + minus_ones + zeros;
  for (const auto& p : paired) d += 2 * p.multiplicity;
  return d;
}

DenseMatrix symmetry_of(const DenseMatrix& p, double tol) {
  if (!validate_projection(p, tol).passed) {
    throw Error(Errc::ValidationFailed, "symmetry_of: input is not a projection");
  }
  DenseMatrix u = 2.0 * p;
  for (std::size_t i = 0; i < u.rows(); ++i) u(i, i) -= 1.0;
  return u;
}

DenseMatrix projection_of(const DenseMatrix& u, double tol) {
  if (!validate_symmetry(u, tol).passed) {
    throw Error(Errc::ValidationFailed, "projection_of: input is not a symmetry");
  }
  DenseMatrix p = u;
  for (std::size_t i = 0; i < p.rows(); ++i) p(i, i) += 1.0;
  p *= 0.5;
  return p;
}

namespace {

struct GenericPair {
  std::size_t plus_index;   // column of the +lambda eigenvector
  std::size_t minus_index;  // column of the -lambda eigenvector
  double lambda;            // mean of the two magnitudes
  double mismatch;          // |lambda_plus + lambda_minus|
};

struct Classified {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  std::vector<std::size_t> zero;
  std::vector<GenericPair> generic;  // ascending lambda
  double residual = 0.0;
  std::size_t off_centre = 0;
};

Classified classify(const std::vector<double>& ev, double tol_cluster) {
  Classified out;
  const double scale = std::max(1.0, std::max(std::abs(ev.empty() ? 0.0 : ev.front()),
                                              std::abs(ev.empty() ? 0.0 : ev.back())));
  const double noise = 1e3 * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max<std::size_t>(ev.size(), 1)) * scale;
  std::vector<std::size_t> interior_pos;
  std::vector<std::size_t> interior_neg;

  auto assign = [&](std::vector<std::size_t>& bucket, std::size_t i, double distance) {
    bucket.push_back(i);
    out.residual = std::max(out.residual, distance);
    if (distance > noise) ++out.off_centre;
  };

  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double x = ev[i];
    if (std::abs(x - 1.0) <= tol_cluster) {
      assign(out.plus, i, std::abs(x - 1.0));
    } else if (std::abs(x + 1.0) <= tol_cluster) {
      assign(out.minus, i, std::abs(x + 1.0));
    } else if (std::abs(x) <= tol_cluster) {
      assign(out.zero, i, std::abs(x));
    } else if (std::abs(x) > 1.0) {
      throw Error(Errc::PairingFailure,
                  "eigenvalue " + std::to_string(x) + " of P - Q lies outside [-1, 1]");
    } else if (x > 0.0) {
      interior_pos.push_back(i);
    } else {
      interior_neg.push_back(i);
    }
  }

  if (interior_pos.size() != interior_neg.size()) {
    throw Error(Errc::PairingFailure, std::to_string(interior_pos.size()) +
                                          " positive vs " + std::to_string(interior_neg.size()) +
                                          " negative interior eigenvalues");
  }
  // ev is ascending, so positives are already sorted by magnitude; negatives run in reverse.
  std::reverse(interior_neg.begin(), interior_neg.end());
  for (std::size_t j = 0; j < interior_pos.size(); ++j) {
    const double lp = ev[interior_pos[j]];
    const double ln = ev[interior_neg[j]];
    const double mismatch = std::abs(lp + ln);
    if (mismatch > tol_cluster) {
      throw Error(Errc::PairingFailure, "cannot pair " + std::to_string(lp) + " with " +
                                            std::to_string(ln));
    }
    out.generic.push_back({interior_pos[j], interior_neg[j], 0.5 * (lp - ln), mismatch});
    out.residual = std::max(out.residual, 0.5 * mismatch);
  }
  return out;
}

std::vector<Complex> mat_vec(const DenseMatrix& a, std::span<const Complex> x) {
  std::vector<Complex> y(a.rows(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex sum{0.0, 0.0};
    for (std::size_t c = 0; c < a.cols(); ++c) sum += a(r, c) * x[c];
    y[r] = sum;
  }
  return y;
}

}  // namespace

SpectrumReport difference_spectrum(const ProjectionPair& pair, const ToleranceConfig& tol) {
  const auto ev = hermitian_eigenvalues(pair.difference(), tol.tol_validate);
  const Classified cls = classify(ev, tol.tol_cluster);

  SpectrumReport report;
  report.plus_ones = cls.plus.size();
  report.minus_ones = cls.minus.size();
  report.zeros = cls.zero.size();
  report.residual = cls.residual;
  for (const auto& g : cls.generic) {
    if (!report.paired.empty() && g.lambda - report.paired.back().lambda <= tol.tol_cluster) {
      auto& last = report.paired.back();
      last.lambda = (last.lambda * static_cast<double>(last.multiplicity) + g.lambda) /
                    static_cast<double>(last.multiplicity + 1);
      ++last.multiplicity;
    } else {
      report.paired.push_back({g.lambda, 1});
    }
  }
  return report;
}

HalmosDecomposition halmos_decompose(const ProjectionPair& pair, const ToleranceConfig& tol) {
  const std::size_t n = pair.dim();
  const DenseMatrix& p = pair.p();
  const DenseMatrix& q = pair.q();
  const HermitianEig eig = hermitian_eigendecompose(pair.difference(), tol.tol_validate);
  const Classified cls = classify(eig.eigenvalues, tol.tol_cluster);
  const DenseMatrix& vecs = eig.eigenvectors;

  HalmosDecomposition dec;
  dec.near_degenerate = cls.off_centre;
  dec.m10 = cls.plus.size();
  dec.m01 = cls.minus.size();

  // ker(P - Q) = (ran P & ran Q) + (ker P & ker Q); P + Q is 2 on the first and 0 on the second.
  std::vector<std::vector<Complex>> both_columns;
  std::vector<std::vector<Complex>> neither_columns;
  if (!cls.zero.empty()) {
    DenseMatrix kernel(n, cls.zero.size());
    for (std::size_t j = 0; j < cls.zero.size(); ++j) kernel.set_column(j, vecs.column(cls.zero[j]));
    const DenseMatrix sum_on_kernel = hermitian_part(adjoint_times(kernel, matmul(p + q, kernel)));
    const HermitianEig split = hermitian_eigendecompose(sum_on_kernel, 1e300);
    const DenseMatrix lifted = matmul(kernel, split.eigenvectors);
    for (std::size_t j = 0; j < split.eigenvalues.size(); ++j) {
      const double mu = split.eigenvalues[j];
      if (std::abs(mu - 2.0) <= tol.tol_cluster) {
        both_columns.push_back(lifted.column(j));
      } else if (std::abs(mu) <= tol.tol_cluster) {
        neither_columns.push_back(lifted.column(j));
      } else {
        throw Error(Errc::DegenerateAngle,
                    "kernel vector of P - Q has P + Q eigenvalue " + std::to_string(mu));
      }
    }
  }
  dec.m11 = both_columns.size();
  dec.m00 = neither_columns.size();

  struct Cell {
    double theta;
    std::vector<Complex> first;
    std::vector<Complex> second;
  };
  std::vector<Cell> cells;
  cells.reserve(cls.generic.size());
  const DenseMatrix d = pair.difference();
  DenseMatrix c_op = p + q;  // P + Q - I anticommutes with P - Q
  for (std::size_t i = 0; i < n; ++i) c_op(i, i) -= 1.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  for (const auto& g : cls.generic) {
    const std::vector<Complex> u = vecs.column(g.plus_index);
    const std::vector<Complex> cu = mat_vec(c_op, u);
    const std::vector<Complex> du = mat_vec(d, u);
    double c_norm = 0.0;
    Complex rayleigh{0.0, 0.0};
    for (std::size_t r = 0; r < n; ++r) {
      c_norm += std::norm(cu[r]);
      rayleigh += std::conj(u[r]) * du[r];
    }
    c_norm = std::sqrt(c_norm);
    const double half_theta = std::atan2(rayleigh.real(), c_norm);
    const double theta = 2.0 * half_theta;
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
      throw Error(Errc::DegenerateAngle, "generic cell angle " + std::to_string(theta));
    }
    // v- = -i C v+ / cos(theta/2); then e1 = (v+ + v-)/sqrt2, e2 = w (v+ - v-)/sqrt2
    // with w = -i e^{i theta/2}.
    const Complex w = Complex{0.0, -1.0} * std::polar(1.0, half_theta);
    Cell cell{theta, std::vector<Complex>(n), std::vector<Complex>(n)};
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vminus = Complex{0.0, -1.0} * cu[r] / c_norm;
      cell.first[r] = (u[r] + vminus) * inv_sqrt2;
      cell.second[r] = w * (u[r] - vminus) * inv_sqrt2;
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (std::abs(cell.first[r]) > std::abs(cell.first[best]) * (1.0 + 1e-12)) best = r;
    }
    const double mag = std::abs(cell.first[best]);
    const Complex phase = std::conj(cell.first[best]) / mag;
    for (std::size_t r = 0; r < n; ++r) {
      cell.first[r] *= phase;
      cell.second[r] *= phase;
    }
    cell.first[best] = mag;
    cells.push_back(std::move(cell));
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.theta < b.theta; });

  dec.basis = DenseMatrix(n, n);
  std::size_t col = 0;
  auto put_corner = [&](const std::vector<Complex>& v) { dec.basis.set_column(col++, v); };
  for (const auto& v : both_columns) put_corner(v);
  for (const auto& v : neither_columns) put_corner(v);
  for (std::size_t i : cls.plus) put_corner(vecs.column(i));
  for (std::size_t i : cls.minus) put_corner(vecs.column(i));
  const std::size_t corner_end = col;
  {
    DenseMatrix corners = dec.basis.columns(0, corner_end);
    normalize_column_phases(corners);
    dec.basis.set_block(0, 0, corners);
  }
  for (const auto& cell : cells) {
    dec.angles.push_back(cell.theta);
    dec.basis.set_column(col++, cell.first);
    dec.basis.set_column(col++, cell.second);
  }
  return dec;
}

ProjectionPair canonical_form(const HalmosDecomposition& dec) {
  if (!dec.basis.empty() && (dec.basis.rows() != dec.dim() || dec.basis.cols() != dec.dim())) {
    throw Error(Errc::InconsistentDims, "basis is " + std::to_string(dec.basis.rows()) + "x" +
                                            std::to_string(dec.basis.cols()) +
                                            " but sector dimensions sum to " +
                                            std::to_string(dec.dim()));
  }
  const std::size_t n = dec.dim();
  DenseMatrix p(n, n);
  DenseMatrix q(n, n);
  std::size_t i = 0;
  for (std::size_t k = 0; k < dec.m11; ++k, ++i) {
    p(i, i) = 1.0;
    q(i, i) = 1.0;
  }
  i += dec.m00;
  for (std::size_t k = 0; k < dec.m10; ++k, ++i) p(i, i) = 1.0;
  for (std::size_t k = 0; k < dec.m01; ++k, ++i) q(i, i) = 1.0;
  for (double theta : dec.angles) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
      throw Error(Errc::InconsistentDims, "cell angle " + std::to_string(theta) + " outside (0, pi)");
    }
    const Complex z = std::polar(1.0, theta);
    p(i, i) = 0.5;
    p(i, i + 1) = 0.5;
    p(i + 1, i) = 0.5;
    p(i + 1, i + 1) = 0.5;
    q(i, i) = 0.5;
    q(i, i + 1) = 0.5 * z;
    q(i + 1, i) = 0.5 * std::conj(z);
    q(i + 1, i + 1) = 0.5;
    i += 2;
  }
  return ProjectionPair(std::move(p), std::move(q));
}

double verify_decomposition(const ProjectionPair& pair, const HalmosDecomposition& dec) {
  if (dec.basis.rows() != pair.dim() || dec.basis.cols() != pair.dim() || dec.dim() != pair.dim()) {
    throw Error(Errc::InconsistentDims, "decomposition dimension does not match the pair");
  }
  const ProjectionPair model = canonical_form(dec);
  const DenseMatrix& b = dec.basis;
  const DenseMatrix p_res = adjoint_times(b, matmul(pair.p(), b)) - model.p();
  const DenseMatrix q_res = adjoint_times(b, matmul(pair.q(), b)) - model.q();
  return std::max(operator_norm(p_res), operator_norm(q_res));
}

double trace_odd_power(const ProjectionPair& pair, unsigned k) {
  return trace(matrix_power(pair.difference(), 2 * k + 1)).real();
}

TraceStabilityReport trace_stability_check(const ProjectionPair& pair, unsigned k_max,
                                           const ToleranceConfig& tol) {
  TraceStabilityReport report;
  const DenseMatrix d = pair.difference();
  const DenseMatrix d2 = matmul(d, d);
  DenseMatrix power = d;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) power = matmul(power, d2);
    const Complex t = trace(power);
    report.traces.push_back(t.real());
    report.max_imaginary = std::max(report.max_imaginary, std::abs(t.imag()));
    report.max_deviation = std::max(report.max_deviation, std::abs(t.real() - report.traces.front()));
  }
  const double dim = static_cast<double>(std::max<std::size_t>(pair.dim(), 1));
  report.passed = report.max_deviation <= tol.tol_report * dim && report.max_imaginary <= tol.tol_report;
  return report;
}

}  // namespace projcalc
