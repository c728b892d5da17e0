#include "projcalc/index_calculus.hpp"

#include <cmath>

#include "projcalc/spectral.hpp"

namespace projcalc {

IntegerEstimate to_integer_estimate(double value) {
  IntegerEstimate e;
  e.value = value;
  e.rounded = std::llround(value);
  e.residual = std::abs(value - static_cast<double>(e.rounded));
  return e;
}

DenseMatrix restricted_operator(const ProjectionPair& pair, const ToleranceConfig& tol) {
  const DenseMatrix bp = orthonormal_range_basis(pair.p(), tol);
  const DenseMatrix bq = orthonormal_range_basis(pair.q(), tol);
  return adjoint_times(bq, matmul(pair.p(), bp));
}

std::int64_t fredholm_index(const ProjectionPair& pair, const ToleranceConfig& tol) {
  const DenseMatrix m = restricted_operator(pair, tol);
  const auto rank = static_cast<std::int64_t>(rank_with_tol(m, tol.tol_rank));
  const auto kernel = static_cast<std::int64_t>(m.cols()) - rank;
  const auto cokernel = static_cast<std::int64_t>(m.rows()) - rank;
  return kernel - cokernel;
}

IntegerEstimate index_via_trace(const ProjectionPair& pair, unsigned k) {
  return to_integer_estimate(trace_odd_power(pair, k));
}

FredholmModuleData build_fredholm_module(const ProjectionPair& pair) {
  const std::size_t n = pair.dim();
  FredholmModuleData m;
  m.big_dim = 2 * n;
  m.gamma = DenseMatrix(2 * n, 2 * n);
  m.f = DenseMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m.gamma(i, i) = 1.0;
    m.gamma(n + i, n + i) = -1.0;
    m.f(i, n + i) = 1.0;
    m.f(n + i, i) = 1.0;
  }
  m.pi_p1 = direct_sum(pair.p(), pair.q());
  m.pi_p2 = direct_sum(pair.q(), pair.p());
  return m;
}

double connes_pairing(const FredholmModuleData& module, unsigned k) {
  const DenseMatrix comm = commutator(module.f, module.pi_p1);
  const DenseMatrix lhs = matmul(module.gamma, module.pi_p1);
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
  return sign * trace(matmul(lhs, matrix_power(comm, 2 * k + 2))).real();
}

std::vector<double> connes_pairings(const FredholmModuleData& module, unsigned k_max) {
  const DenseMatrix comm = commutator(module.f, module.pi_p1);
  const DenseMatrix comm2 = matmul(comm, comm);
  const DenseMatrix lhs = matmul(module.gamma, module.pi_p1);
  std::vector<double> out;
  DenseMatrix power = comm2;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) power = matmul(power, comm2);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    out.push_back(sign * trace_of_product(lhs, power).real());
  }
  return out;
}

IndexCertificate index_theorem_check(const ProjectionPair& pair, unsigned k_max,
                                     const ToleranceConfig& tol) {
  IndexCertificate cert;
  cert.index_by_rank = fredholm_index(pair, tol);

  const DenseMatrix d = pair.difference();
  const DenseMatrix d2 = matmul(d, d);
  DenseMatrix power = d;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) power = matmul(power, d2);
    cert.index_by_trace.push_back(to_integer_estimate(trace(power).real()));
  }
  const FredholmModuleData module = build_fredholm_module(pair);
  for (double value : connes_pairings(module, k_max)) {
    cert.index_by_pairing.push_back(to_integer_estimate(value));
  }

  cert.agree = true;
  for (const auto* routes : {&cert.index_by_trace, &cert.index_by_pairing}) {
    for (const auto& e : *routes) {
      if (e.rounded != cert.index_by_rank || e.non_integer()) cert.agree = false;
    }
  }
  return cert;
}

}  // namespace projcalc
