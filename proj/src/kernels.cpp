// Dense products: OpenMP kernels and their serial reference.

#include <string>

#include "projcalc/error.hpp"
#include "projcalc/matrix.hpp"

namespace projcalc {

namespace {

// Below this many multiply-adds the thread fork costs more than it saves.
constexpr std::size_t kParallelWork = 32 * 32 * 32;

void require_inner(std::size_t lhs_cols, std::size_t rhs_rows) {
  if (lhs_cols != rhs_rows) {
    throw Error(Errc::InconsistentDims, "matmul inner dimension " + std::to_string(lhs_cols) +
                                            " vs " + std::to_string(rhs_rows));
  }
}

// c[0..m) += z * b[0..m) on interleaved (re, im) storage. Entries are finite by construction,
// so the plain product formula is exact and avoids the NaN-recovery path of std::complex.
inline void axpy_row(Complex z, const Complex* b, Complex* c, std::size_t m) {
  const double zr = z.real();
  const double zi = z.imag();
  const double* __restrict bd = reinterpret_cast<const double*>(b);
  double* __restrict cd = reinterpret_cast<double*>(c);
  for (std::size_t j = 0; j < m; ++j) {
    const double br = bd[2 * j];
    const double bi = bd[2 * j + 1];
    cd[2 * j] += zr * br - zi * bi;
    cd[2 * j + 1] += zr * bi + zi * br;
  }
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require_inner(a.cols(), b.rows());
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  const std::size_t inner = a.cols();
  DenseMatrix c(n, m);
  const Complex* pa = a.data().data();
  const Complex* pb = b.data().data();
  Complex* pc = c.data().data();
  const bool parallel = n * m * inner >= kParallelWork;

  // i-k-j order keeps the innermost loop streaming along rows of b and c.
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    Complex* crow = pc + static_cast<std::size_t>(i) * m;
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aik = pa[static_cast<std::size_t>(i) * inner + k];
      if (aik == Complex{0.0, 0.0}) continue;
      axpy_row(aik, pb + k * m, crow, m);
    }
  }
  return c;
}

DenseMatrix adjoint_times(const DenseMatrix& a, const DenseMatrix& b) {
  require_inner(a.rows(), b.rows());
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  const std::size_t inner = a.rows();
  DenseMatrix c(n, m);
  const Complex* pb = b.data().data();
  Complex* pc = c.data().data();
  const bool parallel = n * m * inner >= kParallelWork;

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aki = std::conj(a(k, ii));
      if (aki == Complex{0.0, 0.0}) continue;
      axpy_row(aki, pb + k * m, pc + ii * m, m);
    }
  }
  return c;
}

namespace serial {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require_inner(a.cols(), b.rows());
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex sum{0.0, 0.0};
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      c(i, j) = sum;
    }
  }
  return c;
}

}  // namespace serial

}  // namespace projcalc
