#include "projcalc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "projcalc/error.hpp"

namespace projcalc {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::InconsistentDims, std::string(op) + ": shape mismatch " +
                                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                            " vs " + std::to_string(b.rows()) + "x" +
                                            std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(Errc::InconsistentDims, "entry count " + std::to_string(data_.size()) +
                                            " != rows*cols " + std::to_string(rows * cols));
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::ValidationFailed, "matrix entry is not finite");
    }
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::InconsistentDims, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  DenseMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::initializer_list<Complex> values) {
  DenseMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (const Complex& v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::from_columns(std::size_t rows, std::span<const std::vector<Complex>> columns) {
  DenseMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

std::vector<Complex> DenseMatrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void DenseMatrix::set_column(std::size_t c, std::span<const Complex> values) {
  if (values.size() != rows_) throw Error(Errc::InconsistentDims, "set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

DenseMatrix DenseMatrix::columns(std::size_t first, std::size_t count) const {
  return block(0, first, rows_, count);
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(Errc::InconsistentDims, "block out of range");
  DenseMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  }
  return out;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
    throw Error(Errc::InconsistentDims, "set_block out of range");
  }
  for (std::size_t r = 0; r < b.rows_; ++r) {
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(r * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator-(DenseMatrix a) { return a *= -1.0; }
DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }

DenseMatrix adjoint(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  }
  return out;
}

Complex trace(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "trace of non-square matrix");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw Error(Errc::InconsistentDims, "trace_of_product: shapes do not compose to a square");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, i);
  }
  return sum;
}

DenseMatrix matrix_power(const DenseMatrix& a, unsigned power) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "matrix_power of non-square matrix");
  DenseMatrix result = DenseMatrix::identity(a.rows());
  DenseMatrix base = a;
  bool first = true;
  while (power > 0) {
    if (power & 1U) {
      result = first ? base : matmul(result, base);
      first = false;
    }
    power >>= 1U;
    if (power > 0) base = matmul(base, base);
  }
  return result;
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

DenseMatrix hermitian_part(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "hermitian_part of non-square matrix");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < a.cols(); ++c) {
      const Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return out;
}

DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

DenseMatrix block_diag(std::span<const DenseMatrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  DenseMatrix out(rows, cols);
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

double frobenius_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs_entry(const DenseMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double hermitian_defect(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "hermitian_defect of non-square matrix");
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) sum += std::norm(a(r, c) - std::conj(a(c, r)));
  }
  return std::sqrt(sum);
}

void normalize_column_phases(DenseMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      // Strict comparison with a relative margin so near-ties resolve to the lowest row.
      const double v = std::abs(m(r, c));
      if (v > best_abs * (1.0 + 1e-12)) {
        best_abs = v;
        best = r;
      }
    }
    if (best_abs <= 0.0) continue;
    const Complex phase = std::conj(m(best, c)) / best_abs;
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) *= phase;
    m(best, c) = best_abs;
  }
}

}  // namespace projcalc
