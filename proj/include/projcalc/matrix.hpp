#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace projcalc {

using Complex = std::complex<double>;

// Dense complex matrix, row-major, value semantics.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  // Throws Error(InconsistentDims) on a length mismatch, Error(ValidationFailed) on NaN/Inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix diagonal(std::span<const double> values);
  static DenseMatrix diagonal(std::initializer_list<Complex> values);
  static DenseMatrix from_columns(std::size_t rows, std::span<const std::vector<Complex>> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Complex> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);
  DenseMatrix columns(std::size_t first, std::size_t count) const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b);

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(Complex s);

  bool operator==(const DenseMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a);
DenseMatrix operator*(Complex s, DenseMatrix a);

// Matrix product. OpenMP-parallel over output rows for large operands.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return matmul(a, b); }

// a* b without materializing the adjoint.
DenseMatrix adjoint_times(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix adjoint(const DenseMatrix& a);
Complex trace(const DenseMatrix& a);
// tr(AB) in O(n^2) without forming the product.
Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b);
// Square-and-multiply; power 0 gives the identity.
DenseMatrix matrix_power(const DenseMatrix& a, unsigned power);
DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hermitian_part(const DenseMatrix& a);

DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix block_diag(std::span<const DenseMatrix> blocks);

double frobenius_norm(const DenseMatrix& a);
double max_abs_entry(const DenseMatrix& a);
// ||A - A*|| in the Frobenius norm.
double hermitian_defect(const DenseMatrix& a);

// Fix the phase of each column so its largest-modulus entry is real positive.
void normalize_column_phases(DenseMatrix& columns);

namespace serial {
// Single-threaded triple loop; reference for matmul.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
}  // namespace serial

}  // namespace projcalc
