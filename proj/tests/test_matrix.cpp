#include <cmath>

#include "doctest.h"
#include "projcalc/error.hpp"
#include "projcalc/matrix.hpp"
#include "test_support.hpp"

using namespace projcalc;
using projcalc::testing::random_hermitian;

TEST_CASE("construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<Complex>(3)), Error);
  std::vector<Complex> bad(4);
  bad[2] = Complex{std::nan(""), 0.0};
  try {
    DenseMatrix(2, 2, bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationFailed);
  }
}

TEST_CASE("parallel matmul matches the serial reference") {
  for (std::size_t n : {1U, 3U, 17U, 40U, 65U}) {
    const DenseMatrix a = random_hermitian(n, 100 + n);
    const DenseMatrix b = random_hermitian(n, 200 + n);
    CHECK(frobenius_norm(matmul(a, b) - serial::matmul(a, b)) <= 1e-12 * n * n);
  }
  // Rectangular shapes.
  const DenseMatrix a = random_hermitian(7, 1).columns(0, 4);
  const DenseMatrix b = adjoint(random_hermitian(7, 2).columns(0, 5)).columns(0, 4);
  CHECK(a.rows() == 7);
  CHECK(frobenius_norm(matmul(b, adjoint(a)) - serial::matmul(b, adjoint(a))) < 1e-12);
  CHECK(frobenius_norm(adjoint_times(a, a) - serial::matmul(adjoint(a), a)) < 1e-12);
  CHECK_THROWS_AS(matmul(a, a), Error);
}

TEST_CASE("trace, trace_of_product and powers") {
  const DenseMatrix h = random_hermitian(9, 5);
  const DenseMatrix g = random_hermitian(9, 6);
  CHECK(std::abs(trace_of_product(h, g) - trace(matmul(h, g))) < 1e-12);
  CHECK(matrix_power(h, 0) == DenseMatrix::identity(9));
  CHECK(matrix_power(h, 1) == h);
  const DenseMatrix naive = matmul(matmul(matmul(matmul(h, h), h), h), h);
  CHECK(frobenius_norm(matrix_power(h, 5) - naive) <= 1e-11 * frobenius_norm(naive));
  CHECK_THROWS_AS(trace(h.columns(0, 3)), Error);
}

TEST_CASE("block assembly") {
  const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const DenseMatrix b{{5.0}};
  const DenseMatrix s = direct_sum(a, b);
  CHECK(s.rows() == 3);
  CHECK(s(2, 2) == Complex{5.0});
  CHECK(s(0, 2) == Complex{0.0});
  const std::vector<DenseMatrix> blocks{b, a, b};
  const DenseMatrix bd = block_diag(blocks);
  CHECK(bd.rows() == 4);
  CHECK(bd(1, 2) == Complex{2.0});
  CHECK(bd(3, 3) == Complex{5.0});
  CHECK(bd.block(1, 1, 2, 2) == a);
}

TEST_CASE("hermitian_part and defect") {
  const DenseMatrix x{{1.0, Complex{0.0, 1.0}}, {0.0, 2.0}};
  CHECK(hermitian_defect(x) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hermitian_defect(hermitian_part(x)) == 0.0);
  CHECK(hermitian_defect(random_hermitian(6, 3)) == 0.0);
}

TEST_CASE("column phase normalization makes the dominant entry real positive") {
  DenseMatrix m{{Complex{0.0, 0.6}}, {Complex{-0.8, 0.0}}};
  normalize_column_phases(m);
  CHECK(m(1, 0) == Complex{0.8, 0.0});
  CHECK(std::abs(m(0, 0) - Complex{0.0, -0.6}) < 1e-15);
}
