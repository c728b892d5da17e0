#include <cmath>

#include "doctest.h"
#include "projcalc/error.hpp"
#include "projcalc/index_calculus.hpp"
#include "projcalc/random.hpp"
#include "projcalc/rep_builder.hpp"
#include "projcalc/spectral.hpp"
#include "test_support.hpp"

using namespace projcalc;
using namespace projcalc::testing;

namespace {

ProjectionPair micro_pair() { return {diag({1.0, 0.0}), half_ones()}; }

// tr D^j by explicit repeated multiplication.
double trace_power_naive(const ProjectionPair& pair, unsigned j) {
  const DenseMatrix d = pair.difference();
  DenseMatrix acc = DenseMatrix::identity(pair.dim());
  for (unsigned i = 0; i < j; ++i) acc = serial::matmul(acc, d);
  return trace(acc).real();
}

}  // namespace

TEST_CASE("restricted_operator") {
  const DenseMatrix m1 = restricted_operator({diag({1.0, 0.0}), diag({1.0, 0.0})});
  REQUIRE(m1.rows() == 1);
  REQUIRE(m1.cols() == 1);
  CHECK(std::abs(m1(0, 0) - 1.0) < 1e-15);

  const DenseMatrix m2 = restricted_operator({diag({1.0, 0.0}), diag({0.0, 1.0})});
  REQUIRE(m2.rows() == 1);
  CHECK(std::abs(m2(0, 0)) < 1e-15);

  const DenseMatrix m3 = restricted_operator(micro_pair());
  REQUIRE(m3.rows() == 1);
  CHECK(std::abs(std::abs(m3(0, 0)) - kInvSqrt2) < 1e-15);

  const DenseMatrix m4 = restricted_operator({diag({1.0, 1.0, 0.0}), diag({1.0, 0.0, 0.0})});
  CHECK(m4.rows() == 1);
  CHECK(m4.cols() == 2);
}

TEST_CASE("fredholm_index") {
  CHECK(fredholm_index({diag({1.0, 1.0, 0.0}), diag({1.0, 0.0, 0.0})}) == 1);
  const DenseMatrix p = random_projection(9, 4, 2);
  CHECK(fredholm_index({p, p}) == 0);
  CHECK(fredholm_index(micro_pair()) == 0);
  CHECK(fredholm_index({DenseMatrix(3, 3), DenseMatrix::identity(3)}) == -3);
}

TEST_CASE("index_via_trace") {
  const auto e1 = index_via_trace({diag({1.0, 0.0, 0.0}), DenseMatrix(3, 3)}, 2);
  CHECK(e1.value == 1.0);
  CHECK(e1.rounded == 1);
  CHECK(e1.residual < 1e-12);

  const DenseMatrix p = random_projection(5, 2, 9);
  const auto e2 = index_via_trace({p, p}, 3);
  CHECK(e2.value == 0.0);
  CHECK(e2.rounded == 0);
  CHECK(e2.residual == 0.0);

  const auto e3 = index_via_trace(micro_pair(), 1);
  CHECK(e3.rounded == 0);
  CHECK(e3.residual < 1e-12);
  CHECK_FALSE(e3.non_integer());

  CHECK(to_integer_estimate(0.45).non_integer());
  CHECK(to_integer_estimate(-2.0000001).rounded == -2);
}

TEST_CASE("build_fredholm_module") {
  const auto m1 = build_fredholm_module({DenseMatrix{{1.0}}, DenseMatrix{{1.0}}});
  CHECK(m1.big_dim == 2);
  CHECK(m1.gamma == diag({1.0, -1.0}));
  CHECK(m1.f == DenseMatrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(m1.pi_p1 == DenseMatrix::identity(2));
  CHECK(m1.pi_p2 == DenseMatrix::identity(2));

  const auto m2 = build_fredholm_module({diag({1.0, 0.0}), DenseMatrix(2, 2)});
  CHECK(m2.pi_p1 == diag({1.0, 0.0, 0.0, 0.0}));
  CHECK(m2.pi_p2 == diag({0.0, 0.0, 1.0, 0.0}));

  // Axioms hold exactly, for any pair.
  Xoshiro256 rng(31);
  for (int i = 0; i < 10; ++i) {
    const ProjectionPair pair = random_pair_from_spec(random_spec(rng, 20), rng());
    const auto m = build_fredholm_module(pair);
    const DenseMatrix id = DenseMatrix::identity(m.big_dim);
    CHECK(matmul(m.gamma, m.gamma) == id);
    CHECK(matmul(m.f, m.f) == id);
    CHECK(matmul(m.gamma, m.f) + matmul(m.f, m.gamma) == DenseMatrix(m.big_dim, m.big_dim));
    CHECK(validate_projection(m.pi_p1, 1e-9).passed);
    CHECK(validate_projection(m.pi_p2, 1e-9).passed);

    // [F, pi(P1)] = antidiag(Q - P, P - Q) and its square is -diag(D^2, D^2).
    const std::size_t n = pair.dim();
    const DenseMatrix comm = commutator(m.f, m.pi_p1);
    const DenseMatrix d = pair.difference();
    CHECK(comm.block(0, n, n, n) == pair.q() - pair.p());
    CHECK(comm.block(n, 0, n, n) == d);
    const DenseMatrix d2 = matmul(d, d);
    CHECK(operator_norm(matmul(comm, comm) + direct_sum(d2, d2)) <= 1e-12);
  }
}

TEST_CASE("connes_pairing") {
  // [F, pi(P1)]^2 = -diag(D^2, D^2) with D = diag(1, 0, 0), so the pairing is tr D^3 = 1.
  const auto corner = build_fredholm_module({diag({1.0, 0.0, 0.0}), DenseMatrix(3, 3)});
  CHECK(connes_pairing(corner, 0) == 1.0);
  CHECK(connes_pairing(corner, 3) == 1.0);

  const DenseMatrix p = random_projection(6, 3, 4);
  const auto same = build_fredholm_module({p, p});
  for (unsigned k = 0; k < 4; ++k) CHECK(connes_pairing(same, k) == 0.0);

  const auto micro = build_fredholm_module(micro_pair());
  CHECK(std::abs(connes_pairing(micro, 1)) < 1e-15);

  // Pairing equals tr D^{2k+3}; the batched form matches the single-k form.
  Xoshiro256 rng(8);
  for (int i = 0; i < 10; ++i) {
    const ProjectionPair pair = random_pair_from_spec(random_spec(rng, 24), rng());
    const auto module = build_fredholm_module(pair);
    const auto batched = connes_pairings(module, 4);
    for (unsigned k = 0; k <= 4; ++k) {
      const double single = connes_pairing(module, k);
      CHECK(std::abs(single - trace_power_naive(pair, 2 * k + 3)) <= 1e-6);
      CHECK(std::abs(batched[k] - single) <= 1e-10);
    }
  }
}

TEST_CASE("index_theorem_check") {
  const auto c1 = index_theorem_check({diag({1.0, 1.0, 0.0, 0.0}), diag({1.0, 0.0, 0.0, 0.0})}, 3);
  CHECK(c1.agree);
  CHECK(c1.index_by_rank == 1);
  REQUIRE(c1.index_by_trace.size() == 4);
  REQUIRE(c1.index_by_pairing.size() == 4);
  for (const auto& e : c1.index_by_trace) CHECK(e.rounded == 1);
  for (const auto& e : c1.index_by_pairing) CHECK(e.rounded == 1);

  RepSpec spec;
  spec.m10 = 2;
  spec.m01 = 1;
  spec.m11 = 1;
  spec.points = {{0.7, 1}, {2.5, 2}};
  const auto c2 = index_theorem_check(random_pair_from_spec(spec, 12), 3);
  CHECK(c2.agree);
  CHECK(c2.index_by_rank == 1);

  const DenseMatrix p = random_projection(8, 3, 21);
  const auto c3 = index_theorem_check({p, p}, 3);
  CHECK(c3.agree);
  CHECK(c3.index_by_rank == 0);
}

TEST_CASE("index is stable under unitary conjugation") {
  Xoshiro256 rng(55);
  for (int i = 0; i < 10; ++i) {
    const ProjectionPair pair = random_pair_from_spec(random_spec(rng, 30), rng());
    const DenseMatrix u = random_unitary(pair.dim(), rng());
    const ProjectionPair moved(hermitian_part(adjoint_times(u, matmul(pair.p(), u))),
                               hermitian_part(adjoint_times(u, matmul(pair.q(), u))));
    CHECK(fredholm_index(pair) == fredholm_index(moved));
  }
}
