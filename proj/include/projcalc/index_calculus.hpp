#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "projcalc/matrix.hpp"
#include "projcalc/projection_pair.hpp"
#include "projcalc/tolerance.hpp"

namespace projcalc {

// Even Fredholm module on K = H + H built from a pair (P, Q):
//   gamma = diag(I, -I), F = [[0, I], [I, 0]],
//   pi(P1) = diag(P, Q), pi(P2) = diag(Q, P).
struct FredholmModuleData {
  std::size_t big_dim = 0;
  DenseMatrix gamma;
  DenseMatrix f;
  DenseMatrix pi_p1;
  DenseMatrix pi_p2;
};

// A real number that should be an integer, with its rounding residual.
struct IntegerEstimate {
  double value = 0.0;
  std::int64_t rounded = 0;
  double residual = 0.0;
  // residual > 0.1; flagged, never thrown
  bool non_integer() const noexcept { return residual > 0.1; }
};

IntegerEstimate to_integer_estimate(double value);

struct IndexCertificate {
  std::int64_t index_by_rank = 0;
  std::vector<IntegerEstimate> index_by_trace;    // k -> tr D^{2k+1}
  std::vector<IntegerEstimate> index_by_pairing;  // k -> signed pairing, equal to tr D^{2k+3}
  bool agree = false;
};

// Matrix of QP : ran P -> ran Q in orthonormal range bases (rank Q x rank P).
DenseMatrix restricted_operator(const ProjectionPair& pair, const ToleranceConfig& tol = {});

// dim ker M - dim ker M* for M = restricted_operator(pair).
std::int64_t fredholm_index(const ProjectionPair& pair, const ToleranceConfig& tol = {});

IntegerEstimate index_via_trace(const ProjectionPair& pair, unsigned k);

FredholmModuleData build_fredholm_module(const ProjectionPair& pair);

// (-1)^{k+1} tr gamma pi(P1) [F, pi(P1)]^{2k+2}
double connes_pairing(const FredholmModuleData& module, unsigned k);
// connes_pairing for k = 0..k_max, sharing the commutator powers.
std::vector<double> connes_pairings(const FredholmModuleData& module, unsigned k_max);

IndexCertificate index_theorem_check(const ProjectionPair& pair, unsigned k_max = 3,
                                     const ToleranceConfig& tol = {});

}  // namespace projcalc
