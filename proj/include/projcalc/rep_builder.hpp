#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "projcalc/matrix.hpp"
#include "projcalc/projection_pair.hpp"

namespace projcalc {

// Atom of the discretized measure on the upper semicircle: the point e^{i theta}
// carried with multiplicity `mult`.
struct SpectralPoint {
  double theta = 0.0;  // in (0, pi)
  std::size_t mult = 1;
  bool operator==(const SpectralPoint&) const = default;
};

// Finite-dimensional representation data of the algebra generated by two projections:
// multiplicities of the four joint-eigenvalue sectors plus atoms on S+.
struct RepSpec {
  std::size_t m11 = 0;
  std::size_t m00 = 0;
  std::size_t m10 = 0;
  std::size_t m01 = 0;
  std::vector<SpectralPoint> points;  // strictly ascending theta

  std::size_t dim() const noexcept;
  // Throws InvalidSpec.
  void validate() const;
  bool operator==(const RepSpec&) const = default;
};

enum class SectorKind { Both, Neither, FirstOnly, SecondOnly, Cell };

struct SectorBlock {
  SectorKind kind = SectorKind::Both;
  std::size_t offset = 0;
  std::size_t size = 0;
  double theta = 0.0;  // cells only
};

struct BuiltRepresentation {
  DenseMatrix p1;
  DenseMatrix p2;
  DenseMatrix v;  // 2 P1 - I
  RepSpec spec;
  std::vector<SectorBlock> layout;
};

struct RepVerification {
  double p1_residual = 0.0;         // ||P1^2 - P1|| + ||P1 - P1*|| (max of the two)
  double p2_residual = 0.0;
  double v_symmetry_residual = 0.0;
  double v_definition_residual = 0.0;  // ||V - (2 P1 - I)||
  double relation_residual = 0.0;      // ||V W V - W*||, W = V (2 P2 - I)
  double conjugation_residual = 0.0;   // max over cells of ||V M_z V - M_conj(z)||
  double atomic_spectrum_residual = 0.0;  // distance of atomic P1 - P2 entries from {-1, 0, 1}
  bool passed = false;
};

BuiltRepresentation build_representation(const RepSpec& spec);
RepVerification verify_built(const BuiltRepresentation& rep, double tol = 1e-12);

// (U* P1 U, U* P2 U) for U = random_unitary(dim, seed).
ProjectionPair random_pair_from_spec(const RepSpec& spec, std::uint64_t seed);

// Cell angles within tol_cluster of each other are merged into one point.
RepSpec spec_of_decomposition(const HalmosDecomposition& dec, double tol_cluster = 1e-7);

}  // namespace projcalc
