#include "projcalc/rep_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "projcalc/error.hpp"
#include "projcalc/random.hpp"
#include "projcalc/spectral.hpp"

namespace projcalc {

std::size_t RepSpec::dim() const noexcept {
  std::size_t d = m11 + m00 + m10 + m01;
  for (const auto& pt : points) d += 2 * pt.mult;
  return d;
}

void RepSpec::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double theta = points[i].theta;
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
      throw Error(Errc::InvalidSpec, "theta " + std::to_string(theta) + " outside (0, pi)");
    }
    if (points[i].mult == 0) throw Error(Errc::InvalidSpec, "point multiplicity must be >= 1");
    if (i > 0 && !(points[i - 1].theta < theta)) {
      throw Error(Errc::InvalidSpec, "points must be strictly ascending in theta");
    }
  }
  if (dim() == 0) throw Error(Errc::InvalidSpec, "representation must have dimension >= 1");
}

BuiltRepresentation build_representation(const RepSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dim();
  BuiltRepresentation rep;
  rep.spec = spec;
  rep.p1 = DenseMatrix(n, n);
  rep.p2 = DenseMatrix(n, n);

  std::size_t i = 0;
  auto atomic = [&](SectorKind kind, std::size_t count, double first, double second) {
    if (count == 0) return;
    rep.layout.push_back({kind, i, count, 0.0});
    for (std::size_t k = 0; k < count; ++k, ++i) {
      rep.p1(i, i) = first;
      rep.p2(i, i) = second;
    }
  };
  atomic(SectorKind::Both, spec.m11, 1.0, 1.0);
  atomic(SectorKind::Neither, spec.m00, 0.0, 0.0);
  atomic(SectorKind::FirstOnly, spec.m10, 1.0, 0.0);
  atomic(SectorKind::SecondOnly, spec.m01, 0.0, 1.0);

  for (const auto& pt : spec.points) {
    const Complex z = std::polar(1.0, pt.theta);
    for (std::size_t k = 0; k < pt.mult; ++k, i += 2) {
      rep.layout.push_back({SectorKind::Cell, i, 2, pt.theta});
      rep.p1(i, i) = 0.5;
      rep.p1(i, i + 1) = 0.5;
      rep.p1(i + 1, i) = 0.5;
      rep.p1(i + 1, i + 1) = 0.5;
      rep.p2(i, i) = 0.5;
      rep.p2(i, i + 1) = 0.5 * z;
      rep.p2(i + 1, i) = 0.5 * std::conj(z);
      rep.p2(i + 1, i + 1) = 0.5;
    }
  }

  rep.v = 2.0 * rep.p1;
  for (std::size_t k = 0; k < n; ++k) rep.v(k, k) -= 1.0;
  return rep;
}

RepVerification verify_built(const BuiltRepresentation& rep, double tol) {
  RepVerification out;
  const std::size_t n = rep.p1.rows();
  const auto p1 = validate_projection(rep.p1, tol);
  const auto p2 = validate_projection(rep.p2, tol);
  const auto vs = validate_symmetry(rep.v, tol);
  out.p1_residual = std::max(p1.algebraic_residual, p1.adjoint_residual);
  out.p2_residual = std::max(p2.algebraic_residual, p2.adjoint_residual);
  out.v_symmetry_residual = std::max(vs.algebraic_residual, vs.adjoint_residual);

  DenseMatrix expected_v = 2.0 * rep.p1;
  for (std::size_t k = 0; k < n; ++k) expected_v(k, k) -= 1.0;
  out.v_definition_residual = operator_norm(rep.v - expected_v);

  DenseMatrix u2 = 2.0 * rep.p2;
  for (std::size_t k = 0; k < n; ++k) u2(k, k) -= 1.0;
  const DenseMatrix w = matmul(rep.v, u2);
  out.relation_residual = operator_norm(matmul(matmul(rep.v, w), rep.v) - adjoint(w));

  for (const auto& block : rep.layout) {
    if (block.kind == SectorKind::Cell) {
      const Complex z = std::polar(1.0, block.theta);
      const DenseMatrix v_cell = rep.v.block(block.offset, block.offset, 2, 2);
      const DenseMatrix m_z = DenseMatrix::diagonal({z, std::conj(z)});
      const DenseMatrix m_zbar = DenseMatrix::diagonal({std::conj(z), z});
      out.conjugation_residual =
          std::max(out.conjugation_residual, operator_norm(matmul(matmul(v_cell, m_z), v_cell) - m_zbar));
      continue;
    }
    for (std::size_t r = block.offset; r < block.offset + block.size; ++r) {
      for (std::size_t c = block.offset; c < block.offset + block.size; ++c) {
        const Complex x = rep.p1(r, c) - rep.p2(r, c);
        double dist = std::abs(x);
        if (r == c) {
          dist = std::min({std::abs(x - 1.0), std::abs(x), std::abs(x + 1.0)});
        }
        out.atomic_spectrum_residual = std::max(out.atomic_spectrum_residual, dist);
      }
    }
  }

  out.passed = out.p1_residual <= tol && out.p2_residual <= tol && out.v_symmetry_residual <= tol &&
               out.v_definition_residual <= tol && out.relation_residual <= tol &&
               out.conjugation_residual <= tol && out.atomic_spectrum_residual == 0.0;
  return out;
}

ProjectionPair random_pair_from_spec(const RepSpec& spec, std::uint64_t seed) {
  const BuiltRepresentation rep = build_representation(spec);
  const DenseMatrix u = random_unitary(spec.dim(), seed);
  DenseMatrix p = hermitian_part(adjoint_times(u, matmul(rep.p1, u)));
  DenseMatrix q = hermitian_part(adjoint_times(u, matmul(rep.p2, u)));
  return ProjectionPair(std::move(p), std::move(q));
}

RepSpec spec_of_decomposition(const HalmosDecomposition& dec, double tol_cluster) {
  RepSpec spec;
  spec.m11 = dec.m11;
  spec.m00 = dec.m00;
  spec.m10 = dec.m10;
  spec.m01 = dec.m01;
  std::vector<double> angles = dec.angles;
  std::sort(angles.begin(), angles.end());
  double group_sum = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!spec.points.empty() && angles[i] - angles[i - 1] <= tol_cluster) {
      auto& last = spec.points.back();
      group_sum += angles[i];
      ++last.mult;
      last.theta = group_sum / static_cast<double>(last.mult);
    } else {
      group_sum = angles[i];
      spec.points.push_back({angles[i], 1});
    }
  }
  return spec;
}

}  // namespace projcalc
