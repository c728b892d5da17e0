#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "projcalc/matrix.hpp"

namespace projcalc {

// xoshiro256** (Blackman & Vigna), state expanded from a 64-bit seed by splitmix64.
// Output is fully determined by the seed on every platform.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t operator()();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1]; safe as a log argument.
  double uniform_open_low();
  // Standard normal by Box-Muller; the second variate of each pair is cached.
  double gaussian();
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Seeded Haar-like unitary: Gram-Schmidt (twice) on a complex Gaussian matrix.
DenseMatrix random_unitary(std::size_t n, std::uint64_t seed);

// Orthogonal projection onto a random rank-r subspace of C^n.
DenseMatrix random_projection(std::size_t n, std::size_t rank, std::uint64_t seed);

}  // namespace projcalc
