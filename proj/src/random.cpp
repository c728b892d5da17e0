#include "projcalc/random.hpp"

#include <cmath>
#include <numbers>

#include "projcalc/error.hpp"

namespace projcalc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Xoshiro256::uniform_open_low() { return 1.0 - uniform(); }

double Xoshiro256::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_low()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::int64_t Xoshiro256::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>((*this)());
  // Rejection keeps the distribution exactly uniform.
  const std::uint64_t limit = max() - max() % span;
  std::uint64_t x = (*this)();
  while (x >= limit) x = (*this)();
  return lo + static_cast<std::int64_t>(x % span);
}

DenseMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::InvalidSpec, "random_unitary needs n >= 1");
  Xoshiro256 rng(seed);
  DenseMatrix g(n, n);
  for (Complex& z : g.data()) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    z = Complex{re, im};
  }
  // Modified Gram-Schmidt, two passes per column.
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex dot{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(g(r, prev)) * g(r, c);
        for (std::size_t r = 0; r < n; ++r) g(r, c) -= dot * g(r, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
  }
  return g;
}

DenseMatrix random_projection(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (rank > n) throw Error(Errc::InvalidSpec, "projection rank exceeds dimension");
  if (rank == 0) return DenseMatrix(n, n);
  const DenseMatrix basis = random_unitary(n, seed).columns(0, rank);
  return hermitian_part(matmul(basis, adjoint(basis)));
}

}  // namespace projcalc
