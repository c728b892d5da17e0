#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projcalc/matrix.hpp"

namespace projcalc {

// Reduction inputs longer than this are rejected with LengthExceeded.
inline constexpr std::size_t kMaxWordLength = 10000;

// Element of the free product of n copies of Z2: a word in symmetries U_1..U_n with no
// two equal adjacent letters.
struct FreeProductWord {
  std::size_t n = 0;
  std::vector<int> letters;  // generator indices in 1..n

  // Cancels adjacent equal letters; throws MismatchedArity on an index outside 1..n.
  static FreeProductWord reduced(std::size_t n, std::vector<int> letters);
  bool operator==(const FreeProductWord&) const = default;
};

struct Syllable {
  int generator = 1;  // 1..m
  std::int64_t exponent = 1;
  bool operator==(const Syllable&) const = default;
};

// Reduced word in the free group on W_1..W_m.
struct FreeGroupWord {
  std::size_t m = 0;
  std::vector<Syllable> syllables;

  // Merges adjacent syllables on the same generator and drops zero exponents.
  static FreeGroupWord reduced(std::size_t m, std::vector<Syllable> syllables);
  // Sum of |exponent|.
  std::size_t length() const noexcept;
  bool operator==(const FreeGroupWord&) const = default;
};

// Group element V^eps * word of the crossed product F_m x| Z2, where V W_i V = W_i^{-1}.
struct CrossedElement {
  int eps = 0;  // 0 or 1
  FreeGroupWord word;
  bool operator==(const CrossedElement&) const = default;
};

FreeProductWord fp_multiply(const FreeProductWord& a, const FreeProductWord& b);
FreeProductWord fp_inverse(const FreeProductWord& a);

FreeGroupWord fg_multiply(const FreeGroupWord& a, const FreeGroupWord& b);
FreeGroupWord fg_inverse(const FreeGroupWord& a);
// The Z2 action: every generator to its inverse.
FreeGroupWord alpha(const FreeGroupWord& w);

CrossedElement cp_identity(std::size_t m);
CrossedElement cp_multiply(const CrossedElement& x, const CrossedElement& y);
CrossedElement cp_inverse(const CrossedElement& x);

// V -> U_1, W_i -> U_1 U_{i+1}, W_i^{-1} -> U_{i+1} U_1.
FreeProductWord iso_to_free_product(const CrossedElement& x);
// U_1 -> V, U_{i+1} -> V W_i.
CrossedElement iso_from_free_product(const FreeProductWord& a);

// Product of U_i = 2 P_i - I over the letters; identity for the empty word.
// projections.size() must equal a.n, all validated at tol and of one dimension.
DenseMatrix evaluate_fp(const FreeProductWord& a, std::span<const DenseMatrix> projections,
                        double tol = 1e-9);
// evaluate_fp through the isomorphism (m + 1 projections).
DenseMatrix evaluate_cp(const CrossedElement& x, std::span<const DenseMatrix> projections,
                        double tol = 1e-9);
// Independent route: V = 2 P_1 - I, W_i = V (2 P_{i+1} - I), W_i^{-1} = W_i*.
DenseMatrix evaluate_cp_direct(const CrossedElement& x, std::span<const DenseMatrix> projections,
                               double tol = 1e-9);

// Text syntax. Free-product words: "U1 U2 U1"; crossed elements: "V W1^-1 W2^3".
// "e" or an empty string is the identity. Tokens may appear in any order; the result is
// their reduced product. n (resp. m) = 0 means infer from the largest index used.
FreeProductWord parse_free_product(std::string_view text, std::size_t n = 0);
CrossedElement parse_crossed(std::string_view text, std::size_t m = 0);
std::string to_string(const FreeProductWord& a);
std::string to_string(const FreeGroupWord& w);
std::string to_string(const CrossedElement& x);

}  // namespace projcalc
