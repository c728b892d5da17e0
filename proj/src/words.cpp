#include "projcalc/words.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "projcalc/error.hpp"
#include "projcalc/projection_pair.hpp"

namespace projcalc {

namespace {

void require_length(std::size_t length, const char* what) {
  if (length > kMaxWordLength) {
    throw Error(Errc::LengthExceeded, std::string(what) + " length " + std::to_string(length) +
                                          " exceeds cap " + std::to_string(kMaxWordLength));
  }
}

void require_same_arity(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(Errc::MismatchedArity, std::string(what) + ": arity " + std::to_string(a) +
                                           " vs " + std::to_string(b));
  }
}

}  // namespace

FreeProductWord FreeProductWord::reduced(std::size_t n, std::vector<int> letters) {
  require_length(letters.size(), "free-product word");
  std::vector<int> stack;
  stack.reserve(letters.size());
  for (int letter : letters) {
    if (letter < 1 || static_cast<std::size_t>(letter) > n) {
      throw Error(Errc::MismatchedArity, "letter U" + std::to_string(letter) +
                                             " outside 1.." + std::to_string(n));
    }
    if (!stack.empty() && stack.back() == letter) {
      stack.pop_back();
    } else {
      stack.push_back(letter);
    }
  }
  return FreeProductWord{n, std::move(stack)};
}

FreeGroupWord FreeGroupWord::reduced(std::size_t m, std::vector<Syllable> syllables) {
  require_length(syllables.size(), "free-group word");
  std::vector<Syllable> stack;
  stack.reserve(syllables.size());
  for (const Syllable& s : syllables) {
    if (s.generator < 1 || static_cast<std::size_t>(s.generator) > m) {
      throw Error(Errc::MismatchedArity, "generator W" + std::to_string(s.generator) +
                                             " outside 1.." + std::to_string(m));
    }
    if (s.exponent == 0) continue;
    if (!stack.empty() && stack.back().generator == s.generator) {
      stack.back().exponent += s.exponent;
      if (stack.back().exponent == 0) stack.pop_back();
    } else {
      stack.push_back(s);
    }
  }
  return FreeGroupWord{m, std::move(stack)};
}

std::size_t FreeGroupWord::length() const noexcept {
  std::size_t total = 0;
  for (const auto& s : syllables) total += static_cast<std::size_t>(std::llabs(s.exponent));
  return total;
}

FreeProductWord fp_multiply(const FreeProductWord& a, const FreeProductWord& b) {
  require_same_arity(a.n, b.n, "fp_multiply");
  std::vector<int> letters = a.letters;
  letters.insert(letters.end(), b.letters.begin(), b.letters.end());
  return FreeProductWord::reduced(a.n, std::move(letters));
}

FreeProductWord fp_inverse(const FreeProductWord& a) {
  return FreeProductWord{a.n, std::vector<int>(a.letters.rbegin(), a.letters.rend())};
}

FreeGroupWord fg_multiply(const FreeGroupWord& a, const FreeGroupWord& b) {
  require_same_arity(a.m, b.m, "fg_multiply");
  std::vector<Syllable> s = a.syllables;
  s.insert(s.end(), b.syllables.begin(), b.syllables.end());
  return FreeGroupWord::reduced(a.m, std::move(s));
}

FreeGroupWord fg_inverse(const FreeGroupWord& a) {
  FreeGroupWord out{a.m, {}};
  out.syllables.reserve(a.syllables.size());
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
    out.syllables.push_back({it->generator, -it->exponent});
  }
  return out;
}

FreeGroupWord alpha(const FreeGroupWord& w) {
  FreeGroupWord out = w;
  for (auto& s : out.syllables) s.exponent = -s.exponent;
  return out;
}

CrossedElement cp_identity(std::size_t m) { return CrossedElement{0, FreeGroupWord{m, {}}}; }

CrossedElement cp_multiply(const CrossedElement& x, const CrossedElement& y) {
  require_same_arity(x.word.m, y.word.m, "cp_multiply");
  // V^a u V^b v = V^{a+b} alpha^b(u) v
  const FreeGroupWord left = y.eps == 1 ? alpha(x.word) : x.word;
  return CrossedElement{x.eps ^ y.eps, fg_multiply(left, y.word)};
}

CrossedElement cp_inverse(const CrossedElement& x) {
  const FreeGroupWord inv = fg_inverse(x.word);
  return CrossedElement{x.eps, x.eps == 1 ? alpha(inv) : inv};
}

FreeProductWord iso_to_free_product(const CrossedElement& x) {
  const std::size_t n = x.word.m + 1;
  require_length(2 * x.word.length() + static_cast<std::size_t>(x.eps), "expanded word");
  std::vector<int> letters;
  if (x.eps == 1) letters.push_back(1);
  for (const auto& s : x.word.syllables) {
    const int u = s.generator + 1;
    for (std::int64_t k = 0; k < std::llabs(s.exponent); ++k) {
      if (s.exponent > 0) {
        letters.push_back(1);
        letters.push_back(u);
      } else {
        letters.push_back(u);
        letters.push_back(1);
      }
    }
  }
  return FreeProductWord::reduced(n, std::move(letters));
}

CrossedElement iso_from_free_product(const FreeProductWord& a) {
  if (a.n == 0) throw Error(Errc::MismatchedArity, "free product of zero factors");
  const std::size_t m = a.n - 1;
  // U_a U_b = (V W_{a-1})(V W_{b-1}) = W_{a-1}^{-1} W_{b-1}, with W_0 the identity.
  std::vector<Syllable> syllables;
  const std::size_t pairs = a.letters.size() / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const int first = a.letters[2 * j] - 1;
    const int second = a.letters[2 * j + 1] - 1;
    if (first > 0) syllables.push_back({first, -1});
    if (second > 0) syllables.push_back({second, 1});
  }
  FreeGroupWord body = FreeGroupWord::reduced(m, std::move(syllables));
  if (a.letters.size() % 2 == 0) return CrossedElement{0, std::move(body)};
  // body * V W_{c-1} = V alpha(body) W_{c-1}
  const int last = a.letters.back() - 1;
  FreeGroupWord tail{m, {}};
  if (last > 0) tail.syllables.push_back({last, 1});
  return CrossedElement{1, fg_multiply(alpha(body), tail)};
}

namespace {

std::vector<DenseMatrix> symmetries_of(std::span<const DenseMatrix> projections, std::size_t n,
                                       double tol) {
  require_same_arity(projections.size(), n, "evaluate");
  std::vector<DenseMatrix> out;
  out.reserve(n);
  for (const auto& p : projections) {
    if (!p.is_square() || p.rows() != projections.front().rows()) {
      throw Error(Errc::InconsistentDims, "projections must share one square dimension");
    }
    out.push_back(symmetry_of(p, tol));
  }
  return out;
}

}  // namespace

DenseMatrix evaluate_fp(const FreeProductWord& a, std::span<const DenseMatrix> projections,
                        double tol) {
  const auto symmetries = symmetries_of(projections, a.n, tol);
  const std::size_t dim = projections.empty() ? 0 : projections.front().rows();
  DenseMatrix result = DenseMatrix::identity(dim);
  for (int letter : a.letters) {
    result = matmul(result, symmetries.at(static_cast<std::size_t>(letter - 1)));
  }
  return result;
}

DenseMatrix evaluate_cp(const CrossedElement& x, std::span<const DenseMatrix> projections,
                        double tol) {
  return evaluate_fp(iso_to_free_product(x), projections, tol);
}

DenseMatrix evaluate_cp_direct(const CrossedElement& x, std::span<const DenseMatrix> projections,
                               double tol) {
  const auto symmetries = symmetries_of(projections, x.word.m + 1, tol);
  const DenseMatrix& v = symmetries.front();
  DenseMatrix result = x.eps == 1 ? v : DenseMatrix::identity(v.rows());
  for (const auto& s : x.word.syllables) {
    const DenseMatrix w = matmul(v, symmetries.at(static_cast<std::size_t>(s.generator)));
    const DenseMatrix base = s.exponent > 0 ? w : adjoint(w);
    result = matmul(result, matrix_power(base, static_cast<unsigned>(std::llabs(s.exponent))));
  }
  return result;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '*' || text[i] == ',')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                                text[i] == '*' || text[i] == ',')) {
      ++i;
    }
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::int64_t parse_int(std::string_view s, std::string_view token) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::ParseError, "bad number in token '" + std::string(token) + "'");
  }
  return value;
}

struct Token {
  char symbol;  // 'U', 'V', 'W' or 'e'
  int index;
  std::int64_t exponent;
};

Token parse_token(std::string_view token) {
  if (token == "e" || token == "1") return {'e', 0, 0};
  const char symbol = token.front();
  if (symbol != 'U' && symbol != 'V' && symbol != 'W') {
    throw Error(Errc::ParseError, "unknown token '" + std::string(token) + "'");
  }
  std::string_view rest = token.substr(1);
  std::int64_t exponent = 1;
  if (const auto caret = rest.find('^'); caret != std::string_view::npos) {
    exponent = parse_int(rest.substr(caret + 1), token);
    rest = rest.substr(0, caret);
  }
  if (std::llabs(exponent) > static_cast<std::int64_t>(kMaxWordLength)) {
    throw Error(Errc::LengthExceeded, "exponent in '" + std::string(token) + "' exceeds cap");
  }
  int index = 0;
  if (symbol == 'V') {
    if (!rest.empty()) throw Error(Errc::ParseError, "V takes no index: '" + std::string(token) + "'");
  } else {
    const std::int64_t i = parse_int(rest, token);
    if (i < 1 || i > static_cast<std::int64_t>(kMaxWordLength)) {
      throw Error(Errc::ParseError, "generator index out of range in '" + std::string(token) + "'");
    }
    index = static_cast<int>(i);
  }
  return {symbol, index, exponent};
}

}  // namespace

FreeProductWord parse_free_product(std::string_view text, std::size_t n) {
  std::vector<int> letters;
  int max_index = 0;
  for (std::string_view tok : tokenize(text)) {
    const Token t = parse_token(tok);
    if (t.symbol == 'e') continue;
    if (t.symbol != 'U') {
      throw Error(Errc::ParseError, "free-product words use U<i>, got '" + std::string(tok) + "'");
    }
    max_index = std::max(max_index, t.index);
    if (t.exponent % 2 != 0) letters.push_back(t.index);  // U_i^2 = 1
    require_length(letters.size(), "free-product word");
  }
  return FreeProductWord::reduced(n == 0 ? static_cast<std::size_t>(max_index) : n,
                                  std::move(letters));
}

CrossedElement parse_crossed(std::string_view text, std::size_t m) {
  std::vector<Token> tokens;
  int max_index = 0;
  for (std::string_view tok : tokenize(text)) {
    const Token t = parse_token(tok);
    if (t.symbol == 'U') {
      throw Error(Errc::ParseError, "crossed elements use V and W<i>, got '" + std::string(tok) + "'");
    }
    if (t.symbol == 'W') max_index = std::max(max_index, t.index);
    if (t.symbol != 'e') tokens.push_back(t);
  }
  require_length(tokens.size(), "crossed element");
  const std::size_t arity = m == 0 ? static_cast<std::size_t>(max_index) : m;
  CrossedElement result = cp_identity(arity);
  for (const Token& t : tokens) {
    CrossedElement factor = cp_identity(arity);
    if (t.symbol == 'V') {
      factor.eps = static_cast<int>(std::llabs(t.exponent) % 2);
    } else {
      factor.word = FreeGroupWord::reduced(arity, {{t.index, t.exponent}});
    }
    result = cp_multiply(result, factor);
  }
  return result;
}

std::string to_string(const FreeProductWord& a) {
  if (a.letters.empty()) return "e";
  std::string out;
  for (int letter : a.letters) {
    if (!out.empty()) out += ' ';
    out += 'U' + std::to_string(letter);
  }
  return out;
}

std::string to_string(const FreeGroupWord& w) {
  if (w.syllables.empty()) return "e";
  std::string out;
  for (const auto& s : w.syllables) {
    if (!out.empty()) out += ' ';
    out += 'W' + std::to_string(s.generator);
    if (s.exponent != 1) out += '^' + std::to_string(s.exponent);
  }
  return out;
}

std::string to_string(const CrossedElement& x) {
  if (x.eps == 0) return to_string(x.word);
  if (x.word.syllables.empty()) return "V";
  return "V " + to_string(x.word);
}

}  // namespace projcalc
