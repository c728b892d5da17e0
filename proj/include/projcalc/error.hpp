#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projcalc {

enum class Errc {
  NotSquare,
  NotHermitian,
  NoConvergence,
  ValidationFailed,
  PairingFailure,
  DegenerateAngle,
  InconsistentDims,
  MismatchedArity,
  InvalidSpec,
  ParseError,
  LengthExceeded,
};

std::string_view to_string(Errc code);

// Every failure the library reports is an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace projcalc
