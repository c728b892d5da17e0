#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "projcalc/matrix.hpp"
#include "projcalc/rep_builder.hpp"

namespace projcalc::cli {

inline constexpr std::string_view kSchema = "projcalc/1";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseError = 2, kValidationError = 3 };

// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const nlohmann::json& j);

// {"m11", "m00", "m10", "m01", "points": [{"theta", "mult"}]}
nlohmann::json spec_to_json(const RepSpec& spec);
RepSpec spec_from_json(const nlohmann::json& j);

std::string sha256_hex(std::string_view bytes);

// Runs one command; args exclude the program name. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projcalc::cli
