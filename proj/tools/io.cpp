#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <string>

#include "cli.hpp"
#include "projcalc/error.hpp"

namespace projcalc::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

std::size_t count_field(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) parse_fail(std::string("missing field \"") + key + "\"");
    return 0;
  }
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    parse_fail(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) parse_fail(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(what) + " must be finite");
  return x;
}

}  // namespace

json matrix_to_json(const DenseMatrix& m) {
  json data = json::array();
  for (const Complex& z : m.data()) data.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

DenseMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) parse_fail("matrix document must be a JSON object");
  const std::size_t rows = count_field(j, "rows", true);
  const std::size_t cols = count_field(j, "cols", true);
  if (!j.contains("data") || !j.at("data").is_array()) parse_fail("matrix \"data\" must be an array");
  const json& data = j.at("data");
  if (data.size() != rows * cols) {
    parse_fail("matrix data has " + std::to_string(data.size()) + " entries, expected " +
               std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const json& e : data) {
    if (e.is_number()) {
      entries.emplace_back(finite_number(e, "matrix entry"), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      entries.emplace_back(finite_number(e[0], "matrix entry"), finite_number(e[1], "matrix entry"));
    } else {
      parse_fail("matrix entries must be [re, im] pairs");
    }
  }
  return {rows, cols, std::move(entries)};
}

json spec_to_json(const RepSpec& spec) {
  json points = json::array();
  for (const auto& pt : spec.points) points.push_back({{"theta", pt.theta}, {"mult", pt.mult}});
  return {{"m11", spec.m11}, {"m00", spec.m00}, {"m10", spec.m10},
          {"m01", spec.m01}, {"points", std::move(points)}};
}

RepSpec spec_from_json(const json& j) {
  if (!j.is_object()) parse_fail("spec document must be a JSON object");
  RepSpec spec;
  spec.m11 = count_field(j, "m11", false);
  spec.m00 = count_field(j, "m00", false);
  spec.m10 = count_field(j, "m10", false);
  spec.m01 = count_field(j, "m01", false);
  if (j.contains("points")) {
    if (!j.at("points").is_array()) parse_fail("\"points\" must be an array");
    for (const json& p : j.at("points")) {
      if (!p.is_object() || !p.contains("theta")) parse_fail("each point needs a \"theta\"");
      SpectralPoint pt;
      pt.theta = finite_number(p.at("theta"), "theta");
      pt.mult = p.contains("mult") ? count_field(p, "mult", true) : 1;
      spec.points.push_back(pt);
    }
  }
  return spec;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace projcalc::cli
