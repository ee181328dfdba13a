#pragma once

// JSON form of a polynomial: {"coeffs": ["1", "2", ...]}, index = exponent.
// Coefficients are decimal strings because they routinely exceed 2^53.

#include <string>
#include <vector>

#include <json.hpp>

#include "fibwork/qpoly.hpp"

namespace fibwork {

using Json = nlohmann::json;

inline Json coeffs_to_json(const Polynomial& p) {
  Json array = Json::array();
  for (const auto& c : p.coefficients()) array.push_back(to_decimal(c));
  return array;
}

inline Json to_json(const Polynomial& p) { return Json{{"coeffs", coeffs_to_json(p)}}; }

/// Accepts any object carrying a "coeffs" array of decimal strings; other
/// keys are ignored.
inline Polynomial polynomial_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("coeffs") || !doc.at("coeffs").is_array()) {
    throw std::invalid_argument("polynomial JSON must be an object with a \"coeffs\" array");
  }
  std::vector<BigInt> coeffs;
  for (const auto& entry : doc.at("coeffs")) {
    if (!entry.is_string()) throw std::invalid_argument("polynomial coefficients must be decimal strings");
    coeffs.push_back(parse_decimal(entry.get<std::string>()));
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace fibwork
