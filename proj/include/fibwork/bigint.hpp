#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibwork {

/// Arbitrary-precision signed integer used for every exact coefficient.
using BigInt = boost::multiprecision::cpp_int;

/// Raised when an input lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::string to_decimal(const BigInt& value) { return value.str(); }

/// Parses an optionally signed decimal literal. Rejects anything else,
/// including empty strings, whitespace and leading '+'.
inline BigInt parse_decimal(std::string_view text) {
  std::size_t start = (!text.empty() && text.front() == '-') ? 1 : 0;
  if (text.size() == start) {
    throw std::invalid_argument("empty decimal literal");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("invalid decimal literal: " + std::string(text));
    }
  }
  return BigInt(std::string(text));
}

}  // namespace fibwork
