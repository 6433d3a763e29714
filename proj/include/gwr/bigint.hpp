#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gwr {

/// Exact group orders; 60^61 and friends overflow every native width.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

inline BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

}  // namespace gwr
