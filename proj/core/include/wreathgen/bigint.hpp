#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wreathgen {

/// Exact group orders. Orders such as 60^31 overflow every machine word.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

inline BigInt big_pow(const BigInt& base, std::uint64_t exponent)
{
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1u)
      result *= b;
    exponent >>= 1u;
    if (exponent != 0)
      b *= b;
  }
  return result;
}

} // namespace wreathgen
