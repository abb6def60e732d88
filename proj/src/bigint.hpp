#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace flagcount {

// Arbitrary-precision signed integer used for all counts and closed-form
// values.  Point counts grow like q^(3d) and overflow 64-bit integers well
// inside the supported parameter range, so everything that leaves a module
// boundary is a Bigint.
using Bigint = boost::multiprecision::cpp_int;

// base^exp for a non-negative exponent.
inline Bigint big_pow(const Bigint& base, std::uint64_t exp) {
  Bigint result = 1;
  Bigint b = base;
  while (exp != 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace flagcount
