#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace pdlc {

using BigInt = mpz_class;

inline std::string toDecimal(const BigInt& v) { return v.get_str(10); }

/// Number of bits in |v|; zero occupies one bit.
inline std::size_t bitSize(const BigInt& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt fromInt(std::int64_t v) {
  BigInt out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

/// Shared immutable zero used by the zero-extension accessors.
const BigInt& zero();

}  // namespace pdlc
