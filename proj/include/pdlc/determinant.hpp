#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdlc/bigint.hpp"

namespace pdlc {

/// Exact determinant of the n x n row-major matrix `entries` by fraction-free
/// (Bareiss) elimination. Zero pivots are handled by row swaps; n = 0 gives 1.
BigInt bareissDeterminant(std::span<const BigInt> entries, std::size_t n);

inline BigInt bareissDeterminant(const std::vector<std::vector<BigInt>>& rows) {
  std::vector<BigInt> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return bareissDeterminant(flat, rows.size());
}

}  // namespace pdlc
