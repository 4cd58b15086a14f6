#include "pdlc/determinant.hpp"

#include <stdexcept>
#include <utility>

namespace pdlc {

BigInt bareissDeterminant(std::span<const BigInt> entries, std::size_t n) {
  if (entries.size() != n * n) {
    throw std::invalid_argument("bareissDeterminant: entries.size() != n * n");
  }
  if (n == 0) return 1;

  std::vector<BigInt> m(entries.begin(), entries.end());
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[r * n + c]; };

  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(at(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(at(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = k; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        BigInt& cell = at(r, c);
        cell = cell * at(k, k) - at(r, k) * at(k, c);
        // Sylvester's identity guarantees this division is exact.
        mpz_divexact(cell.get_mpz_t(), cell.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  BigInt det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

}  // namespace pdlc
