#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pdlc/grid.hpp"

namespace pdlc {

inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 31;

/// out(j) = a(j)^2 - a(j-1) a(j+1) over the input window, zero-extended.
RowSeq lcRow(const RowSeq& a);

/// lcRow applied to every row; rows are processed in parallel.
BigGrid lcGrid(const BigGrid& g, int threads = 0);

/// Upper bound on the total bits of lcGrid(g).
std::uint64_t predictedLcBits(const BigGrid& g);

struct GridPosition {
  Index i;
  Index j;
  friend auto operator<=>(const GridPosition&, const GridPosition&) = default;
};

/// Lexicographically sorted positions of negative entries.
std::vector<GridPosition> negativePositions(const BigGrid& g);

struct LCIterate {
  BigGrid base;
  int depth = 0;
  BigGrid result;
  std::vector<GridPosition> negative_positions;
};

/// m-fold composition of lcGrid. Throws BudgetExceededError (carrying the
/// depth reached) when the predicted size of the next iterate exceeds
/// `bit_budget` total bits.
LCIterate iterateLC(const BigGrid& g, int m,
                    std::uint64_t bit_budget = kDefaultBitBudget,
                    int threads = 0);

struct LogConcavityVerdict {
  bool log_concave = true;
  std::optional<Index> first_violation;
};

/// Log-concave iff the row is non-negative and lcRow(a) is non-negative.
/// Reports the smallest offending index otherwise.
LogConcavityVerdict isLogConcaveRow(const RowSeq& a);

namespace reference {

BigGrid lcGrid(const BigGrid& g);

}  // namespace reference

}  // namespace pdlc
