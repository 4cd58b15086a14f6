#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pdlc/bigint.hpp"
#include "pdlc/grid.hpp"
#include "pdlc/kernel.hpp"

namespace pdlc {

inline constexpr std::size_t kDefaultEntryBudget = 10'000'000;
inline constexpr double kDefaultCrossCheckFraction = 0.01;

/// k x k contiguous minor det(K(i + r, j + s)) evaluated with the Bareiss
/// oracle. k = 0 gives 1; negative j gives 0.
BigInt pdEntryDirect(const Kernel& kernel, int k, Index i, Index j);

/// C(i+1, j+1) C(i+1, j) / (i+1), the Narayana number N(i+1, j+1).
BigInt narayanaClosedForm(Index i, Index j);

/// What to do when a condensation division by a nonzero divisor is inexact.
enum class InexactPolicy {
  raise,   ///< throw InexactDivisionError
  record,  ///< fall back to the oracle and remember the position
};

struct HierarchyOptions {
  /// Fraction of condensation-computed cells re-derived by the oracle.
  /// 1.0 is verification mode.
  double cross_check_fraction = kDefaultCrossCheckFraction;
  std::uint64_t seed = 0;
  std::size_t entry_budget = kDefaultEntryBudget;
  InexactPolicy on_inexact = InexactPolicy::raise;
  /// Worker count for level sweeps; 0 leaves the OpenMP default.
  int threads = 0;
};

struct CellPosition {
  int k;
  Index i;
  Index j;
  friend auto operator<=>(const CellPosition&, const CellPosition&) = default;
};

struct HierarchyStats {
  std::size_t condensed = 0;      ///< cells produced by the recurrence
  std::size_t fallback = 0;       ///< cells produced by the oracle (zero divisor)
  std::size_t cross_checked = 0;  ///< recurrence cells re-derived by the oracle
  std::vector<CellPosition> inexact;  ///< sorted; only with InexactPolicy::record
};

/// PD_0 ... PD_K of a kernel.
///
/// Level k >= 1 is stored on [0, I + K - k] x [0, J + K - k], level 0 on the
/// level-1 window, so level K covers the requested [0, I] x [0, J] and every
/// lower level has the margin its successors consume.
class PDHierarchy {
 public:
  PDHierarchy(Kernel kernel, int max_order, Index i_max, Index j_max,
              std::vector<BigGrid> levels, HierarchyStats stats = {});

  const Kernel& kernel() const { return kernel_; }
  int maxOrder() const { return max_order_; }
  Index iMax() const { return i_max_; }
  Index jMax() const { return j_max_; }
  const BigGrid& level(int k) const;
  const std::vector<BigGrid>& levels() const { return levels_; }
  const HierarchyStats& stats() const { return stats_; }

  /// True when PD_k(i, j) is known: either stored, or zero by convention
  /// (j < 0 with i >= 0).
  bool covers(int k, Index i, Index j) const;

  /// PD_k(i, j); throws WindowError when !covers(k, i, j).
  const BigInt& at(int k, Index i, Index j) const;

  std::size_t cellCount() const;

 private:
  Kernel kernel_;
  int max_order_;
  Index i_max_;
  Index j_max_;
  std::vector<BigGrid> levels_;
  HierarchyStats stats_;
};

/// Window of level k for a hierarchy of order K over [0, I] x [0, J].
struct LevelWindow {
  std::size_t rows;
  std::size_t cols;
};
LevelWindow levelWindow(int k, int max_order, Index i_max, Index j_max);
std::size_t hierarchyCellCount(int max_order, Index i_max, Index j_max);

/// Builds levels 0..K by adjacent Dodgson condensation
///   PD_{k+1}(i,j) = [PD_k(i,j) PD_k(i+1,j+1) - PD_k(i,j+1) PD_k(i+1,j)]
///                   / PD_{k-1}(i+1,j+1),
/// falling back to pdEntryDirect wherever the divisor is zero. Cells of one
/// level are computed in parallel.
///
/// Throws WindowOverflowError, InexactDivisionError (policy raise) or
/// OracleMismatchError.
PDHierarchy buildHierarchy(const Kernel& kernel, int max_order, Index i_max,
                           Index j_max, const HierarchyOptions& options = {});

/// Same windows, every cell of level k >= 1 computed by pdEntryDirect.
PDHierarchy buildHierarchyDirect(const Kernel& kernel, int max_order,
                                 Index i_max, Index j_max,
                                 const HierarchyOptions& options = {});

/// Deterministic per-cell sampling decision for the oracle cross-check.
bool crossCheckSelected(std::uint64_t seed, int k, Index i, Index j,
                        double fraction);

/// Smallest position where the two hierarchies' levels differ, if any.
std::optional<CellPosition> firstDifference(const PDHierarchy& a,
                                            const PDHierarchy& b);

namespace reference {

/// Single-threaded condensation without sampling; kept as the baseline the
/// parallel builder is tested and benchmarked against.
PDHierarchy buildHierarchy(const Kernel& kernel, int max_order, Index i_max,
                           Index j_max);

}  // namespace reference

}  // namespace pdlc
