#include "pdlc/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "pdlc/determinant.hpp"
#include "pdlc/errors.hpp"
#include "pdlc/parallel.hpp"
#include "pdlc/seed.hpp"

namespace pdlc {

BigInt pdEntryDirect(const Kernel& kernel, int k, Index i, Index j) {
  if (k < 0) throw std::invalid_argument("pdEntryDirect: negative order");
  if (i < 0 || j < 0) return 0;
  if (k == 0) return 1;
  const auto n = static_cast<std::size_t>(k);
  std::vector<BigInt> m;
  m.reserve(n * n);
  for (Index r = 0; r < k; ++r) {
    for (Index s = 0; s < k; ++s) m.push_back(kernel.entry(i + r, j + s));
  }
  return bareissDeterminant(m, n);
}

BigInt narayanaClosedForm(Index i, Index j) {
  if (i < 0 || j < 0 || j > i) {
    throw std::invalid_argument("narayanaClosedForm: requires 0 <= j <= i");
  }
  BigInt out = binomial(i + 1, j + 1) * binomial(i + 1, j);
  const BigInt n = fromInt(i + 1);
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
  return out;
}

LevelWindow levelWindow(int k, int max_order, Index i_max, Index j_max) {
  if (max_order == 0) {
    return {static_cast<std::size_t>(i_max + 1),
            static_cast<std::size_t>(j_max + 1)};
  }
  const int shrink = std::max(k, 1);
  return {static_cast<std::size_t>(i_max + max_order - shrink + 1),
          static_cast<std::size_t>(j_max + max_order - shrink + 1)};
}

std::size_t hierarchyCellCount(int max_order, Index i_max, Index j_max) {
  std::size_t total = 0;
  for (int k = 0; k <= max_order; ++k) {
    const auto w = levelWindow(k, max_order, i_max, j_max);
    total += w.rows * w.cols;
  }
  return total;
}

PDHierarchy::PDHierarchy(Kernel kernel, int max_order, Index i_max,
                         Index j_max, std::vector<BigGrid> levels,
                         HierarchyStats stats)
    : kernel_(std::move(kernel)), max_order_(max_order), i_max_(i_max),
      j_max_(j_max), levels_(std::move(levels)), stats_(std::move(stats)) {
  if (levels_.size() != static_cast<std::size_t>(max_order_) + 1) {
    throw std::invalid_argument("PDHierarchy: need one level per order");
  }
}

const BigGrid& PDHierarchy::level(int k) const {
  if (k < 0 || k > max_order_) {
    throw WindowError("order " + std::to_string(k) +
                      " outside hierarchy 0.." + std::to_string(max_order_));
  }
  return levels_[static_cast<std::size_t>(k)];
}

bool PDHierarchy::covers(int k, Index i, Index j) const {
  if (k < 0 || k > max_order_ || i < 0) return false;
  if (j < 0) return true;
  return levels_[static_cast<std::size_t>(k)].contains(i, j);
}

const BigInt& PDHierarchy::at(int k, Index i, Index j) const {
  if (!covers(k, i, j)) {
    throw WindowError("PD_" + std::to_string(k) + "(" + std::to_string(i) +
                      "," + std::to_string(j) +
                      ") lies outside the computed hierarchy window");
  }
  return levels_[static_cast<std::size_t>(k)].get(i, j);
}

std::size_t PDHierarchy::cellCount() const {
  std::size_t total = 0;
  for (const auto& g : levels_) total += g.cellCount();
  return total;
}

bool crossCheckSelected(std::uint64_t seed, int k, Index i, Index j,
                        double fraction) {
  if (fraction <= 0.0) return false;
  if (fraction >= 1.0) return true;
  const auto h = deriveSeed(seed, {k, i, j});
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < fraction;
}

std::optional<CellPosition> firstDifference(const PDHierarchy& a,
                                            const PDHierarchy& b) {
  const int top = std::max(a.maxOrder(), b.maxOrder());
  static const BigGrid empty;
  for (int k = 0; k <= top; ++k) {
    const BigGrid& ga = k <= a.maxOrder() ? a.level(k) : empty;
    const BigGrid& gb = k <= b.maxOrder() ? b.level(k) : empty;
    const Index i1 = std::max(ga.rowEnd(), gb.rowEnd());
    const Index j1 = std::max(ga.colEnd(), gb.colEnd());
    for (Index i = std::min(ga.originI(), gb.originI()); i < i1; ++i) {
      for (Index j = std::min(ga.originJ(), gb.originJ()); j < j1; ++j) {
        if (ga.get(i, j) != gb.get(i, j)) return CellPosition{k, i, j};
      }
    }
  }
  return std::nullopt;
}

namespace {

void checkRequest(int max_order, Index i_max, Index j_max,
                  std::size_t entry_budget) {
  if (max_order < 0 || i_max < 0 || j_max < 0) {
    throw std::invalid_argument("hierarchy order and window must be >= 0");
  }
  const auto cells = hierarchyCellCount(max_order, i_max, j_max);
  if (cells > entry_budget) {
    throw WindowOverflowError(
        "window-overflow: hierarchy needs " + std::to_string(cells) +
        " cells, entry budget is " + std::to_string(entry_budget));
  }
}

BigGrid onesLevel(int max_order, Index i_max, Index j_max) {
  const auto w = levelWindow(0, max_order, i_max, j_max);
  return BigGrid::filled(0, 0, w.rows, w.cols, BigInt(1));
}

// Kernel rows touched by any oracle call on this hierarchy.
Index kernelRowsNeeded(int max_order, Index i_max) {
  return i_max + 2 * static_cast<Index>(max_order);
}

struct CellOutcome {
  enum class Kind { none, mismatch, inexact } kind = Kind::none;
  CellPosition pos{};
};

}  // namespace

PDHierarchy buildHierarchy(const Kernel& kernel, int max_order, Index i_max,
                           Index j_max, const HierarchyOptions& options) {
  checkRequest(max_order, i_max, j_max, options.entry_budget);
  kernel.warm(kernelRowsNeeded(max_order, i_max));
  const int threads = resolveThreads(options.threads);

  std::vector<BigGrid> levels;
  levels.reserve(static_cast<std::size_t>(max_order) + 1);
  levels.push_back(onesLevel(max_order, i_max, j_max));
  HierarchyStats stats;

  for (int k = 1; k <= max_order; ++k) {
    const auto w = levelWindow(k, max_order, i_max, j_max);
    const auto cells = static_cast<std::int64_t>(w.rows * w.cols);
    std::vector<BigInt> values(w.rows * w.cols);
    const BigGrid* upper = k >= 2 ? &levels[static_cast<std::size_t>(k - 1)]
                                  : nullptr;
    const BigGrid* lower = k >= 2 ? &levels[static_cast<std::size_t>(k - 2)]
                                  : nullptr;
    std::size_t condensed = 0;
    std::size_t fallback = 0;
    std::size_t checked = 0;
    std::vector<CellOutcome> problems;

#pragma omp parallel for num_threads(threads) schedule(dynamic, 64) \
    reduction(+ : condensed, fallback, checked)
    for (std::int64_t t = 0; t < cells; ++t) {
      const Index i = t / static_cast<Index>(w.cols);
      const Index j = t % static_cast<Index>(w.cols);
      BigInt& out = values[static_cast<std::size_t>(t)];
      if (k == 1) {
        out = kernel.entry(i, j);
        continue;
      }
      const BigInt& divisor = lower->get(i + 1, j + 1);
      if (sgn(divisor) == 0) {
        out = pdEntryDirect(kernel, k, i, j);
        ++fallback;
        continue;
      }
      BigInt num = upper->get(i, j) * upper->get(i + 1, j + 1) -
                   upper->get(i, j + 1) * upper->get(i + 1, j);
      if (mpz_divisible_p(num.get_mpz_t(), divisor.get_mpz_t()) == 0) {
        out = pdEntryDirect(kernel, k, i, j);
        ++fallback;
#pragma omp critical(pdlc_condense_problems)
        problems.push_back({CellOutcome::Kind::inexact, {k, i, j}});
        continue;
      }
      mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), divisor.get_mpz_t());
      ++condensed;
      if (crossCheckSelected(options.seed, k, i, j,
                             options.cross_check_fraction)) {
        ++checked;
        if (pdEntryDirect(kernel, k, i, j) != out) {
#pragma omp critical(pdlc_condense_problems)
          problems.push_back({CellOutcome::Kind::mismatch, {k, i, j}});
        }
      }
    }

    std::sort(problems.begin(), problems.end(),
              [](const CellOutcome& a, const CellOutcome& b) {
                return a.pos < b.pos;
              });
    for (const auto& p : problems) {
      if (p.kind == CellOutcome::Kind::mismatch) {
        throw OracleMismatchError(p.pos.k, p.pos.i, p.pos.j);
      }
      if (options.on_inexact == InexactPolicy::raise) {
        throw InexactDivisionError(p.pos.k, p.pos.i, p.pos.j);
      }
      stats.inexact.push_back(p.pos);
    }
    stats.condensed += condensed;
    stats.fallback += fallback;
    stats.cross_checked += checked;
    levels.emplace_back(0, 0, w.rows, w.cols, std::move(values));
  }
  return PDHierarchy(kernel, max_order, i_max, j_max, std::move(levels),
                     std::move(stats));
}

PDHierarchy buildHierarchyDirect(const Kernel& kernel, int max_order,
                                 Index i_max, Index j_max,
                                 const HierarchyOptions& options) {
  checkRequest(max_order, i_max, j_max, options.entry_budget);
  kernel.warm(kernelRowsNeeded(max_order, i_max));
  const int threads = resolveThreads(options.threads);

  std::vector<BigGrid> levels;
  levels.push_back(onesLevel(max_order, i_max, j_max));
  for (int k = 1; k <= max_order; ++k) {
    const auto w = levelWindow(k, max_order, i_max, j_max);
    const auto cells = static_cast<std::int64_t>(w.rows * w.cols);
    std::vector<BigInt> values(w.rows * w.cols);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64)
    for (std::int64_t t = 0; t < cells; ++t) {
      values[static_cast<std::size_t>(t)] =
          pdEntryDirect(kernel, k, t / static_cast<Index>(w.cols),
                        t % static_cast<Index>(w.cols));
    }
    levels.emplace_back(0, 0, w.rows, w.cols, std::move(values));
  }
  HierarchyStats stats;
  stats.fallback = hierarchyCellCount(max_order, i_max, j_max) -
                   levels.front().cellCount();
  return PDHierarchy(kernel, max_order, i_max, j_max, std::move(levels),
                     std::move(stats));
}

namespace reference {

PDHierarchy buildHierarchy(const Kernel& kernel, int max_order, Index i_max,
                           Index j_max) {
  checkRequest(max_order, i_max, j_max, std::numeric_limits<std::size_t>::max());
  std::vector<BigGrid> levels;
  levels.push_back(onesLevel(max_order, i_max, j_max));
  HierarchyStats stats;
  for (int k = 1; k <= max_order; ++k) {
    const auto w = levelWindow(k, max_order, i_max, j_max);
    std::vector<BigInt> values;
    values.reserve(w.rows * w.cols);
    for (Index i = 0; i < static_cast<Index>(w.rows); ++i) {
      for (Index j = 0; j < static_cast<Index>(w.cols); ++j) {
        if (k == 1) {
          values.push_back(kernel.entry(i, j));
          continue;
        }
        const BigGrid& up = levels[static_cast<std::size_t>(k - 1)];
        const BigGrid& lo = levels[static_cast<std::size_t>(k - 2)];
        const BigInt& divisor = lo.get(i + 1, j + 1);
        if (divisor == 0) {
          values.push_back(pdEntryDirect(kernel, k, i, j));
          ++stats.fallback;
          continue;
        }
        BigInt num = up.get(i, j) * up.get(i + 1, j + 1) -
                     up.get(i, j + 1) * up.get(i + 1, j);
        BigInt q;
        BigInt r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(),
                    divisor.get_mpz_t());
        if (r != 0) throw InexactDivisionError(k, i, j);
        values.push_back(std::move(q));
        ++stats.condensed;
      }
    }
    levels.emplace_back(0, 0, w.rows, w.cols, std::move(values));
  }
  return PDHierarchy(kernel, max_order, i_max, j_max, std::move(levels),
                     std::move(stats));
}

}  // namespace reference

}  // namespace pdlc
