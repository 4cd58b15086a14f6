#include "pdlc/logconcavity.hpp"

#include <algorithm>
#include <stdexcept>

#include "pdlc/errors.hpp"
#include "pdlc/parallel.hpp"

namespace pdlc {

namespace {

void lcInto(std::span<const BigInt> in, std::span<BigInt> out) {
  const std::size_t n = in.size();
  BigInt tmp;
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = in[t] * in[t];
    if (t > 0 && t + 1 < n) {
      tmp = in[t - 1] * in[t + 1];
      out[t] -= tmp;
    }
  }
}

}  // namespace

RowSeq lcRow(const RowSeq& a) {
  std::vector<BigInt> out(a.size());
  lcInto(a.values(), out);
  return RowSeq(a.origin(), std::move(out));
}

BigGrid lcGrid(const BigGrid& g, int threads) {
  std::vector<BigInt> values(g.cellCount());
  const auto rows = static_cast<std::int64_t>(g.rows());
  const std::size_t cols = g.cols();
  const int workers = resolveThreads(threads);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto offset = static_cast<std::size_t>(r) * cols;
    lcInto(g.values().subspan(offset, cols),
           std::span<BigInt>(values).subspan(offset, cols));
  }
  return BigGrid(g.originI(), g.originJ(), g.rows(), g.cols(),
                 std::move(values));
}

std::uint64_t predictedLcBits(const BigGrid& g) {
  // bits(x^2 - y z) <= 2 max(bits(x), bits(y), bits(z)) + 1.
  std::uint64_t total = 0;
  for (Index i = g.originI(); i < g.rowEnd(); ++i) {
    const auto row = g.rowSpan(i);
    for (std::size_t t = 0; t < row.size(); ++t) {
      std::size_t b = bitSize(row[t]);
      if (t > 0) b = std::max(b, bitSize(row[t - 1]));
      if (t + 1 < row.size()) b = std::max(b, bitSize(row[t + 1]));
      total += 2 * b + 1;
    }
  }
  return total;
}

std::vector<GridPosition> negativePositions(const BigGrid& g) {
  std::vector<GridPosition> out;
  for (Index i = g.originI(); i < g.rowEnd(); ++i) {
    for (Index j = g.originJ(); j < g.colEnd(); ++j) {
      if (sgn(g.get(i, j)) < 0) out.push_back({i, j});
    }
  }
  return out;
}

LCIterate iterateLC(const BigGrid& g, int m, std::uint64_t bit_budget,
                    int threads) {
  if (m < 0) throw std::invalid_argument("iterateLC: negative depth");
  LCIterate it{g, 0, g, {}};
  for (int step = 0; step < m; ++step) {
    const auto predicted = predictedLcBits(it.result);
    if (predicted > bit_budget) {
      throw BudgetExceededError(it.depth, predicted, bit_budget);
    }
    it.result = lcGrid(it.result, threads);
    ++it.depth;
  }
  it.negative_positions = negativePositions(it.result);
  return it;
}

LogConcavityVerdict isLogConcaveRow(const RowSeq& a) {
  const auto lc = lcRow(a);
  std::optional<Index> worst;
  for (Index j = a.origin(); j < a.end(); ++j) {
    if (sgn(a.get(j)) < 0 || sgn(lc.get(j)) < 0) {
      worst = j;
      break;
    }
  }
  return {!worst.has_value(), worst};
}

namespace reference {

BigGrid lcGrid(const BigGrid& g) {
  std::vector<RowSeq> rows;
  for (Index i = g.originI(); i < g.rowEnd(); ++i) {
    const RowSeq r = g.row(i);
    std::vector<BigInt> out;
    for (Index j = r.origin(); j < r.end(); ++j) {
      out.emplace_back(r.get(j) * r.get(j) - r.get(j - 1) * r.get(j + 1));
    }
    rows.emplace_back(r.origin(), std::move(out));
  }
  std::vector<BigInt> values;
  for (const auto& r : rows) {
    values.insert(values.end(), r.values().begin(), r.values().end());
  }
  return BigGrid(g.originI(), g.originJ(), g.rows(), g.cols(),
                 std::move(values));
}

}  // namespace reference

}  // namespace pdlc
