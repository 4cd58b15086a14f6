#include "pdlc/grid.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

#include "pdlc/errors.hpp"

namespace pdlc {

RowSeq::RowSeq(Index origin, std::vector<BigInt> values)
    : origin_(origin), values_(std::move(values)) {}

const BigInt& RowSeq::get(Index j) const {
  if (j < origin_ || j >= end()) return zero();
  return values_[static_cast<std::size_t>(j - origin_)];
}

std::optional<Index> RowSeq::firstNegative() const {
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (sgn(values_[t]) < 0) return origin_ + static_cast<Index>(t);
  }
  return std::nullopt;
}

bool operator==(const RowSeq& a, const RowSeq& b) {
  if (a.empty() && b.empty()) return true;
  const Index lo = std::min(a.empty() ? b.origin() : a.origin(),
                            b.empty() ? a.origin() : b.origin());
  const Index hi = std::max(a.empty() ? b.end() : a.end(),
                            b.empty() ? a.end() : b.end());
  for (Index j = lo; j < hi; ++j) {
    if (a.get(j) != b.get(j)) return false;
  }
  return true;
}

BigGrid::BigGrid(Index origin_i, Index origin_j, std::size_t rows,
                 std::size_t cols, std::vector<BigInt> values)
    : origin_i_(origin_i), origin_j_(origin_j), rows_(rows), cols_(cols),
      values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("BigGrid: values.size() != rows * cols");
  }
}

BigGrid BigGrid::filled(Index origin_i, Index origin_j, std::size_t rows,
                        std::size_t cols, const BigInt& value) {
  return BigGrid(origin_i, origin_j, rows, cols,
                 std::vector<BigInt>(rows * cols, value));
}

BigGrid BigGrid::generate(Index origin_i, Index origin_j, std::size_t rows,
                          std::size_t cols,
                          const std::function<BigInt(Index, Index)>& fn) {
  std::vector<BigInt> values;
  values.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      values.push_back(fn(origin_i + static_cast<Index>(r),
                          origin_j + static_cast<Index>(c)));
    }
  }
  return BigGrid(origin_i, origin_j, rows, cols, std::move(values));
}

BigGrid BigGrid::fromRows(Index origin_i, std::span<const RowSeq> rows) {
  Index lo = 0;
  Index hi = 0;
  bool any = false;
  for (const auto& r : rows) {
    if (r.empty()) continue;
    lo = any ? std::min(lo, r.origin()) : r.origin();
    hi = any ? std::max(hi, r.end()) : r.end();
    any = true;
  }
  const auto cols = static_cast<std::size_t>(hi - lo);
  return generate(origin_i, lo, rows.size(), cols, [&](Index i, Index j) {
    return rows[static_cast<std::size_t>(i - origin_i)].get(j);
  });
}

const BigInt& BigGrid::get(Index i, Index j) const {
  if (!contains(i, j)) return zero();
  return values_[static_cast<std::size_t>(i - origin_i_) * cols_ +
                 static_cast<std::size_t>(j - origin_j_)];
}

RowSeq BigGrid::row(Index i) const {
  const auto span = rowSpan(i);
  if (span.empty()) return RowSeq(origin_j_, std::vector<BigInt>(cols_));
  return RowSeq(origin_j_, std::vector<BigInt>(span.begin(), span.end()));
}

std::span<const BigInt> BigGrid::rowSpan(Index i) const {
  if (i < origin_i_ || i >= rowEnd()) return {};
  return std::span<const BigInt>(values_).subspan(
      static_cast<std::size_t>(i - origin_i_) * cols_, cols_);
}

BigGrid BigGrid::reframe(Index origin_i, Index origin_j, std::size_t rows,
                         std::size_t cols) const {
  return generate(origin_i, origin_j, rows, cols,
                  [this](Index i, Index j) { return get(i, j); });
}

std::uint64_t BigGrid::totalBits() const {
  std::uint64_t total = 0;
  for (const auto& v : values_) total += bitSize(v);
  return total;
}

std::size_t BigGrid::maxBits() const {
  std::size_t best = 0;
  for (const auto& v : values_) best = std::max(best, bitSize(v));
  return best;
}

bool operator==(const BigGrid& a, const BigGrid& b) {
  // Cells in either window; everything else is zero on both sides.
  auto covered = [](const BigGrid& g, const BigGrid& other) {
    for (Index i = g.originI(); i < g.rowEnd(); ++i) {
      for (Index j = g.originJ(); j < g.colEnd(); ++j) {
        if (g.get(i, j) != other.get(i, j)) return false;
      }
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

BigGrid hadamard(const BigGrid& a, const BigGrid& b) {
  const Index i0 = std::max(a.originI(), b.originI());
  const Index j0 = std::max(a.originJ(), b.originJ());
  const Index i1 = std::min(a.rowEnd(), b.rowEnd());
  const Index j1 = std::min(a.colEnd(), b.colEnd());
  if (i1 <= i0 || j1 <= j0) return BigGrid(i0, j0, 0, 0, {});
  return BigGrid::generate(
      i0, j0, static_cast<std::size_t>(i1 - i0),
      static_cast<std::size_t>(j1 - j0),
      [&](Index i, Index j) -> BigInt { return a.get(i, j) * b.get(i, j); });
}

RowSeq hadamard(const RowSeq& a, const RowSeq& b) {
  const Index lo = std::max(a.origin(), b.origin());
  const Index hi = std::min(a.end(), b.end());
  std::vector<BigInt> out;
  for (Index j = lo; j < hi; ++j) out.emplace_back(a.get(j) * b.get(j));
  return RowSeq(lo, std::move(out));
}

void writeCsvHeader(std::ostream& os) { os << "k,i,j,value\n"; }

void writeGridCsv(std::ostream& os, int k, const BigGrid& grid) {
  for (Index i = grid.originI(); i < grid.rowEnd(); ++i) {
    for (Index j = grid.originJ(); j < grid.colEnd(); ++j) {
      os << k << ',' << i << ',' << j << ',' << toDecimal(grid.get(i, j))
         << '\n';
    }
  }
}

}  // namespace pdlc
