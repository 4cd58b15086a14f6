#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pdlc/bigint.hpp"

namespace pdlc {

using Index = std::int64_t;

/// A finite window of a zero-extended integer sequence.
class RowSeq {
 public:
  RowSeq() = default;
  RowSeq(Index origin, std::vector<BigInt> values);

  /// Value at j; zero outside [origin, origin + size).
  const BigInt& get(Index j) const;

  Index origin() const { return origin_; }
  Index end() const { return origin_ + static_cast<Index>(values_.size()); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const BigInt> values() const { return values_; }

  /// Smallest index holding a negative value, if any.
  std::optional<Index> firstNegative() const;
  bool allNonNegative() const { return !firstNegative().has_value(); }

  /// Equality of the zero-extended sequences.
  friend bool operator==(const RowSeq& a, const RowSeq& b);

 private:
  Index origin_ = 0;
  std::vector<BigInt> values_;
};

/// A rectangular window [origin_i, origin_i + rows) x [origin_j, origin_j + cols)
/// of an integer array that is zero everywhere outside the window.
/// Immutable after construction.
class BigGrid {
 public:
  BigGrid() = default;
  BigGrid(Index origin_i, Index origin_j, std::size_t rows, std::size_t cols,
          std::vector<BigInt> values);

  static BigGrid filled(Index origin_i, Index origin_j, std::size_t rows,
                        std::size_t cols, const BigInt& value);

  /// Builds a grid by evaluating fn(i, j) at every in-window cell, row-major.
  static BigGrid generate(Index origin_i, Index origin_j, std::size_t rows,
                          std::size_t cols,
                          const std::function<BigInt(Index, Index)>& fn);

  /// Stacks rows i = origin_i, origin_i + 1, ... using the union of their
  /// column ranges.
  static BigGrid fromRows(Index origin_i, std::span<const RowSeq> rows);

  const BigInt& get(Index i, Index j) const;
  bool contains(Index i, Index j) const {
    return i >= origin_i_ && i < rowEnd() && j >= origin_j_ && j < colEnd();
  }

  Index originI() const { return origin_i_; }
  Index originJ() const { return origin_j_; }
  Index rowEnd() const { return origin_i_ + static_cast<Index>(rows_); }
  Index colEnd() const { return origin_j_ + static_cast<Index>(cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t cellCount() const { return values_.size(); }
  std::span<const BigInt> values() const { return values_; }

  /// Row i restricted to the grid's column range.
  RowSeq row(Index i) const;
  std::span<const BigInt> rowSpan(Index i) const;

  /// Same function restricted to (or zero-padded out to) a new window.
  BigGrid reframe(Index origin_i, Index origin_j, std::size_t rows,
                  std::size_t cols) const;

  /// Total bits over all stored entries.
  std::uint64_t totalBits() const;
  std::size_t maxBits() const;

  /// Equality of the zero-extended functions over the union of windows.
  friend bool operator==(const BigGrid& a, const BigGrid& b);

 private:
  Index origin_i_ = 0;
  Index origin_j_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> values_;
};

/// Entrywise product. The result window is the intersection of the inputs.
BigGrid hadamard(const BigGrid& a, const BigGrid& b);
RowSeq hadamard(const RowSeq& a, const RowSeq& b);

/// CSV emission: header `k,i,j,value`, row-major order.
void writeCsvHeader(std::ostream& os);
void writeGridCsv(std::ostream& os, int k, const BigGrid& grid);

}  // namespace pdlc
