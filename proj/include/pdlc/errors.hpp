#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdlc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A condensation step divided by a nonzero divisor and left a remainder.
class InexactDivisionError : public Error {
 public:
  InexactDivisionError(int k, std::int64_t i, std::int64_t j);
  int k;
  std::int64_t i;
  std::int64_t j;
};

/// A condensation entry disagreed with the determinant oracle.
class OracleMismatchError : public Error {
 public:
  OracleMismatchError(int k, std::int64_t i, std::int64_t j);
  int k;
  std::int64_t i;
  std::int64_t j;
};

/// Requested hierarchy exceeds the configured cell budget.
class WindowOverflowError : public Error {
 public:
  using Error::Error;
};

/// A read fell outside the computed window of a hierarchy.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Predicted size of an LC iterate exceeds the bit budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(int depth_reached, std::uint64_t predicted_bits,
                      std::uint64_t budget);
  int depth_reached;
  std::uint64_t predicted_bits;
  std::uint64_t budget;
};

/// Malformed table-kernel input.
class TableFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdlc
