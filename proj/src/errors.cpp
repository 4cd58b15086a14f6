#include "pdlc/errors.hpp"

#include "pdlc/bigint.hpp"

namespace pdlc {

namespace {

std::string position(int k, std::int64_t i, std::int64_t j) {
  return "(k=" + std::to_string(k) + ", i=" + std::to_string(i) +
         ", j=" + std::to_string(j) + ")";
}

}  // namespace

const BigInt& zero() {
  static const BigInt value{0};
  return value;
}

InexactDivisionError::InexactDivisionError(int k_, std::int64_t i_,
                                           std::int64_t j_)
    : Error("condensation-inexact-division at " + position(k_, i_, j_)),
      k(k_), i(i_), j(j_) {}

OracleMismatchError::OracleMismatchError(int k_, std::int64_t i_,
                                         std::int64_t j_)
    : Error("condensation entry disagrees with determinant oracle at " +
            position(k_, i_, j_)),
      k(k_), i(i_), j(j_) {}

BudgetExceededError::BudgetExceededError(int depth, std::uint64_t predicted,
                                         std::uint64_t cap)
    : Error("budget-exceeded: next iterate predicted at " +
            std::to_string(predicted) + " bits, budget " +
            std::to_string(cap) + " (depth reached " + std::to_string(depth) +
            ")"),
      depth_reached(depth), predicted_bits(predicted), budget(cap) {}

}  // namespace pdlc
