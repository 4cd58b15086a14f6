#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pdlc/bigint.hpp"
#include "pdlc/grid.hpp"

namespace pdlc {

/// Exact binomial coefficient; zero when b < 0, b > a or a < 0.
BigInt binomial(Index a, Index b);

/// Gaussian binomial coefficient evaluated at a positive integer q, via
/// [a, b] = [a-1, b-1] + q^b [a-1, b]. Throws std::invalid_argument for q < 1.
BigInt qBinomial(Index a, Index b, std::int64_t q);

enum class KernelKind { pascal, q_pascal, table };

const char* kernelKindName(KernelKind kind);

namespace detail {
struct KernelState;
}

/// Source of exact integer matrix entries K(a, b).
///
/// Triangular kinds memoize rows behind a reader/writer lock, so a Kernel may
/// be shared between threads; call warm() before a parallel sweep to keep
/// lookups on the read path.
class Kernel {
 public:
  static Kernel pascal();
  static Kernel qPascal(std::int64_t q);
  /// Table kernel from explicit (a, b, value) triples. Duplicate or negative
  /// coordinates raise TableFormatError.
  struct TableEntry {
    Index a;
    Index b;
    BigInt value;
  };
  static Kernel table(const std::vector<TableEntry>& entries,
                      std::string source = {});
  /// Parses CSV `a,b,value` (an optional header line is accepted).
  static Kernel parseTable(std::istream& in, std::string source = {});
  static Kernel loadTable(const std::string& path);

  BigInt entry(Index a, Index b) const;

  /// Precomputes memoized rows up to and including max_a.
  void warm(Index max_a) const;

  KernelKind kind() const;
  std::int64_t q() const;
  const std::string& source() const;
  /// Declared extent of a table kernel (rows, cols); zero for other kinds.
  std::pair<Index, Index> extent() const;

 private:
  explicit Kernel(std::shared_ptr<detail::KernelState> state);
  std::shared_ptr<detail::KernelState> state_;
};

}  // namespace pdlc
