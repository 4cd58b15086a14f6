#pragma once

#include <cstdint>
#include <initializer_list>

namespace pdlc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a seed and a tuple of coordinates into one well-mixed word, so that
/// per-cell and per-trial streams are independent of evaluation order.
constexpr std::uint64_t deriveSeed(std::uint64_t seed,
                                   std::initializer_list<std::int64_t> parts) {
  std::uint64_t h = mix64(seed);
  for (auto p : parts) h = mix64(h ^ static_cast<std::uint64_t>(p));
  return h;
}

}  // namespace pdlc
