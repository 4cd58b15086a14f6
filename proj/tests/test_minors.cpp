#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pdlc/determinant.hpp"
#include "pdlc/errors.hpp"
#include "pdlc/hierarchy.hpp"

using pdlc::BigInt;
using pdlc::Index;
using pdlc::Kernel;

namespace {

std::vector<std::vector<BigInt>> mat(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

pdlc::HierarchyOptions verification() {
  pdlc::HierarchyOptions o;
  o.cross_check_fraction = 1.0;
  return o;
}

}  // namespace

TEST_CASE("bareissDeterminant examples") {
  CHECK(pdlc::bareissDeterminant(mat({{4, 6}, {5, 10}})) == 10);
  CHECK(pdlc::bareissDeterminant(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
  CHECK(pdlc::bareissDeterminant(mat({{4, 6, 4}, {5, 10, 10}, {6, 15, 20}})) ==
        20);
  CHECK(pdlc::bareissDeterminant({}, 0) == 1);
  CHECK(pdlc::bareissDeterminant(mat({{-7}})) == -7);
}

TEST_CASE("bareissDeterminant handles zero pivots and singular matrices") {
  CHECK(pdlc::bareissDeterminant(mat({{0, 1}, {1, 0}})) == -1);
  CHECK(pdlc::bareissDeterminant(mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})) == -1);
  CHECK(pdlc::bareissDeterminant(mat({{0, 2, 3}, {0, 4, 5}, {1, 6, 7}})) ==
        oracle::cofactorDeterminant(mat({{0, 2, 3}, {0, 4, 5}, {1, 6, 7}})));
  CHECK(pdlc::bareissDeterminant(mat({{1, 2}, {2, 4}})) == 0);
  CHECK(pdlc::bareissDeterminant(mat({{0, 0}, {0, 5}})) == 0);
  CHECK(pdlc::bareissDeterminant(mat({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 0);
}

TEST_CASE("bareissDeterminant matches cofactor expansion on random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> entry(-4, 4);
  std::uniform_int_distribution<int> zero_bias(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    std::vector<std::vector<BigInt>> m(n);
    for (auto& row : m) {
      for (std::size_t c = 0; c < n; ++c) {
        row.emplace_back(zero_bias(rng) == 0 ? 0L : entry(rng));
      }
    }
    CHECK(pdlc::bareissDeterminant(m) == oracle::cofactorDeterminant(m));
  }
}

TEST_CASE("bareissDeterminant rejects a non-square table") {
  std::vector<BigInt> v(5);
  CHECK_THROWS_AS(pdlc::bareissDeterminant(v, 2), std::invalid_argument);
}

TEST_CASE("pdEntryDirect examples") {
  const Kernel p = Kernel::pascal();
  CHECK(pdlc::pdEntryDirect(p, 2, 4, 1) == 10);
  CHECK(pdlc::pdEntryDirect(p, 3, 4, 1) == 20);
  CHECK(pdlc::pdEntryDirect(p, 2, 2, 3) == 0);
  CHECK(pdlc::pdEntryDirect(p, 0, 7, 3) == 1);
  CHECK(pdlc::pdEntryDirect(p, 3, 5, -1) == 0);
  CHECK(pdlc::pdEntryDirect(p, 3, 5, -4) == 0);
}

TEST_CASE("pdEntryDirect matches the cofactor oracle") {
  const Kernel p = Kernel::pascal();
  for (int k = 1; k <= 4; ++k) {
    for (long i = 0; i <= 10; ++i) {
      for (long j = -1; j <= i + 1; ++j) {
        CHECK(pdlc::pdEntryDirect(p, k, i, j) == oracle::pascalMinor(k, i, j));
      }
    }
  }
}

TEST_CASE("buildHierarchy examples") {
  const Kernel p = Kernel::pascal();
  SUBCASE("K = 3 agrees with the oracle") {
    const auto h = pdlc::buildHierarchy(p, 3, 10, 10, verification());
    CHECK(h.at(2, 4, 1) == 10);
    CHECK(h.at(3, 4, 1) == 20);
    CHECK(h.at(3, 3, 1) == 10);
    for (int k = 1; k <= 3; ++k) {
      for (Index i = 0; i <= 10; ++i) {
        for (Index j = 0; j <= 10; ++j) {
          CHECK(h.at(k, i, j) == oracle::pascalMinor(k, i, j));
        }
      }
    }
  }
  SUBCASE("K = 0 is a single all-ones level") {
    const auto h = pdlc::buildHierarchy(p, 0, 3, 2);
    REQUIRE(h.levels().size() == 1);
    CHECK(h.level(0).rows() == 4);
    CHECK(h.level(0).cols() == 3);
    for (const auto& v : h.level(0).values()) CHECK(v == 1);
  }
  SUBCASE("K = 2 row 4") {
    const auto h = pdlc::buildHierarchy(p, 2, 4, 4);
    const std::vector<long> expected{1, 10, 20, 10, 1};
    for (Index j = 0; j < 5; ++j) {
      CHECK(h.at(2, 4, j) == expected[static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("hierarchy windows shrink by one per level") {
  const auto h = pdlc::buildHierarchy(Kernel::pascal(), 4, 10, 7);
  CHECK(h.level(0).rows() == 14);
  CHECK(h.level(1).rows() == 14);
  CHECK(h.level(1).cols() == 11);
  CHECK(h.level(4).rows() == 11);
  CHECK(h.level(4).cols() == 8);
  CHECK(h.covers(4, 10, 7));
  CHECK_FALSE(h.covers(4, 11, 7));
  CHECK(h.covers(4, 3, -2));
  CHECK_FALSE(h.covers(5, 0, 0));
  CHECK(h.at(4, 3, -2) == 0);
  CHECK_THROWS_AS(h.at(4, 11, 0), pdlc::WindowError);
  CHECK(h.cellCount() == pdlc::hierarchyCellCount(4, 10, 7));
}

TEST_CASE("oracle equivalence for the pascal kernel, k <= 6, i <= 40") {
  const Kernel p = Kernel::pascal();
  const auto fast = pdlc::buildHierarchy(p, 6, 40, 40, verification());
  const auto direct = pdlc::buildHierarchyDirect(p, 6, 40, 40);
  CHECK_FALSE(pdlc::firstDifference(fast, direct).has_value());
  CHECK(fast.stats().cross_checked == fast.stats().condensed);
}

TEST_CASE("triangular support and first-column normalization, k <= 6, i <= 40") {
  const auto h = pdlc::buildHierarchy(Kernel::pascal(), 6, 40, 40);
  for (int k = 0; k <= 6; ++k) {
    for (Index i = 0; i <= 40; ++i) {
      CHECK(h.at(k, i, 0) == 1);
      for (Index j = 0; j <= 40; ++j) {
        if (k >= 1 && j > i) {
          CHECK(h.at(k, i, j) == 0);
        } else {
          CHECK(h.at(k, i, j) >= 1);
        }
      }
    }
  }
}

TEST_CASE("narayanaClosedForm") {
  CHECK(pdlc::narayanaClosedForm(4, 2) == 20);
  CHECK(pdlc::narayanaClosedForm(4, 0) == 1);
  CHECK(pdlc::narayanaClosedForm(4, 1) == 10);
  CHECK_THROWS_AS(pdlc::narayanaClosedForm(2, 3), std::invalid_argument);

  const auto h = pdlc::buildHierarchy(Kernel::pascal(), 2, 30, 30);
  for (long i = 0; i <= 30; ++i) {
    for (long j = 0; j <= i; ++j) {
      const mpz_class expected =
          oracle::binomial(i + 1, j + 1) * oracle::binomial(i + 1, j) / (i + 1);
      CHECK(pdlc::narayanaClosedForm(i, j) == expected);
      CHECK(h.at(2, i, j) == expected);
    }
  }
}

TEST_CASE("condensation never divides inexactly on the pascal kernel") {
  pdlc::HierarchyOptions o;
  o.on_inexact = pdlc::InexactPolicy::raise;
  o.cross_check_fraction = 0.0;
  const auto h = pdlc::buildHierarchy(Kernel::pascal(), 6, 60, 60, o);
  CHECK(h.stats().inexact.empty());
  CHECK(h.stats().condensed > 0);
}

TEST_CASE("zero divisors fall back to the oracle on arbitrary table kernels") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> value(-3, 3);
  std::uniform_int_distribution<int> sparse(0, 2);
  std::size_t fallbacks = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Kernel::TableEntry> entries;
    for (Index a = 0; a < 12; ++a) {
      for (Index b = 0; b < 12; ++b) {
        if (sparse(rng) != 0) entries.push_back({a, b, BigInt(value(rng))});
      }
    }
    const Kernel t = Kernel::table(entries);
    const auto fast = pdlc::buildHierarchy(t, 4, 6, 6, verification());
    const auto direct = pdlc::buildHierarchyDirect(t, 4, 6, 6);
    CHECK_FALSE(pdlc::firstDifference(fast, direct).has_value());
    CHECK(fast.stats().inexact.empty());
    fallbacks += fast.stats().fallback;
  }
  CHECK(fallbacks > 0);
}

TEST_CASE("entry budget bounds the hierarchy size") {
  pdlc::HierarchyOptions o;
  o.entry_budget = 100;
  CHECK_THROWS_AS(pdlc::buildHierarchy(Kernel::pascal(), 3, 10, 10, o),
                  pdlc::WindowOverflowError);
  CHECK_THROWS_AS(pdlc::buildHierarchyDirect(Kernel::pascal(), 3, 10, 10, o),
                  pdlc::WindowOverflowError);
  o.entry_budget = pdlc::hierarchyCellCount(3, 10, 10);
  CHECK_NOTHROW(pdlc::buildHierarchy(Kernel::pascal(), 3, 10, 10, o));
}

TEST_CASE("cross-check sampling is deterministic and near the requested rate") {
  std::size_t hits = 0;
  for (Index i = 0; i < 200; ++i) {
    for (Index j = 0; j < 200; ++j) {
      const bool a = pdlc::crossCheckSelected(42, 3, i, j, 0.01);
      CHECK(a == pdlc::crossCheckSelected(42, 3, i, j, 0.01));
      hits += a ? 1 : 0;
    }
  }
  CHECK(hits > 300);
  CHECK(hits < 500);
  CHECK_FALSE(pdlc::crossCheckSelected(1, 1, 1, 1, 0.0));
  CHECK(pdlc::crossCheckSelected(1, 1, 1, 1, 1.0));

  pdlc::HierarchyOptions o;
  o.seed = 9;
  const auto a = pdlc::buildHierarchy(Kernel::pascal(), 5, 30, 30, o);
  const auto b = pdlc::buildHierarchy(Kernel::pascal(), 5, 30, 30, o);
  CHECK(a.stats().cross_checked == b.stats().cross_checked);
  CHECK(a.stats().cross_checked > 0);
  CHECK(a.stats().cross_checked < a.stats().condensed);
}

TEST_CASE("parallel condensation matches the serial reference") {
  for (const Kernel& k : {Kernel::pascal(), Kernel::qPascal(2)}) {
    const auto serial = pdlc::reference::buildHierarchy(k, 5, 25, 20);
    for (int threads : {1, 2, 4, 7}) {
      pdlc::HierarchyOptions o;
      o.threads = threads;
      const auto parallel = pdlc::buildHierarchy(k, 5, 25, 20, o);
      CHECK_FALSE(pdlc::firstDifference(parallel, serial).has_value());
      CHECK(parallel.stats().condensed == serial.stats().condensed);
      CHECK(parallel.stats().fallback == serial.stats().fallback);
    }
  }
}

TEST_CASE("firstDifference locates a perturbed cell") {
  const auto h = pdlc::buildHierarchy(Kernel::pascal(), 2, 4, 4);
  std::vector<pdlc::BigGrid> levels = h.levels();
  const auto& g = levels[2];
  levels[2] = pdlc::BigGrid::generate(0, 0, g.rows(), g.cols(),
                                      [&](Index i, Index j) {
                                        BigInt v = g.get(i, j);
                                        if (i == 3 && j == 1) v -= 1;
                                        return v;
                                      });
  const pdlc::PDHierarchy bad(h.kernel(), 2, 4, 4, std::move(levels));
  const auto diff = pdlc::firstDifference(h, bad);
  REQUIRE(diff.has_value());
  CHECK(diff->k == 2);
  CHECK(diff->i == 3);
  CHECK(diff->j == 1);
}
