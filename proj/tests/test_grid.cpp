#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pdlc/grid.hpp"
#include "pdlc/hierarchy.hpp"

using pdlc::BigGrid;
using pdlc::BigInt;
using pdlc::Index;
using pdlc::RowSeq;

namespace {

RowSeq row(std::initializer_list<long> values, Index origin = 0) {
  std::vector<BigInt> v;
  for (long x : values) v.emplace_back(x);
  return RowSeq(origin, std::move(v));
}

BigGrid randomGrid(std::mt19937_64& rng, Index oi, Index oj, std::size_t rows,
                   std::size_t cols) {
  std::uniform_int_distribution<long> dist(-50, 50);
  return BigGrid::generate(oi, oj, rows, cols,
                           [&](Index, Index) { return BigInt(dist(rng)); });
}

}  // namespace

TEST_CASE("gridGet reads the window and zero-extends outside it") {
  const auto h = pdlc::buildHierarchy(pdlc::Kernel::pascal(), 1, 4, 4);
  const BigGrid pd1 = h.level(1).reframe(0, 0, 5, 5);
  CHECK(pd1.get(4, 2) == oracle::binomial(4, 2));
  CHECK(pd1.get(4, 2) == 6);
  CHECK(pd1.get(3, -1) == 0);
  CHECK(pd1.get(3, 5) == 0);
  CHECK(pd1.get(3, 1000) == 0);
  CHECK(pd1.get(-1, 0) == 0);
}

TEST_CASE("gridGet agrees with the dense table and is zero elsewhere") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> size(0, 5);
    std::uniform_int_distribution<int> origin(-3, 3);
    const auto rows = static_cast<std::size_t>(size(rng));
    const auto cols = static_cast<std::size_t>(size(rng));
    const Index oi = origin(rng);
    const Index oj = origin(rng);
    const BigGrid g = randomGrid(rng, oi, oj, rows, cols);
    REQUIRE(g.values().size() == rows * cols);
    for (Index i = oi - 2; i < oi + static_cast<Index>(rows) + 2; ++i) {
      for (Index j = oj - 2; j < oj + static_cast<Index>(cols) + 2; ++j) {
        const bool inside = i >= oi && i < oi + static_cast<Index>(rows) &&
                            j >= oj && j < oj + static_cast<Index>(cols);
        if (inside) {
          const auto idx = static_cast<std::size_t>(i - oi) * cols +
                           static_cast<std::size_t>(j - oj);
          CHECK(g.get(i, j) == g.values()[idx]);
        } else {
          CHECK(g.get(i, j) == 0);
        }
      }
    }
  }
}

TEST_CASE("hadamard of Pascal rows") {
  const RowSeq pd1 = row({1, 4, 6, 4, 1});
  const RowSeq pd3 = row({1, 20, 50, 20, 1});
  CHECK(pdlc::hadamard(pd1, pd3) == row({1, 80, 300, 80, 1}));

  const auto h = pdlc::buildHierarchy(pdlc::Kernel::pascal(), 3, 4, 4);
  CHECK(h.level(3).row(4) == pd3);
  const BigGrid prod = pdlc::hadamard(h.level(1), h.level(3));
  CHECK(prod.row(4) == row({1, 80, 300, 80, 1}));
}

TEST_CASE("hadamard identity, absorbing element and window intersection") {
  std::mt19937_64 rng(11);
  const BigGrid g = randomGrid(rng, 0, 0, 4, 5);
  CHECK(pdlc::hadamard(g, BigGrid::filled(0, 0, 4, 5, 1)) == g);
  const BigGrid zeros = pdlc::hadamard(g, BigGrid::filled(0, 0, 4, 5, 0));
  CHECK(zeros == BigGrid());
  for (const auto& v : zeros.values()) CHECK(v == 0);

  const BigGrid shifted = BigGrid::filled(2, 3, 5, 5, 1);
  const BigGrid cut = pdlc::hadamard(g, shifted);
  CHECK(cut.originI() == 2);
  CHECK(cut.originJ() == 3);
  CHECK(cut.rows() == 2);
  CHECK(cut.cols() == 2);
  CHECK(cut.get(0, 0) == 0);
  CHECK(cut.get(3, 4) == g.get(3, 4));
}

TEST_CASE("hadamard is commutative and associative on zero-extended grids") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_int_distribution<int> origin(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    auto make = [&] {
      return randomGrid(rng, origin(rng), origin(rng),
                        static_cast<std::size_t>(size(rng)),
                        static_cast<std::size_t>(size(rng)));
    };
    const BigGrid a = make();
    const BigGrid b = make();
    const BigGrid c = make();
    CHECK(pdlc::hadamard(a, b) == pdlc::hadamard(b, a));
    CHECK(pdlc::hadamard(pdlc::hadamard(a, b), c) ==
          pdlc::hadamard(a, pdlc::hadamard(b, c)));
  }
}

TEST_CASE("grid equality ignores window shape") {
  std::mt19937_64 rng(17);
  const BigGrid g = randomGrid(rng, 1, 1, 3, 3);
  const BigGrid padded = g.reframe(-2, -2, 9, 9);
  CHECK(padded == g);
  CHECK(g == padded);
  const BigGrid other = BigGrid::generate(1, 1, 3, 3, [&](Index i, Index j) {
    BigInt v = g.get(i, j);
    if (i == 3 && j == 3) v += 1;
    return v;
  });
  CHECK_FALSE(other == g);
  CHECK(BigGrid::filled(0, 0, 2, 2, 0) == BigGrid::filled(5, 5, 3, 1, 0));
}

TEST_CASE("row sequences") {
  const RowSeq r = row({3, -1, 2}, 5);
  CHECK(r.get(4) == 0);
  CHECK(r.get(6) == -1);
  CHECK(r.get(8) == 0);
  REQUIRE(r.firstNegative().has_value());
  CHECK(*r.firstNegative() == 6);
  CHECK(row({0, 0, 1}) == row({1}, 2));
  CHECK(RowSeq() == row({0, 0}));
  CHECK_FALSE(row({1}) == row({1}, 1));
}

TEST_CASE("CSV emission is row-major with decimal values") {
  const BigInt big("123456789012345678901234567890");
  const BigGrid g(0, 2, 2, 2, {1, 2, 3, big});
  std::ostringstream os;
  pdlc::writeCsvHeader(os);
  pdlc::writeGridCsv(os, 3, g);
  CHECK(os.str() ==
        "k,i,j,value\n"
        "3,0,2,1\n"
        "3,0,3,2\n"
        "3,1,2,3\n"
        "3,1,3,123456789012345678901234567890\n");
}

TEST_CASE("grid construction rejects a mismatched value count") {
  CHECK_THROWS_AS(BigGrid(0, 0, 2, 2, {1, 2, 3}), std::invalid_argument);
}
