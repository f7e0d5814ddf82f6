#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "qtcat/subspace.hpp"

using namespace qtcat;

namespace {

std::vector<SparseRowModP> random_rows(std::mt19937_64& rng, uint32_t dim,
                                       size_t count, uint64_t p) {
  std::uniform_int_distribution<uint32_t> col(0, dim - 1);
  std::uniform_int_distribution<int> val(-3, 3);
  std::vector<SparseRowModP> rows;
  for (size_t r = 0; r < count; ++r) {
    std::map<uint32_t, long long> entries;
    size_t nnz = 1 + rng() % 5;
    for (size_t i = 0; i < nnz; ++i) entries[col(rng)] += val(rng);
    SparseRowModP row;
    for (auto [c, v] : entries) {
      long long m = v % (long long)p;
      if (m < 0) m += (long long)p;
      if (m != 0) row.emplace_back(c, uint64_t(m));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("modular ranks agree with exact ranks on random sparse matrices") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    uint32_t dim = 6 + rng() % 10;
    auto rows = random_rows(rng, dim, 8 + rng() % 10, kDefaultPrimeA);
    RrefBuilderModP a(kDefaultPrimeA, dim);
    RrefBuilderModP b(kDefaultPrimeB, dim);
    RrefBuilderExact exact(dim);
    for (const auto& row : rows) {
      a.add_row(row);
      // reinterpret the residues as small signed integers for the other
      // backends so all three see the same rational matrix
      SparseRowModP row_b;
      SparseRowExact row_e;
      for (auto [c, v] : row) {
        long long lifted = v > kDefaultPrimeA / 2
                               ? (long long)v - (long long)kDefaultPrimeA
                               : (long long)v;
        long long m = lifted % (long long)kDefaultPrimeB;
        if (m < 0) m += (long long)kDefaultPrimeB;
        if (m != 0) row_b.emplace_back(c, uint64_t(m));
        row_e.emplace_back(c, Rational(lifted));
      }
      b.add_row(row_b);
      exact.add_row(row_e);
    }
    CHECK(a.rank() == exact.rank());
    CHECK(b.rank() == exact.rank());
  }
}

TEST_CASE("finalized reduced basis is canonical across insertion orders") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 25; ++iter) {
    uint32_t dim = 8 + rng() % 8;
    auto rows = random_rows(rng, dim, 12, kDefaultPrimeA);
    RrefBuilderModP first(kDefaultPrimeA, dim);
    for (const auto& r : rows) first.add_row(r);
    first.finalize();
    std::shuffle(rows.begin(), rows.end(), rng);
    RrefBuilderModP second(kDefaultPrimeA, dim);
    for (const auto& r : rows) second.add_row(r);
    second.finalize();
    CHECK(first.rows() == second.rows());
  }
}

TEST_CASE("reduce returns zero exactly for members") {
  std::mt19937_64 rng(13);
  uint64_t p = kDefaultPrimeA;
  uint32_t dim = 12;
  auto rows = random_rows(rng, dim, 6, p);
  RrefBuilderModP builder(p, dim);
  for (const auto& r : rows) builder.add_row(r);
  // random combinations of the input rows must reduce to zero
  for (int iter = 0; iter < 30; ++iter) {
    std::map<uint32_t, uint64_t> combo;
    for (const auto& r : rows) {
      uint64_t k = rng() % 5;
      for (auto [c, v] : r)
        combo[c] = modp::add(combo[c], modp::mul(k, v, p), p);
    }
    SparseRowModP v;
    for (auto [c, val] : combo)
      if (val) v.emplace_back(c, val);
    CHECK(builder.reduce(v).empty());
  }
}

TEST_CASE("base layer is honored without being copied") {
  uint64_t p = kDefaultPrimeB;
  uint32_t dim = 6;
  std::vector<SparseRowModP> base_rows{{{0, 1}, {2, 5}}, {{1, 1}, {3, 7}}};
  auto pivots = pivot_map_of_rows(base_rows, dim, p);
  RrefBuilderModP builder(p, dim);
  builder.attach_base(&base_rows, &pivots);
  // a vector inside the base span reduces to zero without new pivots
  SparseRowModP inside{{0, 2}, {1, 3}, {2, 10}, {3, 21}};
  CHECK(builder.reduce(inside).empty());
  CHECK(builder.add_row(inside) == false);
  CHECK(builder.rank() == 0);
  // a vector outside gains a pivot past the base
  SparseRowModP outside{{0, 1}, {4, 1}};
  CHECK(builder.add_row(outside));
  CHECK(builder.rank() == 1);
  CHECK(builder.rows()[0].front().first == 2);
}

TEST_CASE("pivot map validation rejects malformed bases") {
  uint64_t p = kDefaultPrimeA;
  CHECK_THROWS_AS(pivot_map_of_rows({{{0, 2}}}, 4, p), Error);  // pivot != 1
  CHECK_THROWS_AS(pivot_map_of_rows({{{2, 1}, {1, 3}}}, 4, p), Error);
  CHECK_THROWS_AS(pivot_map_of_rows({{{0, 1}}, {{0, 1}}}, 4, p), Error);
  CHECK_THROWS_AS(pivot_map_of_rows({{{5, 1}}}, 4, p), Error);
}
