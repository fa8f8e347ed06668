#include <random>

#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/linalg.hpp"
#include "fonctex/ring.hpp"
#include "oracle.hpp"

using namespace fonctex;

TEST_CASE("field inverses") {
  for (uint32_t p : {2u, 3u, 5u, 7u, 251u})
    for (uint32_t a = 1; a < p; ++a) CHECK(a * field_inv(p, a) % p == 1);
  CHECK_THROWS_AS(check_field(4), ArgumentError);
  CHECK_THROWS_AS(check_field(257), ArgumentError);
}

TEST_CASE("rank agrees with schoolbook elimination") {
  std::mt19937_64 rng(7);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const size_t r = rng() % 9, c = rng() % 140;
      auto m = oracle::random_mat(rng, p, r, c, trial % 3 == 0 ? 0.1 : 0.5);
      const FMat f = oracle::to_fmat(m, p, c);
      CHECK(rank(f) == oracle::rank(m, p));
      CHECK(rank(f.transpose()) == oracle::rank(m, p));
      CHECK(rank(f.with_layout(FMat::Layout::Bytes)) == oracle::rank(m, p));
    }
  }
}

TEST_CASE("products match the reference") {
  std::mt19937_64 rng(11);
  for (uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const size_t n = 1 + rng() % 70, k = 1 + rng() % 70, m = 1 + rng() % 70;
      auto a = oracle::random_mat(rng, p, n, k), b = oracle::random_mat(rng, p, k, m);
      CHECK(oracle::to_mat(oracle::to_fmat(a, p, k) * oracle::to_fmat(b, p, m)) == oracle::mul(a, b, p));
    }
  }
}

TEST_CASE("kernel basis spans the null space") {
  std::mt19937_64 rng(3);
  for (uint32_t p : {2u, 3u, 7u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const size_t r = rng() % 8, c = 1 + rng() % 80;
      const FMat a = oracle::to_fmat(oracle::random_mat(rng, p, r, c), p, c);
      const FMat k = kernel_basis(a);
      CHECK(k.cols() == c - rank(a));
      CHECK((a * k).is_zero());
      CHECK(rank(k) == k.cols());
      const EchelonBasis e = EchelonBasis::kernel_of(a);
      CHECK(e.dim() == k.cols());
      for (size_t j = 0; j < k.cols(); ++j) CHECK(e.contains(k.column(j)));
      for (const FVec& v : e.basis()) CHECK(a.apply(v).is_zero());
    }
  }
}

TEST_CASE("solve returns the lexicographically smallest solution") {
  std::mt19937_64 rng(5);
  const FMat one_one = FMat::from_rows(2, {{1, 1}});
  const std::vector<uint32_t> rhs{1};
  auto x = solve(one_one, rhs);
  REQUIRE(x);
  CHECK(*x == std::vector<uint32_t>{0, 1});
  for (uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 80; ++trial) {
      const size_t r = 1 + rng() % 3, n = 1 + rng() % (p == 2 ? 6 : 4);
      auto a = oracle::random_mat(rng, p, r, n);
      std::vector<uint32_t> b(r);
      for (auto& v : b) v = rng() % p;
      auto all = oracle::all_solutions(a, b, p, n);
      auto got = solve(oracle::to_fmat(a, p, n), b);
      CHECK(got.has_value() == !all.empty());
      if (got && !all.empty()) CHECK(*got == all.front());
    }
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(9);
  for (uint32_t p : {2u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const size_t n = 1 + rng() % 12;
      const FMat a = oracle::to_fmat(oracle::random_mat(rng, p, n, n), p, n);
      auto inv = inverse(a);
      CHECK(inv.has_value() == (rank(a) == n));
      if (inv) CHECK((a * *inv).is_identity());
    }
  }
}

TEST_CASE("echelon basis: insertion, reduction, coordinates") {
  std::mt19937_64 rng(13);
  for (uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const size_t n = 1 + rng() % 150, k = rng() % 12;
      auto rows = oracle::random_mat(rng, p, k, n, 0.3);
      EchelonBasis e(p, n);
      for (auto& r : rows) e.insert(FVec::from_values(p, r));
      CHECK(e.dim() == oracle::rank(rows, p));
      for (size_t i = 0; i < e.dim(); ++i) {
        CHECK(e.basis()[i].get(e.pivots()[i]) == 1);
        for (size_t j = 0; j < e.dim(); ++j)
          if (j != i) CHECK(e.basis()[j].get(e.pivots()[i]) == 0);
      }
      // A random combination has coordinates equal to its pivot entries.
      FVec v(p, n);
      std::vector<uint32_t> coeff(e.dim());
      for (size_t i = 0; i < e.dim(); ++i) {
        coeff[i] = rng() % p;
        v.axpy(coeff[i], e.basis()[i]);
      }
      CHECK(e.contains(v));
      CHECK(e.coordinates(v) == coeff);
      const FVec r = e.reduce(FVec::from_values(p, oracle::random_mat(rng, p, 1, n)[0]));
      for (size_t q : e.pivots()) CHECK(r.get(q) == 0);
      CHECK(e.quotient_coordinates(v) == std::vector<uint32_t>(n - e.dim(), 0));
    }
  }
}

TEST_CASE("column span matches rank") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t r = 1 + rng() % 40, c = rng() % 40;
    const FMat a = oracle::to_fmat(oracle::random_mat(rng, 3, r, c), 3, c);
    const EchelonBasis s = EchelonBasis::column_span(a);
    CHECK(s.dim() == rank(a));
    for (size_t j = 0; j < c; ++j) CHECK(s.contains(a.column(j)));
  }
}

TEST_CASE("ring matrices: canonical index round trip") {
  const FinRing z4(4);
  for (uint64_t i = 0; i < 256; ++i) CHECK(RMat::from_index(z4, 2, 2, i).index() == i);
  const RMat a = RMat::from_index(z4, 2, 2, 27);
  CHECK(mat_mul(RMat::identity(z4, 2), a) == a);
  CHECK(hom_count(FinRing(2), 8, 8) == UINT64_MAX);
  CHECK_THROWS_AS(enumerate_hom(FinRing(2), 5, 5, 1u << 20), CapExceeded);
  CHECK(FinRing::parse("Z/9").modulus() == 9);
  CHECK_THROWS_AS(FinRing::parse("Q"), UsageError);
}
