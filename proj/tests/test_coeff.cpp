#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcohom/coeff.hpp"

#include <random>

using namespace gcohom;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, Ring ring, std::size_t r, std::size_t c, int lo, int hi,
                           double density = 0.6) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<long>> rows(r, std::vector<long>(c, 0));
  for (auto& row : rows)
    for (auto& x : row)
      if (keep(rng)) x = val(rng);
  return SparseMatrix::from_dense(ring, rows);
}

std::vector<std::vector<Integer>> multiply(const std::vector<std::vector<Integer>>& a,
                                           const std::vector<std::vector<Integer>>& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  std::vector<std::vector<Integer>> out(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

std::vector<std::vector<Integer>> as_integer(const SparseMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out[i][j] = v.get_num();
  return out;
}

void check_smith(const SparseMatrix& m) {
  auto snf = coeff::smith_normal_form(m);
  auto prod = multiply(multiply(snf.left, as_integer(m)), snf.right);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer expect = (i == j && i < snf.diagonal.size()) ? snf.diagonal[i] : Integer(0);
      REQUIRE(prod[i][j] == expect);
    }
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
    CHECK(snf.diagonal[i] > 0);
    if (i + 1 < snf.diagonal.size()) CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
  }
  Integer dl = coeff::determinant(snf.left), dr = coeff::determinant(snf.right);
  CHECK((dl == 1 || dl == -1));
  CHECK((dr == 1 || dr == -1));
}

}  // namespace

TEST_CASE("ring canonical forms") {
  Ring q = Ring::rationals();
  CHECK(q.parse_scalar("6/-4") == Scalar(-3, 2));
  Ring f5 = Ring::prime(5);
  CHECK(f5.from_int(-1) == 4);
  CHECK(f5.parse_scalar("1/2") == 3);
  CHECK(f5.mul(f5.inv(f5.from_int(3)), f5.from_int(3)) == 1);
  Ring z = Ring::integers();
  CHECK_THROWS_AS(z.parse_scalar("1/2"), InputError);
  CHECK(Ring::parse("Fp:3") == Ring::prime(3));
  CHECK(Ring::parse("Z") == z);
  CHECK_THROWS_AS(Ring::parse("Fp:4"), InputError);
}

TEST_CASE("rank examples") {
  Ring q = Ring::rationals();
  CHECK(coeff::rank(SparseMatrix::from_dense(q, std::vector<std::vector<long>>{{1, 2}, {2, 4}})) == 1);
  CHECK(coeff::rank(SparseMatrix(q, 0, 0)) == 0);
  CHECK(coeff::rank(SparseMatrix::identity(q, 5)) == 5);
  CHECK(coeff::rank(SparseMatrix::from_dense(Ring::prime(2), std::vector<std::vector<long>>{{1, 1}, {1, -1}})) == 1);
  CHECK_THROWS(coeff::rank(SparseMatrix::identity(Ring::integers(), 2)));
}

TEST_CASE("kernel examples") {
  Ring q = Ring::rationals();
  auto k = coeff::kernel_basis(SparseMatrix::from_dense(q, std::vector<std::vector<long>>{{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(to_dense(k[0], 2) == DenseVec{Scalar(-1), Scalar(1)});
  CHECK(coeff::kernel_basis(SparseMatrix::identity(q, 3)).empty());
  SparseMatrix m = SparseMatrix::from_dense(q, std::vector<std::vector<long>>{{1, 2}, {2, 4}});
  auto k2 = coeff::kernel_basis(m);
  REQUIRE(k2.size() == 1);
  CHECK(m.apply(k2[0]).empty());
  DenseVec v = to_dense(k2[0], 2);
  CHECK(v[0] == -2 * v[1]);
}

TEST_CASE("solve examples") {
  Ring q = Ring::rationals();
  DenseVec b{Scalar(3), Scalar(-1, 2), Scalar(7)};
  CHECK(*coeff::solve(SparseMatrix::identity(q, 3), b) == b);
  auto x = coeff::solve(SparseMatrix::from_dense(q, std::vector<std::vector<long>>{{1, 1}}), DenseVec{Scalar(2)});
  REQUIRE(x);
  CHECK(*x == DenseVec{Scalar(2), Scalar(0)});
  CHECK_FALSE(coeff::solve(SparseMatrix(q, 1, 1), DenseVec{Scalar(1)}));
  CHECK_THROWS_AS(coeff::solve(SparseMatrix(q, 2, 1), DenseVec{Scalar(1)}), InputError);
}

TEST_CASE("smith normal form examples") {
  Ring z = Ring::integers();
  auto m = SparseMatrix::from_dense(z, std::vector<std::vector<long>>{{2, 4}, {6, 8}});
  auto snf = coeff::smith_normal_form(m);
  CHECK(snf.diagonal == std::vector<Integer>{2, 4});
  check_smith(m);
  CHECK(coeff::smith_normal_form(SparseMatrix(z, 3, 2)).diagonal.empty());
  CHECK(coeff::smith_normal_form(SparseMatrix::identity(z, 3)).diagonal == std::vector<Integer>{1, 1, 1});
}

TEST_CASE("property: rank over Q equals SNF rank, kernels are kernels") {
  std::mt19937 rng(20240611);
  Ring q = Ring::rationals(), z = Ring::integers();
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    SparseMatrix mz = random_matrix(rng, z, r, c, -4, 4);
    SparseMatrix mq = SparseMatrix::from_dense(q, mz.to_dense());
    auto snf = coeff::smith_normal_form(mz);
    CHECK(coeff::rank(mq) == snf.diagonal.size());
    check_smith(mz);
    auto ker = coeff::kernel_basis(mq);
    CHECK(ker.size() + coeff::rank(mq) == c);
    for (const auto& v : ker) CHECK(mq.apply(v).empty());
    CHECK(coeff::invariant_factors(mz) == snf.diagonal);
  }
}

TEST_CASE("property: solve finds solutions exactly when b is in the image") {
  std::mt19937 rng(7);
  for (Ring ring : {Ring::rationals(), Ring::prime(3), Ring::prime(2)}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      SparseMatrix m = random_matrix(rng, ring, r, c, -3, 3, 0.5);
      SparseMatrix aug = random_matrix(rng, ring, r, 1, -3, 3, 0.7);
      DenseVec b(r);
      for (std::size_t i = 0; i < r; ++i) b[i] = aug.at(i, 0);
      auto x = coeff::solve(m, b);
      std::vector<SparseVec> cols = m.columns();
      cols.push_back(to_sparse(b));
      bool in_image = coeff::span_dim(ring, r, cols) == coeff::rank(m);
      CHECK(bool(x) == in_image);
      if (x) CHECK(m.apply(*x) == b);
    }
  }
}

TEST_CASE("prime field kernels") {
  std::mt19937 rng(99);
  Ring f3 = Ring::prime(3);
  for (int trial = 0; trial < 60; ++trial) {
    SparseMatrix m = random_matrix(rng, f3, 1 + rng() % 6, 1 + rng() % 6, 0, 2);
    auto ker = coeff::kernel_basis(m);
    CHECK(ker.size() + coeff::rank(m) == m.cols());
    for (const auto& v : ker) CHECK(m.apply(v).empty());
  }
}

TEST_CASE("row echelon reduce") {
  Ring q = Ring::rationals();
  RowEchelon e(q, 3);
  CHECK(e.insert(SparseVec{{0, Scalar(2)}, {1, Scalar(2)}}));
  CHECK(e.insert(SparseVec{{1, Scalar(1)}, {2, Scalar(1)}}));
  CHECK_FALSE(e.insert(SparseVec{{0, Scalar(1)}, {2, Scalar(-1)}}));
  CHECK(e.rank() == 2);
  CHECK(e.contains(SparseVec{{0, Scalar(3)}, {1, Scalar(4)}, {2, Scalar(1)}}));
}
