#include <gtest/gtest.h>

#include <random>

#include "ozva/exactlinalg.hpp"

using namespace ozva;

namespace {
Matrix random_matrix(std::mt19937& g, int r, int c, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi), den(1, 4);
  Matrix M(r, Vec(c));
  for (auto& row : M)
    for (auto& x : row) {
      x = Rat(d(g), den(g));
      x.canonicalize();
    }
  return M;
}
}  // namespace

TEST(ExactLinalg, RrefKernelBasics) {
  Matrix I = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto r = rref_kernel(I, 3);
  EXPECT_EQ(r.rank, 3);
  EXPECT_EQ(r.kernel.rank(), 0);
  Matrix Z(2, Vec(5));
  auto z = rref_kernel(Z, 5);
  EXPECT_EQ(z.rank, 0);
  EXPECT_EQ(z.kernel.rank(), 5);
  Matrix M = {{1, 2}, {2, 4}};
  auto m = rref_kernel(M, 2);
  EXPECT_EQ(m.rank, 1);
  ASSERT_EQ(m.kernel.rank(), 1);
  EXPECT_TRUE(m.kernel.contains(Vec{-2, 1}));
}

TEST(ExactLinalg, RankNullity) {
  std::mt19937 g(7);
  for (int t = 0; t < 20; ++t) {
    int r = 1 + t % 6, c = 1 + (t * 7) % 8;
    Matrix M = random_matrix(g, r, c);
    if (t % 3 == 0 && r > 1) M[r - 1] = M[0];
    auto res = rref_kernel(M, c);
    EXPECT_EQ(res.rank + res.kernel.rank(), c);
    for (auto& v : res.kernel.rows()) EXPECT_TRUE(is_zero(mat_vec(M, v)));
  }
}

TEST(ExactLinalg, OrderIndependence) {
  std::mt19937 g(11);
  Matrix M = random_matrix(g, 5, 7);
  M[4] = M[1];
  Matrix P = {M[3], M[0], M[4], M[2], M[1]};
  EXPECT_EQ(rref_kernel(M, 7).rref, rref_kernel(P, 7).rref);
  Echelon a(7), b(7);
  for (auto& r : M) a.insert(r);
  for (auto& r : P) b.insert(r);
  EXPECT_EQ(a.rows(), b.rows());
}

TEST(ExactLinalg, SolvePreimage) {
  Matrix I = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Subspace full(3);
  for (auto& r : I) full.insert(r);
  EXPECT_EQ(solve_preimage(I, 3, full).rank(), 3);
  EXPECT_EQ(solve_preimage(I, 3, Subspace(3)).rank(), 0);
  std::mt19937 g(3);
  Matrix M = random_matrix(g, 6, 4);
  Subspace img(6);
  for (auto& col : transpose(M, 4)) img.insert(col);
  EXPECT_EQ(solve_preimage(M, 4, img).rank(), 4);
}

TEST(ExactLinalg, CombineDimensionFormula) {
  std::mt19937 g(5);
  for (int t = 0; t < 10; ++t) {
    Subspace A(6), B(6);
    for (auto& r : random_matrix(g, 1 + t % 4, 6)) A.insert(r);
    for (auto& r : random_matrix(g, 2 + t % 3, 6)) B.insert(r);
    if (t % 2) B.insert(A.rows()[0]);
    auto I = subspace_combine(A, B, Combine::Intersect);
    auto S = subspace_combine(A, B, Combine::Sum);
    EXPECT_EQ(I.rank() + S.rank(), A.rank() + B.rank());
    for (auto& v : I.rows()) {
      EXPECT_TRUE(A.contains(v));
      EXPECT_TRUE(B.contains(v));
    }
    auto Q = subspace_combine(A, B, Combine::QuotientBasis);
    EXPECT_EQ(Q.rank(), A.rank() - I.rank());
  }
  Subspace X(3);
  X.insert(Vec{1, 2, 3});
  EXPECT_EQ(subspace_combine(X, X, Combine::Intersect).rows(), X.rows());
  EXPECT_EQ(subspace_combine(X, Subspace(3), Combine::Sum).rows(), X.rows());
}

TEST(ExactLinalg, IntEchelonAndInverse) {
  IntEchelon e(3);
  EXPECT_TRUE(e.insert({2, 4, 6}));
  EXPECT_FALSE(e.insert({1, 2, 3}));
  EXPECT_TRUE(e.insert({0, 1, 1}));
  EXPECT_TRUE(e.contains({2, 5, 7}));
  EXPECT_FALSE(e.contains({0, 0, 1}));
  Matrix M = {{2, 1}, {1, 1}};
  auto inv = inverse(M);
  ASSERT_TRUE(inv);
  EXPECT_EQ((*inv)[0][0], 1);
  EXPECT_EQ((*inv)[0][1], -1);
  EXPECT_FALSE(inverse(Matrix{{1, 2}, {2, 4}}));
}
