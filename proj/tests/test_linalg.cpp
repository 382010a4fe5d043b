#include <gtest/gtest.h>

#include <random>

#include "hallgrp/linalg.hpp"
#include "oracle.hpp"

using namespace hallgrp;

namespace {

Matrix random_matrix(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<residue>(rng() % p);
  return m;
}

}  // namespace

TEST(Matrix, ProductMatchesOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(4, 7, rng), b = random_matrix(4, 7, rng);
    EXPECT_EQ(oracle::from(a * b), oracle::mul(oracle::from(a), oracle::from(b), 7));
  }
}

TEST(Matrix, FromRowsReduces) {
  const auto m = Matrix::from_rows({{-1, 6}, {5, 0}}, 5);
  EXPECT_EQ(m(0, 0), 4u);
  EXPECT_EQ(m(0, 1), 1u);
  EXPECT_EQ(m(1, 0), 0u);
}

TEST(Matrix, RankAndInverseAgreeWithOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_matrix(3, 3, rng);
    const auto r = oracle::rank(oracle::from(a), 3);
    EXPECT_EQ(rank(a), r);
    const auto inv = try_inverse(a);
    EXPECT_EQ(inv.has_value(), r == 3);
    EXPECT_EQ(determinant(a) != 0, r == 3);
    if (inv) EXPECT_TRUE((a * *inv).is_identity());
  }
}

TEST(Matrix, DeterminantMultiplicative) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_matrix(4, 11, rng), b = random_matrix(4, 11, rng);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b) % 11);
  }
}

TEST(Matrix, KernelIsKernel) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto a = random_matrix(4, 3, rng);
    for (std::size_t j = 0; j < 4; ++j) a(3, j) = (a(0, j) + a(1, j)) % 3;
    const auto ker = kernel(a);
    EXPECT_EQ(ker.size() + rank(a), 4u);
    for (const auto& v : ker) EXPECT_TRUE(is_zero(a.apply(v)));
  }
}

TEST(Matrix, CharPolyCayleyHamilton) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_matrix(5, 5, rng);
    const Poly f = char_poly(a);
    ASSERT_EQ(f.size(), 6u);
    EXPECT_EQ(f.back(), 1u);
    EXPECT_TRUE(evaluate(f, a).is_zero());
    // Constant term is (-1)^n det.
    EXPECT_EQ(f.front(), (5 - determinant(a)) % 5);
  }
}

TEST(Subspace, CanonicalBasis) {
  const std::uint32_t p = 5;
  const auto U = Subspace::span({{1, 2, 0}, {2, 4, 1}, {3, 1, 1}}, 3, p);
  const auto V = Subspace::span({{0, 0, 3}, {4, 3, 0}}, 3, p);
  EXPECT_EQ(U, V);
  EXPECT_EQ(U.dim(), 2u);
  EXPECT_TRUE(U.contains(Vector{1, 2, 4}));
  EXPECT_FALSE(U.contains(Vector{0, 1, 0}));
}

TEST(Subspace, SpanMatchesOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vector> vs;
    std::vector<oracle::Vec> ovs;
    for (int k = 0; k < 2; ++k) {
      Vector v(3);
      for (auto& x : v) x = static_cast<residue>(rng() % 3);
      vs.push_back(v);
      ovs.emplace_back(v.begin(), v.end());
    }
    const auto U = Subspace::span(vs, 3, 3);
    const auto expected = oracle::span_set(ovs, 3, 3);
    std::size_t count = 0;
    for (const auto& w : oracle::all_vectors(3, 3)) {
      const bool in = U.contains(Vector(w.begin(), w.end()));
      EXPECT_EQ(in, expected.count(w) == 1);
      count += in;
    }
    EXPECT_EQ(count, expected.size());
  }
}

TEST(Subspace, IntersectionAndSum) {
  const std::uint32_t p = 3;
  const auto A = Subspace::span({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4, p);
  const auto B = Subspace::span({{0, 1, 0, 0}, {0, 0, 1, 0}}, 4, p);
  EXPECT_EQ(A.intersection_dim(B), 1u);
  EXPECT_EQ(A.sum(B).dim(), 3u);
}

TEST(Subspace, RestrictToInvariantSubspace) {
  const std::uint32_t p = 7;
  const auto h = Matrix::from_rows({{2, 0, 0}, {3, 4, 2}, {5, 6, 1}}, p);
  const std::vector<Vector> basis{{0, 1, 0}, {0, 0, 1}};
  const Matrix a = restrict_to(h, basis);
  for (std::size_t j = 0; j < 2; ++j) {
    const Vector img = h.apply(basis[j]);
    Vector rebuilt(3, 0);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t r = 0; r < 3; ++r) rebuilt[r] = (rebuilt[r] + a(i, j) * basis[i][r]) % p;
    EXPECT_EQ(img, rebuilt);
  }
}

TEST(Vector, LineOrder) {
  EXPECT_TRUE(line_order_less({1, 2, 2}, {0, 1, 0}));
  EXPECT_TRUE(line_order_less({1, 0, 1}, {1, 0, 2}));
  EXPECT_FALSE(line_order_less({0, 0, 1}, {0, 1, 0}));
}
