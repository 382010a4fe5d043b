#include <gtest/gtest.h>

#include <random>

#include "hallgrp/field.hpp"
#include "hallgrp/instance.hpp"
#include "hallgrp/modrep.hpp"
#include "hallgrp/symplectic.hpp"
#include "oracle.hpp"

using namespace hallgrp;

namespace {

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal_invariant_violation;
}

bool invariant(const Subspace& U, const std::vector<Matrix>& gens) {
  for (const auto& g : gens)
    for (const auto& b : U.basis())
      if (!U.contains(g.apply(b))) return false;
  return true;
}

/// Smallest invariant subspace containing v, by scanning every subspace.
std::set<oracle::Vec> brute_spin(const std::set<std::set<oracle::Vec>>& subspaces,
                                 const std::vector<oracle::Mat>& gens, const oracle::Vec& v, int p) {
  const std::set<oracle::Vec>* best = nullptr;
  for (const auto& U : subspaces) {
    if (!U.count(v)) continue;
    bool inv = true;
    for (const auto& g : gens)
      for (const auto& u : U)
        if (inv && !U.count(oracle::apply(g, u, p))) inv = false;
    if (inv && (!best || U.size() < best->size())) best = &U;
  }
  return *best;
}

}  // namespace

TEST(Spin, Examples) {
  const auto S = SymplecticSpace::standard(2, 3);
  EXPECT_EQ(spin(sp_generators(S), {Vector{0, 0}}, 2, 3).dim(), 0u);
  EXPECT_EQ(spin(sp_generators(S), {Vector{1, 0}}, 2, 3).dim(), 2u);
  EXPECT_EQ(spin({}, {}, 3, 3).dim(), 0u);

  // Block group fixing span(e1, e2) in dim 4 (coordinates 0 and 2 of the
  // block layout are block 1).
  const auto gens = block_group_generators(2, 2, 3, false);
  const auto U = spin(gens, {unit_vector(4, 0)}, 4, 3);
  EXPECT_EQ(U, Subspace::span({unit_vector(4, 0), unit_vector(4, 2)}, 4, 3));
}

TEST(Spin, InvariantMonotoneIdempotent) {
  std::mt19937_64 rng(3);
  const std::uint32_t p = 5;
  for (int t = 0; t < 30; ++t) {
    std::vector<Matrix> gens;
    for (int k = 0; k < 2; ++k) {
      Matrix m(4, 4, p);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = static_cast<residue>(rng() % 3 == 0 ? rng() % p : 0);
      gens.push_back(m);
    }
    Vector seed(4);
    for (auto& x : seed) x = static_cast<residue>(rng() % p);
    const auto U = spin(gens, {seed}, 4, p);
    EXPECT_TRUE(invariant(U, gens));
    EXPECT_TRUE(U.contains(seed));
    EXPECT_EQ(spin(gens, U.basis(), 4, p), U);
  }
}

TEST(Spin, BruteForceDim3) {
  const int p = 3;
  const auto subspaces = oracle::all_subspaces(3, p);
  EXPECT_EQ(subspaces.size(), 1u + 13u + 13u + 1u);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    std::vector<Matrix> gens;
    std::vector<oracle::Mat> ogens;
    for (int k = 0; k < 2; ++k) {
      Matrix m(3, 3, p);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = static_cast<residue>(rng() % 2 ? rng() % p : 0);
      gens.push_back(m);
      ogens.push_back(oracle::from(m));
    }
    for (const auto& v : oracle::all_vectors(3, p)) {
      const auto U = spin(gens, {Vector(v.begin(), v.end())}, 3, p);
      std::vector<oracle::Vec> basis;
      for (const auto& b : U.basis()) basis.emplace_back(b.begin(), b.end());
      EXPECT_EQ(oracle::span_set(basis, 3, p), brute_spin(subspaces, ogens, v, p));
    }
  }
}

TEST(IsSimple, Examples) {
  const auto S43 = SymplecticSpace::standard(4, 3);
  EXPECT_TRUE(is_simple(sp_generators(S43), 4, 3).simple);

  const auto trivial = is_simple({}, 2, 5);
  EXPECT_FALSE(trivial.simple);
  ASSERT_TRUE(trivial.witness);
  EXPECT_EQ(*trivial.witness, Subspace::span({Vector{1, 0}}, 2, 5));

  const auto blocks = is_simple(block_group_generators(2, 2, 5, false), 4, 5);
  EXPECT_FALSE(blocks.simple);
  ASSERT_TRUE(blocks.witness);
  EXPECT_EQ(*blocks.witness, Subspace::span({unit_vector(4, 0), unit_vector(4, 2)}, 4, 5));
  EXPECT_TRUE(is_simple(block_group_generators(2, 2, 5, true), 4, 5).simple);
}

TEST(IsSimple, ScaleLimit) {
  EXPECT_EQ(code_of([] { is_simple({}, 8, 13); }), errc::scale_exceeded);
  EXPECT_EQ(code_of([] { is_simple({}, 4, 3, 10); }), errc::scale_exceeded);
}

TEST(MinimalSubmodule, Examples) {
  const auto R = block_group_generators(2, 2, 3, false);
  const auto W = minimal_submodule(R, 4, 3);
  EXPECT_EQ(W.dim(), 2u);
  EXPECT_EQ(W, Subspace::span({unit_vector(4, 0), unit_vector(4, 2)}, 4, 3));
  // Minimality by exhaustion: no invariant line inside W.
  for (const auto& v : oracle::all_vectors(4, 3)) {
    const Vector u(v.begin(), v.end());
    if (is_zero(u) || !W.contains(u)) continue;
    EXPECT_EQ(spin(R, {u}, 4, 3), W);
  }
  EXPECT_EQ(minimal_submodule(sp_generators(SymplecticSpace::standard(2, 5)), 2, 5).dim(), 2u);
  EXPECT_EQ(minimal_submodule({}, 3, 5), Subspace::span({Vector{1, 0, 0}}, 3, 5));
}

TEST(CyclicDecompose, Identity) {
  const auto parts = cyclic_module_decompose(Matrix::identity(3, 5), 4);
  ASSERT_EQ(parts.size(), 3u);
  for (const auto& s : parts) EXPECT_EQ(s.degree, 1u);
}

TEST(CyclicDecompose, CompanionOfPrimitiveQuadratic) {
  // x^2 + x + 2 is irreducible over F_3 with root of order 8 (brute force below).
  const std::uint32_t p = 3;
  const oracle::Vec f{2, 1, 1};
  ASSERT_TRUE(oracle::irreducible_by_search(f, 3));
  oracle::Vec x{0, 1}, acc{1, 0};
  int ord = 0;
  for (int k = 1; k <= 8 && !ord; ++k) {
    acc = oracle::poly_mulmod(acc, x, f, 3);
    if (acc == oracle::Vec{1, 0}) ord = k;
  }
  ASSERT_EQ(ord, 8);
  const auto C = Matrix::from_rows({{0, 1}, {1, 2}}, p);  // companion: x -> x, x^2 = -x - 2
  const auto parts = cyclic_module_decompose(C, 8);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].degree, 2u);
  EXPECT_EQ(parts[0].minimal_polynomial, (Poly{2, 1, 1}));
}

TEST(CyclicDecompose, Errors) {
  const auto S = SymplecticSpace::standard(2, 5);
  const auto T = make_transvection(Vector{1, 0}, 1, S);
  EXPECT_EQ(code_of([&] { cyclic_module_decompose(T, 5); }), errc::not_semisimple);
  EXPECT_EQ(code_of([&] { cyclic_module_decompose(T, 4); }), errc::wrong_order);
  EXPECT_EQ(code_of([&] { cyclic_module_decompose(Matrix::scalar(2, 2, 5), 2); }), errc::wrong_order);
}

TEST(CyclicDecompose, DirectSumAndInvariance) {
  std::mt19937_64 rng(21);
  const std::uint32_t p = 7;
  const auto S = SymplecticSpace::standard(6, p);
  auto gens = sp_generators(S);
  for (int t = 0; t < 40; ++t) {
    Matrix g = Matrix::identity(6, p);
    for (int k = 0; k < 10; ++k) g = g * gens[rng() % gens.size()];
    // Push g to an element of order prime to p.
    std::uint64_t n = 1;
    Matrix h = g;
    while (!h.is_identity()) {
      h = h * g;
      ++n;
    }
    while (n % p == 0) {
      g = power(g, p);
      n /= p;
    }
    const auto parts = cyclic_module_decompose(g, n);
    EchelonBasis total(6, p);
    std::size_t dims = 0;
    for (const auto& s : parts) {
      EXPECT_EQ(s.space.dim(), s.degree);
      EXPECT_TRUE(invariant(s.space, {g}));
      EXPECT_TRUE(poly::is_irreducible(s.minimal_polynomial, p));
      const Matrix a = restrict_to(g, s.space.basis());
      EXPECT_TRUE(evaluate(s.minimal_polynomial, a).is_zero());
      for (const auto& b : s.space.basis()) total.insert(b);
      dims += s.degree;
    }
    EXPECT_EQ(dims, 6u);
    EXPECT_EQ(total.dim(), 6u);
  }
}
