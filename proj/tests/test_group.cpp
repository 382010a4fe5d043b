#include <gtest/gtest.h>

#include <set>

#include "hallgrp/group.hpp"
#include "hallgrp/instance.hpp"
#include "oracle.hpp"

using namespace hallgrp;

namespace {

std::vector<Matrix> gsp_generators(const SymplecticSpace& S, residue mu) {
  auto gens = sp_generators(S);
  std::vector<residue> d(S.dim(), 1);
  for (std::size_t i = S.dim() / 2; i < S.dim(); ++i) d[i] = mu;
  gens.push_back(Matrix::diagonal(d, S.modulus()));
  return gens;
}

std::set<oracle::Mat> as_set(const ElementTable& T) {
  std::set<oracle::Mat> s;
  for (std::size_t i = 0; i < T.size(); ++i) s.insert(oracle::from(T.element(i)));
  return s;
}

}  // namespace

TEST(Closure, MatchesOracle) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto S = SymplecticSpace::standard(2, p);
    const auto gens = sp_generators(S);
    const auto T = closure(gens, S, 100000);
    EXPECT_EQ(as_set(T), oracle::closure(gens, 2, static_cast<int>(p)));
  }
  const auto S = SymplecticSpace::standard(2, 3);
  const auto gsp = closure(gsp_generators(S, 2), S);
  EXPECT_EQ(gsp.size(), 48u);
  EXPECT_EQ(as_set(gsp), oracle::closure(gsp_generators(S, 2), 2, 3));
}

TEST(Closure, Basics) {
  const auto T = closure({}, 4, 5);
  EXPECT_EQ(T.size(), 1u);
  EXPECT_TRUE(T.contains(Matrix::identity(4, 5)));
  EXPECT_EQ(order({Matrix::scalar(2, 4, 5)}, 2, 5), 2u);
  EXPECT_EQ(order(sp_generators(SymplecticSpace::standard(2, 5)), 2, 5), 120u);
}

TEST(Closure, CapExceeded) {
  const auto S = SymplecticSpace::standard(4, 3);
  try {
    closure(sp_generators(S), S, 10);
    FAIL() << "expected CapExceeded";
  } catch (const cap_exceeded& e) {
    EXPECT_EQ(e.code(), errc::cap_exceeded);
    EXPECT_EQ(e.cap(), 10u);
    EXPECT_EQ(e.partial(), 10u);
  }
}

TEST(Closure, DeterministicAndIdempotent) {
  const auto S = SymplecticSpace::standard(2, 5);
  auto gens = sp_generators(S);
  const auto A = closure(gens, S);
  std::reverse(gens.begin(), gens.end());
  const auto B = closure(gens, S);
  ASSERT_EQ(A.size(), B.size());
  for (std::size_t i = 0; i < A.size(); ++i) ASSERT_EQ(A.element(i), B.element(i));
  std::vector<Matrix> all;
  for (std::size_t i = 0; i < A.size(); ++i) all.push_back(A.element(i));
  EXPECT_EQ(closure(all, S).size(), A.size());
}

TEST(Closure, LagrangeOnSubgroups) {
  const auto S = SymplecticSpace::standard(4, 3);
  const auto gens = sp_generators(S);
  const auto full = closure(gens, S).size();
  for (std::size_t k = 1; k < gens.size(); ++k) {
    const std::vector<Matrix> sub(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(k));
    EXPECT_EQ(full % closure(sub, S).size(), 0u) << k;
  }
}

TEST(Contains, Examples) {
  const auto S = SymplecticSpace::standard(2, 5);
  const auto T = closure(sp_generators(S), S);
  EXPECT_TRUE(contains(T, Matrix::identity(2, 5)));
  EXPECT_TRUE(contains(T, Matrix::scalar(2, 4, 5)));
  const auto minus = closure({Matrix::scalar(2, 4, 5)}, S);
  EXPECT_FALSE(contains(minus, make_transvection(Vector{1, 0}, 1, S)));
}

TEST(Transvections, Counts) {
  const auto S = SymplecticSpace::standard(2, 3);
  EXPECT_EQ(transvections_in(closure(sp_generators(S), S), S).size(), 8u);
  EXPECT_TRUE(transvections_in(closure({}, S), S).empty());
  EXPECT_TRUE(transvections_in(closure({Matrix::scalar(2, 2, 3)}, S), S).empty());
  // Oracle: count rank-one unipotent isometries directly. (f - I) rank one and
  // symplectic forces a transvection.
  const auto S4 = SymplecticSpace::standard(4, 3);
  const auto T = closure(sp_generators(S4), S4);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    auto m = oracle::from(T.element(i));
    for (std::size_t j = 0; j < 4; ++j) m[j][j] = oracle::mod(m[j][j] - 1, 3);
    expected += oracle::rank(m, 3) == 1;
  }
  EXPECT_EQ(transvections_in(T, S4).size(), expected);
  EXPECT_EQ(expected, 80u);  // 40 lines, two nonzero lambdas each
}

TEST(NormalClosure, Examples) {
  const auto S = SymplecticSpace::standard(2, 5);
  const auto gens = sp_generators(S);
  EXPECT_EQ(normal_closure(gens, {make_transvection(Vector{1, 2}, 3, S)}, 2, 5).size(), 120u);
  EXPECT_EQ(normal_closure(gens, {Matrix::identity(2, 5)}, 2, 5).size(), 1u);
  EXPECT_EQ(normal_closure(gens, {Matrix::scalar(2, 4, 5)}, 2, 5).size(), 2u);
}

TEST(NormalClosure, ResultIsNormal) {
  const auto S = SymplecticSpace::standard(4, 3);
  const auto ambient = sp_generators(S);
  const auto N = normal_closure(ambient, {Matrix::scalar(4, 2, 3)}, 4, 3);
  for (const auto& a : ambient)
    for (std::size_t i = 0; i < N.size(); ++i) EXPECT_TRUE(N.contains(a * N.element(i) * inverse(a)));
}

TEST(NormalSubgroups, OfSp2) {
  for (std::uint32_t p : {5u, 7u}) {
    const auto S = SymplecticSpace::standard(2, p);
    const auto gens = sp_generators(S);
    const auto G = closure(gens, S);
    std::set<std::size_t> orders;
    for (std::size_t i = 0; i < G.size(); ++i) orders.insert(normal_closure(gens, {G.element(i)}, 2, p).size());
    EXPECT_EQ(orders, (std::set<std::size_t>{1, 2, G.size()}));
  }
}

TEST(Centralizer, Examples) {
  const auto S = SymplecticSpace::standard(2, 3);
  const auto gsp = closure(gsp_generators(S, 2), S);
  const auto sp = closure(sp_generators(S), S);
  std::vector<Matrix> all;
  for (std::size_t i = 0; i < sp.size(); ++i) all.push_back(sp.element(i));
  const auto C = centralizer(gsp, all);
  EXPECT_EQ(C.size(), 2u);
  EXPECT_TRUE(C.contains(Matrix::scalar(2, 2, 3)));
  EXPECT_EQ(centralizer(gsp, {Matrix::identity(2, 3)}).size(), gsp.size());
}

TEST(Centralizer, BlockScalarsGiveBlockPreservingSubgroup) {
  // dim 4, p = 5, two blocks; the centraliser of the blockwise scalars is the
  // block-preserving part.
  const std::uint32_t p = 5;
  const auto S = SymplecticSpace::standard(4, p);
  const auto M = closure(block_group_generators(2, 2, p, true), S);
  std::vector<Matrix> scalars;
  for (residue a = 1; a < p; ++a)
    for (residue b = 1; b < p; ++b) scalars.push_back(Matrix::diagonal({a, b, a, b}, p));
  const auto C = centralizer(M, scalars);
  const auto preserving = M.subgroup_where([&](const Matrix& g) {
    // Block 1 is span(e1, f1) = coordinates {0, 2}; block-preserving means
    // zero off-block entries.
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if ((i % 2) != (j % 2) && g(i, j) != 0) return false;
    return true;
  });
  EXPECT_EQ(C.size(), preserving.size());
  EXPECT_EQ(C.size() * 2, M.size());
  for (std::size_t i = 0; i < C.size(); ++i) EXPECT_TRUE(preserving.contains(C.element(i)));
}

TEST(Stabilizer, Examples) {
  const auto S = SymplecticSpace::standard(4, 3);
  const auto M = closure(block_group_generators(2, 2, 3, true), S);
  EXPECT_EQ(subspace_stabilizer(M, Subspace::whole(4, 3)).size(), M.size());
  EXPECT_EQ(subspace_stabilizer(M, Subspace(4, 3)).size(), M.size());
  const auto W = Subspace::span({unit_vector(4, 0), unit_vector(4, 2)}, 4, 3);
  EXPECT_EQ(M.size() / subspace_stabilizer(M, W).size(), 2u);
}

TEST(SubgroupWhere, RejectsNonSubgroups) {
  const auto S = SymplecticSpace::standard(2, 3);
  const auto M = closure(sp_generators(S), S);
  try {
    M.subgroup_where([](const Matrix& g) { return !g.is_identity(); });
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::internal_invariant_violation);
  }
}
