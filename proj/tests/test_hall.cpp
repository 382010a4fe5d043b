#include <gtest/gtest.h>

#include <random>

#include "hallgrp/hall.hpp"
#include "hallgrp/instance.hpp"
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

std::set<oracle::Vec> as_set(const Subspace& U) {
  std::vector<oracle::Vec> basis;
  for (const auto& b : U.basis()) basis.emplace_back(b.begin(), b.end());
  return oracle::span_set(basis, static_cast<int>(U.ambient_dim()), static_cast<int>(U.modulus()));
}

/// Coordinate block b of the planted layout as a set of vectors.
std::set<oracle::Vec> coordinate_block(std::size_t b, std::size_t k, std::size_t s, int p) {
  std::vector<oracle::Vec> basis;
  for (std::size_t c = 0; c < k; ++c) {
    oracle::Vec v(s * k, 0);
    v[detail::block_coordinate(b, c, k, s)] = 1;
    basis.push_back(v);
  }
  return oracle::span_set(basis, static_cast<int>(s * k), p);
}

struct Planted {
  SymplecticSpace S;
  ElementTable M;
  std::vector<Matrix> gens;
};

Planted planted(std::size_t s, std::size_t k, std::uint32_t p, bool swap) {
  const auto S = SymplecticSpace::standard(s * k, p);
  auto gens = block_group_generators(s, k, p, swap);
  return {S, closure(gens, S), gens};
}

}  // namespace

TEST(Permutation, Helpers) {
  EXPECT_EQ(cycle_notation({0, 1}), "()");
  EXPECT_EQ(cycle_notation({1, 0}), "(1 2)");
  EXPECT_EQ(cycle_notation({1, 2, 0}), "(1 2 3)");
  EXPECT_EQ(cycle_notation({0, 2, 1}), "(2 3)");
  EXPECT_EQ(permutation_order({1, 0, 3, 4, 2}), 6u);
  EXPECT_EQ(compose({1, 2, 0}, {1, 0, 2}), (Permutation{2, 1, 0}));
  EXPECT_EQ(code_of([] { compose({0}, {0, 1}); }), errc::dimension_mismatch);
}

TEST(TransvectionSubgroup, Examples) {
  const auto S = SymplecticSpace::standard(2, 5);
  const auto sp = closure(sp_generators(S), S);
  EXPECT_EQ(transvection_subgroup(sp, S).size(), 120u);
  const auto minus = closure({Matrix::scalar(2, 4, 5)}, S);
  EXPECT_EQ(code_of([&] { transvection_subgroup(minus, S); }), errc::no_transvection);

  const auto P = planted(2, 2, 3, true);
  EXPECT_EQ(P.M.size(), 1152u);
  std::vector<FoundTransvection> found;
  const auto R = transvection_subgroup(P.M, P.S, &found);
  EXPECT_EQ(R.size(), 576u);
  EXPECT_EQ(found.size(), 16u);  // 8 per block
}

TEST(HallDecompose, FullSpIsOneBlock) {
  const auto S = SymplecticSpace::standard(4, 3);
  const auto M = closure(sp_generators(S), S);
  const auto D = hall_decompose(M, S);
  EXPECT_EQ(D.block_count(), 1u);
  EXPECT_EQ(D.block_dim(), 4u);
  EXPECT_EQ(D.R.size(), 51840u);
  EXPECT_EQ(D.H.size(), 51840u);
}

TEST(HallDecompose, RecoversCoordinateBlocks) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto P = planted(2, 2, p, true);
    const auto D = hall_decompose(P.M, P.S);
    ASSERT_EQ(D.block_count(), 2u);
    EXPECT_EQ(D.block_dim(), 2u);
    std::set<std::set<oracle::Vec>> got{as_set(D.blocks[0]), as_set(D.blocks[1])};
    std::set<std::set<oracle::Vec>> expected{coordinate_block(0, 2, 2, static_cast<int>(p)),
                                             coordinate_block(1, 2, 2, static_cast<int>(p))};
    EXPECT_EQ(got, expected);
    EXPECT_EQ(D.R.size(), sp_order(2, p) * sp_order(2, p));
    EXPECT_EQ(D.H.size() * 2, P.M.size());
  }
  const auto P3 = planted(3, 2, 3, true);
  const auto D3 = hall_decompose(P3.M, P3.S);
  EXPECT_EQ(D3.block_count(), 3u);
  EXPECT_EQ(D3.R.size(), 24u * 24u * 24u);
}

TEST(HallDecompose, RejectsReducible) {
  const auto P = planted(2, 2, 3, false);
  EXPECT_EQ(code_of([&] { hall_decompose(P.M, P.S); }), errc::not_simple_module);
}

TEST(Phi, SwapAndHomomorphism) {
  const auto P = planted(2, 2, 5, true);
  const auto D = hall_decompose(P.M, P.S);
  EXPECT_EQ(cycle_notation(phi_image(P.gens.back(), D)), "(1 2)");
  for (const auto& t : D.transvections) EXPECT_TRUE(is_identity(phi_image(t.element, D)));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = P.M.element(rng() % P.M.size());
    const Matrix b = P.M.element(rng() % P.M.size());
    EXPECT_EQ(phi_image(a * b, D), compose(phi_image(a, D), phi_image(b, D)));
  }
  const auto S = SymplecticSpace::standard(4, 5);
  const Matrix mixer = make_transvection(Vector{1, 1, 0, 0}, 1, S);
  EXPECT_EQ(code_of([&] { phi_image(mixer, D); }), errc::not_block_respecting);
  EXPECT_EQ(code_of([&] { phi_image(Matrix::identity(2, 5), D); }), errc::dimension_mismatch);
}

TEST(NormalizerMembership, AgreesWithConjugationOfR) {
  const auto P = planted(2, 2, 3, true);
  const auto R = transvection_subgroup(P.M, P.S);
  const auto dirs = transvection_directions(transvections_in(P.M, P.S));
  for (std::size_t i = 0; i < P.M.size(); i += 37) EXPECT_TRUE(normalizer_membership(P.M.element(i), dirs, P.S));
  EXPECT_FALSE(normalizer_membership(Matrix::diagonal({1, 1, 1, 2}, 3), dirs, P.S));

  // Direct check on a sample of Sp(4, 3): g normalises R iff every
  // conjugated generator of R lands in R.
  const auto sp = closure(sp_generators(P.S), P.S);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < sp.size(); i += 53) {
    const Matrix g = sp.element(i);
    const Matrix ginv = inverse(g);
    bool normalises = true;
    for (const auto& r : R.generators()) normalises = normalises && R.contains(g * r * ginv);
    EXPECT_EQ(normalizer_membership(g, dirs, P.S), normalises);
    inside += normalises;
  }
  EXPECT_GT(inside, 0u);
  EXPECT_EQ(code_of([&] { normalizer_membership(Matrix::identity(4, 3), DirectionSet{}, P.S); }),
            errc::no_transvection);
}

TEST(Classify, Verdicts) {
  const auto S43 = SymplecticSpace::standard(4, 3);
  const auto full = classify_generators(sp_generators(S43), S43);
  EXPECT_EQ(to_string(full.verdict), "ContainsFullSp");
  EXPECT_EQ(full.transvection_count, 80u);
  EXPECT_EQ(full.kernel_irreducible, true);

  // GSp(2, 3): Sp(2, 3) plus a similitude is still one block.
  const auto S23 = SymplecticSpace::standard(2, 3);
  auto gsp = sp_generators(S23);
  gsp.push_back(Matrix::diagonal({1, 2}, 3));
  EXPECT_EQ(to_string(classify_generators(gsp, S23).verdict), "ContainsFullSp");

  const auto P = planted(2, 2, 5, true);
  const auto blocks = classify_monodromy(P.M, P.S);
  EXPECT_EQ(to_string(blocks.verdict), "BlockImprimitive(2, 2)");
  EXPECT_EQ(blocks.kernel_irreducible, false);
  EXPECT_EQ(blocks.transvection_count, 48u);

  const auto S25 = SymplecticSpace::standard(2, 5);
  EXPECT_EQ(to_string(classify_generators({Matrix::scalar(2, 4, 5)}, S25).verdict), "NotApplicable(NotSimpleModule)");

  // x^2 + x + 2 has no root over F_3, so its companion acts irreducibly, and
  // the cyclic group of order 8 it generates has no transvection.
  const auto C = Matrix::from_rows({{0, 1}, {1, 2}}, 3);
  EXPECT_EQ(to_string(classify_generators({C}, S23).verdict), "NotApplicable(NoTransvection)");

  EXPECT_EQ(to_string(classify_generators(sp_generators(S43), S43, 100).verdict), "NotApplicable(CapExceeded)");
}

TEST(PartB, CheckOnSingleHomomorphisms) {
  const auto P = planted(2, 2, 3, true);
  const auto D = hall_decompose(P.M, P.S);
  const ExtField F3(3, 1);
  const auto trivial = part_b_check(D, P.M, F3, Matrix::identity(4, 3), 0);
  EXPECT_EQ(trivial.amplitude, 0u);
  EXPECT_TRUE(trivial.bound_applies);
  EXPECT_EQ(trivial.phi_order, 1u);

  // The block swap has eigenvalues 1 and -1 = gamma, so amplitude 1.
  const auto swap = part_b_check(D, P.M, F3, P.gens.back(), 0);
  EXPECT_EQ(swap.amplitude, 1u);
  EXPECT_FALSE(swap.bound_applies);
  EXPECT_EQ(cycle_notation(swap.phi), "(1 2)");
  EXPECT_EQ(swap.phi_order, 2u);

  EXPECT_EQ(code_of([&] { part_b_check(D, P.M, F3, Matrix::diagonal({1, 1, 1, 2}, 3), 1); }),
            errc::invalid_argument);
  EXPECT_EQ(code_of([&] { part_b_check(D, P.M, ExtField(5, 1), Matrix::identity(4, 3), 1); }),
            errc::field_mismatch);
}

TEST(PartB, ExhaustiveSearchAtFive) {
  const auto P = planted(2, 2, 5, true);
  const auto D = hall_decompose(P.M, P.S);
  const ExtField E(5, 1);
  const auto r = part_b_search(D, P.M, E);

  // Independent counts: elements with g^4 = 1, and those among them that
  // move the first coordinate block.
  const auto block0 = coordinate_block(0, 2, 2, 5);
  std::size_t homs = 0, moving = 0;
  for (std::size_t i = 0; i < P.M.size(); ++i) {
    const auto g = oracle::from(P.M.element(i));
    auto g4 = oracle::mul(oracle::mul(g, g, 5), oracle::mul(g, g, 5), 5);
    if (g4 != oracle::identity(4)) continue;
    ++homs;
    const auto img = oracle::apply(g, oracle::Vec{1, 0, 0, 0}, 5);
    moving += block0.count(img) == 0;
  }
  EXPECT_EQ(r.homomorphisms, homs);
  EXPECT_EQ(r.nontrivial_phi, moving);
  EXPECT_GT(r.nontrivial_phi, 0u);
  ASSERT_TRUE(r.least);
  EXPECT_GE(r.least->amplitude * 4 + 1, 5u);
  EXPECT_EQ(r.violations, 0u);
}
