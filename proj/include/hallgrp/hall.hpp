#pragma once

// Block decomposition of a transvection-containing irreducible subgroup M of
// GSp(V): V is the orthogonal direct sum of the translates gW of a simple
// module W for the transvection subgroup R, and R is the product of copies of
// Sp(W), one per block.
//
// Every structural claim is checked on the instance before a decomposition is
// returned; a failed check raises InternalInvariantViolation.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hallgrp/amplitude.hpp"
#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/group.hpp"
#include "hallgrp/linalg.hpp"
#include "hallgrp/modrep.hpp"
#include "hallgrp/symplectic.hpp"

namespace hallgrp {

/// pi[i] = j means block i is carried onto block j (0-based).
using Permutation = std::vector<std::size_t>;

inline bool is_identity(const Permutation& pi) {
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] != i) return false;
  return true;
}

/// (a * b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw error(errc::dimension_mismatch, "permutation sizes differ");
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline std::uint64_t permutation_order(const Permutation& pi) {
  std::uint64_t ord = 1;
  std::vector<bool> seen(pi.size(), false);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = pi[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

/// Cycle notation on 1-based block labels, fixed points omitted; "()" for
/// the identity.
inline std::string cycle_notation(const Permutation& pi) {
  std::string out;
  std::vector<bool> seen(pi.size(), false);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i] || pi[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = pi[j]) {
      seen[j] = true;
      if (out.back() != '(') out += " ";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

struct HallDecomposition {
  SymplecticSpace space;
  Subspace W;
  std::vector<Subspace> blocks;  // blocks[0] == W
  ElementTable R;
  ElementTable H;
  std::vector<FoundTransvection> transvections;  // all transvections of M
  std::size_t group_order = 0;

  std::size_t block_count() const noexcept { return blocks.size(); }
  std::size_t block_dim() const noexcept { return W.dim(); }
};

/// Locates images of blocks; keeps one echelon basis per block so repeated
/// queries do not re-reduce.
class BlockLocator {
 public:
  explicit BlockLocator(const std::vector<Subspace>& blocks) : blocks_(&blocks) {
    for (const auto& b : blocks) echelons_.push_back(b.echelon());
  }

  /// pi with g(blocks[i]) = blocks[pi[i]].
  Permutation operator()(const Matrix& g) const {
    const auto& blocks = *blocks_;
    const std::size_t s = blocks.size();
    Permutation pi(s);
    std::vector<bool> hit(s, false);
    for (std::size_t i = 0; i < s; ++i) {
      const auto& basis = blocks[i].basis();
      std::vector<Vector> images;
      images.reserve(basis.size());
      for (const auto& b : basis) images.push_back(g.apply(b));
      std::size_t j = 0;
      while (j < s && !echelons_[j].contains(images.front())) ++j;
      if (j == s) throw error(errc::not_block_respecting, "a block is not mapped into any block");
      for (std::size_t t = 1; t < images.size(); ++t) {
        if (!echelons_[j].contains(images[t])) {
          throw error(errc::not_block_respecting, "a block is spread over several blocks");
        }
      }
      if (hit[j]) throw error(errc::not_block_respecting, "two blocks share an image");
      hit[j] = true;
      pi[i] = j;
    }
    return pi;
  }

 private:
  const std::vector<Subspace>* blocks_;
  std::vector<EchelonBasis> echelons_;
};

inline Permutation phi_image(const Matrix& g, const HallDecomposition& D) {
  if (g.rows() != D.space.dim() || g.modulus() != D.space.modulus()) {
    throw error(errc::dimension_mismatch, "element does not act on the decomposed space");
  }
  return BlockLocator(D.blocks)(g);
}

/// Set of canonical transvection directions L(M).
using DirectionSet = std::set<Vector>;

inline DirectionSet transvection_directions(const std::vector<FoundTransvection>& ts) {
  DirectionSet dirs;
  for (const auto& t : ts) dirs.insert(t.transvection.direction);
  return dirs;
}

/// g normalises R exactly when it is a similitude permuting L(M).
inline bool normalizer_membership(const Matrix& g, const DirectionSet& dirs, const SymplecticSpace& S) {
  if (dirs.empty()) throw error(errc::no_transvection, "group has no transvection");
  if (!try_multiplier(g, S)) return false;
  return std::all_of(dirs.begin(), dirs.end(), [&](const Vector& u) {
    return dirs.count(canonical_direction(g.apply(u), S.modulus())) != 0;
  });
}

inline bool normalizer_membership(const Matrix& g, const ElementTable& M, const SymplecticSpace& S) {
  return normalizer_membership(g, transvection_directions(transvections_in(M, S)), S);
}

/// Subgroup generated by the transvections of M. Normality in M is checked.
inline ElementTable transvection_subgroup(const ElementTable& M, const SymplecticSpace& S,
                                          std::vector<FoundTransvection>* found = nullptr) {
  auto ts = transvections_in(M, S);
  if (ts.empty()) throw error(errc::no_transvection, "group has no transvection");
  ElementTable R(M.dim(), M.modulus(), M.cap());
  for (const auto& t : ts) R.extend(t.element);
  for (const auto& a : M.generators()) {
    const Matrix ainv = inverse(a);
    for (const auto& r : R.generators()) {
      if (!R.contains(a * r * ainv)) invariant_violation("transvection subgroup is not normal");
    }
  }
  if (found) *found = std::move(ts);
  return R;
}

namespace detail {

inline void verify_decomposition(const HallDecomposition& D, const ElementTable& M) {
  const SymplecticSpace& S = D.space;
  const std::size_t n = S.dim();
  const std::uint32_t p = S.modulus();
  const std::size_t s = D.blocks.size();
  const std::size_t k = D.W.dim();
  auto check = [](bool ok, const char* what) {
    if (!ok) invariant_violation(what);
  };

  check(s >= 1 && k >= 1, "empty decomposition");
  check(D.blocks.front() == D.W, "first block is not W");
  check(s * k == n, "block dimensions do not add up to dim V");
  check(s <= n, "more blocks than dim V");
  for (const auto& b : D.blocks) check(b.dim() == k, "blocks of unequal dimension");
  check(S.is_symplectic_subspace(D.W), "W is not a symplectic subspace");

  // Sum of translates is V; with dimensions adding up the sum is direct.
  EchelonBasis total(n, p);
  for (const auto& b : D.blocks)
    for (const auto& v : b.basis()) total.insert(v);
  check(total.dim() == n, "translates of W do not span V");
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      check(S.orthogonal(D.blocks[i], D.blocks[j]), "blocks are not orthogonal");

  check(M.size() == s * D.H.size(), "stabiliser index differs from the block count");
  check(D.group_order == M.size(), "recorded order differs from the table");

  // Each transvection direction lies in one block and is orthogonal to the
  // rest; each transvection fixes every other block pointwise.
  std::vector<std::vector<std::size_t>> by_block(s);
  for (std::size_t t = 0; t < D.transvections.size(); ++t) {
    const auto& u = D.transvections[t].transvection.direction;
    std::size_t owner = s, owners = 0;
    for (std::size_t i = 0; i < s; ++i) {
      const bool inside = D.blocks[i].contains(u);
      const bool perp = std::all_of(D.blocks[i].basis().begin(), D.blocks[i].basis().end(),
                                    [&](const Vector& b) { return S.form(u, b) == 0; });
      check(inside != perp, "transvection direction neither in nor orthogonal to a block");
      if (inside) {
        owner = i;
        ++owners;
      }
    }
    check(owners == 1, "transvection direction not in exactly one block");
    by_block[owner].push_back(t);
  }

  // L(M) meets W in a spanning set.
  EchelonBasis inW(n, p);
  for (auto t : by_block[0]) inW.insert(D.transvections[t].transvection.direction);
  check(inW.dim() == k, "transvection directions in W do not span W");

  // Transvections attached to different blocks commute.
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      for (auto a : by_block[i])
        for (auto b : by_block[j]) {
          const Matrix& x = D.transvections[a].element;
          const Matrix& y = D.transvections[b].element;
          check(x * y == y * x, "transvections of different blocks do not commute");
        }

  // R_i is Sp of its block: order of the restriction to a symplectic basis,
  // with every restricted generator an isometry of the standard form.
  const std::uint64_t spk = sp_order(k, p);
  const SymplecticSpace Sk = SymplecticSpace::standard(k, p);
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < s; ++i) {
    ElementTable Ri(n, p, M.cap());
    for (auto t : by_block[i]) Ri.extend(D.transvections[t].element);
    check(Ri.size() == spk, "block transvection group has the wrong order");
    const auto frame = symplectic_basis(S, D.blocks[i]);
    std::vector<Matrix> restricted;
    for (const auto& r : Ri.generators()) {
      const Matrix a = restrict_to(r, frame);
      check(a.transpose() * Sk.gram() * a == Sk.gram(), "restricted generator is not symplectic");
      restricted.push_back(a);
    }
    check(closure(restricted, k, p, M.cap()).size() == spk, "restriction to a block is not Sp(W)");
    product *= Ri.size();
  }
  check(D.R.size() == product, "R is not the product of the block groups");
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < s; ++i) expected *= spk;
  check(D.R.size() == expected, "|R| differs from |Sp(W)|^s");

  // R is inside M is inside the normaliser of R.
  for (const auto& r : D.R.generators()) check(M.contains(r), "R is not inside M");
  const auto dirs = transvection_directions(D.transvections);
  const BlockLocator locate(D.blocks);
  for (const auto& g : M.generators()) {
    check(normalizer_membership(g, dirs, S), "generator of M does not normalise R");
    try {
      (void)locate(g);
    } catch (const error&) {
      invariant_violation("generator of M does not permute the blocks");
    }
  }
}

}  // namespace detail

/// W is the least minimal R-submodule (see minimal_submodule); the blocks are
/// its translates in order of first appearance under breadth-first search
/// over the generators of M.
inline HallDecomposition hall_decompose(const ElementTable& M, const SymplecticSpace& S,
                                        std::uint64_t line_limit = default_line_limit) {
  if (M.dim() != S.dim() || M.modulus() != S.modulus()) {
    throw error(errc::dimension_mismatch, "table and space disagree");
  }
  const std::size_t n = S.dim();
  const std::uint32_t p = S.modulus();
  if (!is_simple(M.generators(), n, p, line_limit)) {
    throw error(errc::not_simple_module, "V is not a simple module for M");
  }
  std::vector<FoundTransvection> ts;
  ElementTable R = transvection_subgroup(M, S, &ts);
  Subspace W = minimal_submodule(R.generators(), n, p, line_limit);

  std::vector<Subspace> blocks{W};
  for (std::size_t head = 0; head < blocks.size(); ++head) {
    for (const auto& g : M.generators()) {
      Subspace img = blocks[head].image(g);
      if (std::find(blocks.begin(), blocks.end(), img) == blocks.end()) {
        if (img.dim() != W.dim()) invariant_violation("translate of W has the wrong dimension");
        blocks.push_back(std::move(img));
      }
    }
  }
  ElementTable H = subspace_stabilizer(M, W);
  HallDecomposition D{S, std::move(W), std::move(blocks), std::move(R), std::move(H), std::move(ts), M.size()};
  detail::verify_decomposition(D, M);
  return D;
}

struct ContainsFullSp {};

struct BlockImprimitive {
  std::size_t blocks = 0;
  std::size_t block_dim = 0;
};

enum class NotApplicableReason { no_transvection, not_simple_module, cap_exceeded };

inline const char* to_string(NotApplicableReason r) {
  switch (r) {
    case NotApplicableReason::no_transvection: return "NoTransvection";
    case NotApplicableReason::not_simple_module: return "NotSimpleModule";
    case NotApplicableReason::cap_exceeded: return "CapExceeded";
  }
  return "?";
}

struct NotApplicable {
  NotApplicableReason reason{};
};

using Verdict = std::variant<ContainsFullSp, BlockImprimitive, NotApplicable>;

inline std::string to_string(const Verdict& v) {
  if (std::holds_alternative<ContainsFullSp>(v)) return "ContainsFullSp";
  if (const auto* b = std::get_if<BlockImprimitive>(&v)) {
    return "BlockImprimitive(" + std::to_string(b->blocks) + ", " + std::to_string(b->block_dim) + ")";
  }
  return std::string("NotApplicable(") + to_string(std::get<NotApplicable>(v).reason) + ")";
}

struct Classification {
  Verdict verdict;
  std::optional<HallDecomposition> decomposition;
  std::size_t transvection_count = 0;
  // Whether ker(phi) on M acts irreducibly; set when a decomposition exists.
  std::optional<bool> kernel_irreducible;
};

/// Verdict for a complete table. Simplicity is tested before the
/// transvection search, so a reducible group without transvections reports
/// NotSimpleModule.
inline Classification classify_monodromy(const ElementTable& M, const SymplecticSpace& S,
                                         std::uint64_t line_limit = default_line_limit) {
  Classification c{NotApplicable{NotApplicableReason::not_simple_module}, std::nullopt, 0, std::nullopt};
  if (!is_simple(M.generators(), S.dim(), S.modulus(), line_limit)) return c;
  try {
    c.decomposition = hall_decompose(M, S, line_limit);
  } catch (const error& e) {
    if (e.code() != errc::no_transvection) throw;
    c.verdict = NotApplicable{NotApplicableReason::no_transvection};
    return c;
  }
  const HallDecomposition& D = *c.decomposition;
  c.transvection_count = D.transvections.size();
  if (D.block_count() == 1) {
    if (!(D.W == Subspace::whole(S.dim(), S.modulus()))) invariant_violation("single block is not V");
    for (const auto& g : sp_generators(S)) {
      if (!M.contains(g)) invariant_violation("single block but Sp(V) is not inside M");
    }
    c.kernel_irreducible = true;
    c.verdict = ContainsFullSp{};
    return c;
  }
  const BlockLocator locate(D.blocks);
  const ElementTable K = M.subgroup_where([&](const Matrix& g) { return is_identity(locate(g)); });
  c.kernel_irreducible = K.generators().empty()
                             ? false
                             : is_simple(K.generators(), S.dim(), S.modulus(), line_limit).simple;
  if (*c.kernel_irreducible) invariant_violation("ker(phi) acts irreducibly but there are several blocks");
  c.verdict = BlockImprimitive{D.block_count(), D.block_dim()};
  return c;
}

/// Closes the generators first; an overflow becomes NotApplicable(CapExceeded).
inline Classification classify_generators(const std::vector<Matrix>& gens, const SymplecticSpace& S,
                                          std::size_t cap = ElementTable::default_cap,
                                          std::uint64_t line_limit = default_line_limit) {
  try {
    const ElementTable M = closure(gens, S, cap);
    return classify_monodromy(M, S, line_limit);
  } catch (const cap_exceeded&) {
    return {NotApplicable{NotApplicableReason::cap_exceeded}, std::nullopt, 0, std::nullopt};
  }
}

struct PartBReport {
  unsigned amplitude = 0;
  bool bound_applies = false;   // p > dim(V) * e + 1 and amp <= e
  Permutation phi;
  std::uint64_t phi_order = 1;  // order of the cyclic image phi(rho(E^x))
};

/// rho is given by the image g of the fixed generator of E^x.
inline PartBReport part_b_check(const HallDecomposition& D, const ElementTable& M, const ExtField& E,
                                const Matrix& g, unsigned e) {
  if (E.prime() != D.space.modulus()) throw error(errc::field_mismatch, "E has the wrong characteristic");
  if (!M.contains(g)) throw error(errc::invalid_argument, "image of the generator is not in M");
  PartBReport r;
  r.amplitude = rep_amplitude(g, E).overall;
  r.phi = phi_image(g, D);
  r.phi_order = permutation_order(r.phi);
  const std::uint64_t n = D.space.dim();
  r.bound_applies = D.space.modulus() > n * e + 1 && r.amplitude <= e;
  if (r.bound_applies && r.phi_order != 1) {
    invariant_violation("amplitude bound holds but the block permutation is nontrivial");
  }
  return r;
}

struct PartBWitness {
  std::size_t element_index = 0;  // index in M
  unsigned amplitude = 0;
  Permutation phi;
};

struct PartBSearch {
  std::size_t homomorphisms = 0;      // g in M with g^{|E^x|} = 1
  std::size_t nontrivial_phi = 0;     // ... whose block permutation is not 1
  std::size_t violations = 0;         // ... with p > dim(V) * amp + 1
  std::optional<PartBWitness> least;  // least amplitude among nontrivial ones
};

/// Runs through every homomorphism E^x -> M (one per element of M whose order
/// divides |E^x|) and records those moving the blocks. Amplitudes are cached
/// by characteristic polynomial, which determines a semisimple element up to
/// conjugacy and hence its amplitude.
inline PartBSearch part_b_search(const HallDecomposition& D, const ElementTable& M, const ExtField& E) {
  if (E.prime() != D.space.modulus()) throw error(errc::field_mismatch, "E has the wrong characteristic");
  const std::uint64_t order = E.unit_order();
  const std::uint64_t n = D.space.dim();
  const std::uint32_t p = D.space.modulus();
  const BlockLocator locate(D.blocks);
  AmplitudeCalculator amp(E);
  std::map<Poly, unsigned> cache;
  PartBSearch out;
  for (std::size_t i = 0; i < M.size(); ++i) {
    const Matrix g = M.element(i);
    if (!power(g, order).is_identity()) continue;
    ++out.homomorphisms;
    const Permutation pi = locate(g);
    if (is_identity(pi)) continue;
    ++out.nontrivial_phi;
    const Poly cp = char_poly(g);
    auto it = cache.find(cp);
    if (it == cache.end()) it = cache.emplace(cp, amp(g).overall).first;
    const unsigned a = it->second;
    if (p > n * a + 1) ++out.violations;
    if (!out.least || a < out.least->amplitude) out.least = PartBWitness{i, a, pi};
  }
  return out;
}

}  // namespace hallgrp
