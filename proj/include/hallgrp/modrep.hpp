#pragma once

// Submodule computations for matrix groups acting on F_p^n by spinning
// vectors, plus the semisimple decomposition of a single element of order
// prime to p.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/linalg.hpp"

namespace hallgrp {

inline constexpr std::uint64_t default_line_limit = 1'000'000;

inline std::uint64_t projective_point_count(std::size_t n, std::uint32_t p) {
  if (n == 0) return 0;
  return (checked_pow(p, static_cast<unsigned>(n)) - 1) / (p - 1);
}

/// Visits the canonical representative (first nonzero entry 1) of every
/// 1-dimensional subspace of F_p^n: leading position ascending, then the
/// trailing entries in lexicographic order. Stops early when fn returns false.
template <class Fn>
void for_each_projective_point(std::size_t n, std::uint32_t p, Fn&& fn) {
  Vector v(n);
  for (std::size_t lead = 0; lead < n; ++lead) {
    const std::size_t tail = n - lead - 1;
    const std::uint64_t count = checked_pow(p, static_cast<unsigned>(tail));
    for (std::uint64_t c = 0; c < count; ++c) {
      std::fill(v.begin(), v.end(), 0);
      v[lead] = 1;
      std::uint64_t x = c;
      for (std::size_t i = n; i-- > lead + 1;) {
        v[i] = static_cast<residue>(x % p);
        x /= p;
      }
      if (!fn(static_cast<const Vector&>(v))) return;
    }
  }
}

/// Smallest subspace containing the seeds and mapped into itself by every
/// generator.
inline Subspace spin(const std::vector<Matrix>& gens, const std::vector<Vector>& seeds, std::size_t n,
                     std::uint32_t p) {
  EchelonBasis eb(n, p);
  std::vector<Vector> queue;
  for (const auto& s : seeds) {
    if (eb.insert(s)) queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size() && eb.dim() < n; ++head) {
    for (const auto& g : gens) {
      Vector img = g.apply(queue[head]);
      if (eb.insert(img)) queue.push_back(std::move(img));
    }
  }
  return Subspace(eb);
}

struct SimplicityResult {
  bool simple = false;
  std::optional<Subspace> witness;  // first proper invariant subspace found

  explicit operator bool() const noexcept { return simple; }
};

/// Exhaustive test: spins every projective point and reports the first one
/// whose spin is proper.
inline SimplicityResult is_simple(const std::vector<Matrix>& gens, std::size_t n, std::uint32_t p,
                                  std::uint64_t line_limit = default_line_limit) {
  if (n == 0) return {false, std::nullopt};
  if (projective_point_count(n, p) > line_limit) {
    throw error(errc::scale_exceeded, "too many projective points to spin");
  }
  SimplicityResult result{true, std::nullopt};
  for_each_projective_point(n, p, [&](const Vector& v) {
    Subspace U = spin(gens, {v}, n, p);
    if (U.dim() < n) {
      result = {false, std::move(U)};
      return false;
    }
    return true;
  });
  return result;
}

/// A minimal nonzero invariant subspace: the spin of least dimension over all
/// projective points, ties broken by subspace_order_less.
inline Subspace minimal_submodule(const std::vector<Matrix>& gens, std::size_t n, std::uint32_t p,
                                  std::uint64_t line_limit = default_line_limit) {
  if (n == 0) throw error(errc::invalid_argument, "zero space has no simple submodule");
  if (projective_point_count(n, p) > line_limit) {
    throw error(errc::scale_exceeded, "too many projective points to spin");
  }
  std::optional<Subspace> best;
  for_each_projective_point(n, p, [&](const Vector& v) {
    Subspace U = spin(gens, {v}, n, p);
    if (!best || subspace_order_less(U, *best)) best = std::move(U);
    return true;
  });
  return *best;
}

struct SimpleSummand {
  Subspace space;
  unsigned degree = 0;   // dimension over F_p
  Poly minimal_polynomial;  // irreducible, of the element restricted to space
  // Filled in by the amplitude computation.
  std::optional<std::uint64_t> exponent;
  std::vector<unsigned> digits;
  unsigned amplitude = 0;
};

/// Splits V into simple F_p[<g>]-modules for g of order dividing n with
/// gcd(n, p) = 1. Summands are grouped by irreducible factor of the
/// characteristic polynomial (degree, then enumeration order), and within a
/// factor's primary component they are spun from its echelon basis vectors.
inline std::vector<SimpleSummand> cyclic_module_decompose(const Matrix& g, std::uint64_t n) {
  if (!g.is_square()) throw error(errc::dimension_mismatch, "element must be square");
  const std::uint32_t p = g.modulus();
  const std::size_t dim = g.rows();
  if (n == 0) throw error(errc::invalid_argument, "order must be positive");
  if (std::gcd(n, static_cast<std::uint64_t>(p)) != 1) {
    throw error(errc::not_semisimple, "order divisible by the characteristic");
  }
  if (!power(g, n).is_identity()) throw error(errc::wrong_order, "g^n is not the identity");

  std::vector<SimpleSummand> out;
  std::size_t total = 0;
  for (const auto& [q, mult] : poly::factor(char_poly(g), p)) {
    (void)mult;
    const unsigned k = static_cast<unsigned>(poly::degree(q));
    const Subspace primary = Subspace::span(kernel(evaluate(q, g)), dim, p);
    EchelonBasis covered(dim, p);
    for (const auto& v : primary.basis()) {
      if (covered.contains(v)) continue;
      Subspace U = spin({g}, {v}, dim, p);
      if (U.dim() != k) invariant_violation("cyclic summand has the wrong dimension");
      for (const auto& b : U.basis()) covered.insert(b);
      out.push_back({std::move(U), k, q, std::nullopt, {}, 0});
    }
    if (covered.dim() != primary.dim()) invariant_violation("primary component not covered");
    total += primary.dim();
  }
  if (total != dim) invariant_violation("primary components do not fill the space");
  return out;
}

}  // namespace hallgrp
