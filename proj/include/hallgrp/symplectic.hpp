#pragma once

// Symplectic spaces over F_p, similitude multipliers and transvections.
//
// The form is e(x, y) = x^T * gram * y. A transvection with direction u and
// parameter lambda is T_u[lambda](v) = v + lambda * e(v, u) * u, i.e. the
// matrix I + lambda * u * (gram * u)^T.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/linalg.hpp"

namespace hallgrp {

/// Block form [[0, I_g], [-I_g, 0]].
inline Matrix standard_gram(std::size_t dim, std::uint32_t p) {
  if (dim == 0 || dim % 2 != 0) {
    throw error(errc::odd_dimension, "symplectic dimension " + std::to_string(dim) + " is not even");
  }
  const std::size_t g = dim / 2;
  Matrix J(dim, dim, p);
  for (std::size_t i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = p - 1;
  }
  return J;
}

class SymplecticSpace {
 public:
  explicit SymplecticSpace(Matrix gram) : gram_(std::move(gram)) {
    require_odd_prime(gram_.modulus());
    if (!gram_.is_square()) throw error(errc::dimension_mismatch, "gram matrix must be square");
    if (gram_.rows() == 0 || gram_.rows() % 2 != 0) {
      throw error(errc::odd_dimension, "symplectic dimension must be even and positive");
    }
    const std::uint32_t p = gram_.modulus();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (gram_(i, i) != 0) throw error(errc::degenerate_form, "gram diagonal must vanish");
      for (std::size_t j = i + 1; j < dim(); ++j) {
        if ((gram_(i, j) + gram_(j, i)) % p != 0) {
          throw error(errc::degenerate_form, "gram matrix is not antisymmetric");
        }
      }
    }
    if (rank(gram_) != dim()) throw error(errc::degenerate_form, "form is degenerate");
  }

  static SymplecticSpace standard(std::size_t dim, std::uint32_t p) {
    return SymplecticSpace(standard_gram(dim, p));
  }

  std::size_t dim() const noexcept { return gram_.rows(); }
  std::uint32_t modulus() const noexcept { return gram_.modulus(); }
  const Matrix& gram() const noexcept { return gram_; }
  bool is_standard() const { return gram_ == standard_gram(dim(), modulus()); }

  residue form(const Vector& x, const Vector& y) const {
    const Vector gy = gram_.apply(y);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<std::uint64_t>(x[i]) * gy[i];
    return static_cast<residue>(acc % modulus());
  }

  /// W^perp = {v : e(v, w) = 0 for all w in W}.
  Subspace perp(const Subspace& W) const {
    if (W.dim() == 0) return Subspace::whole(dim(), modulus());
    Matrix rows(W.dim(), dim(), modulus());
    for (std::size_t i = 0; i < W.dim(); ++i) {
      // e(v, w) = (gram w)^T v, so the rows are (gram w)^T.
      const Vector gw = gram_.apply(W.basis()[i]);
      for (std::size_t j = 0; j < dim(); ++j) rows(i, j) = gw[j];
    }
    return Subspace::span(kernel(rows), dim(), modulus());
  }

  bool orthogonal(const Subspace& a, const Subspace& b) const {
    for (const auto& x : a.basis())
      for (const auto& y : b.basis())
        if (form(x, y) != 0) return false;
    return true;
  }

  /// Whether the form restricted to W is non-degenerate.
  bool is_symplectic_subspace(const Subspace& W) const {
    const std::size_t k = W.dim();
    Matrix restricted(k, k, modulus());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) restricted(i, j) = form(W.basis()[i], W.basis()[j]);
    return rank(restricted) == k;
  }

 private:
  Matrix gram_;
};

/// The unique eps with f^T gram f = eps * gram.
inline residue multiplier(const Matrix& f, const SymplecticSpace& S) {
  if (!f.is_square() || f.rows() != S.dim() || f.modulus() != S.modulus()) {
    throw error(errc::dimension_mismatch, "matrix does not act on the symplectic space");
  }
  const Matrix& J = S.gram();
  const Matrix pulled = f.transpose() * J * f;
  const PrimeField F(S.modulus());
  std::size_t i = 0, j = 0;
  while (J(i, j) == 0) {
    if (++j == S.dim()) {
      j = 0;
      ++i;
    }
  }
  const residue eps = F.mul(pulled(i, j), F.inv(J(i, j)));
  if (eps == 0 || pulled != J.scaled(eps)) {
    throw error(errc::not_a_similitude, "matrix does not preserve the form up to a scalar");
  }
  return eps;
}

inline std::optional<residue> try_multiplier(const Matrix& f, const SymplecticSpace& S) {
  try {
    return multiplier(f, S);
  } catch (const error& e) {
    if (e.code() == errc::not_a_similitude) return std::nullopt;
    throw;
  }
}

/// An invertible matrix together with its multiplier, present exactly when
/// the matrix is a similitude of the ambient space.
struct GroupElement {
  Matrix matrix;
  std::optional<residue> epsilon;

  static GroupElement of(Matrix m, const SymplecticSpace& S) {
    if (!try_inverse(m)) throw error(errc::singular_matrix, "group element must be invertible");
    auto eps = try_multiplier(m, S);
    return {std::move(m), eps};
  }

  bool is_similitude() const noexcept { return epsilon.has_value(); }
};

struct Transvection {
  Vector direction;  // first nonzero coordinate is 1
  residue lambda = 0;

  friend bool operator==(const Transvection&, const Transvection&) = default;
};

/// Scales u so its first nonzero coordinate is 1; returns the scale factor
/// used (u_canonical = c * u).
inline residue canonicalize_direction(Vector& u, std::uint32_t p) {
  const auto lead = leading_index(u);
  if (lead == u.size()) throw error(errc::degenerate_transvection, "zero direction");
  const PrimeField F(p);
  const residue c = F.inv(u[lead]);
  for (auto& x : u) x = F.mul(x, c);
  return c;
}

inline Vector canonical_direction(Vector u, std::uint32_t p) {
  canonicalize_direction(u, p);
  return u;
}

inline Matrix make_transvection(const Vector& u, residue lambda, const SymplecticSpace& S) {
  const std::uint32_t p = S.modulus();
  if (u.size() != S.dim()) throw error(errc::dimension_mismatch, "direction length");
  if (lambda % p == 0) throw error(errc::degenerate_transvection, "lambda must be nonzero");
  if (is_zero(u)) throw error(errc::degenerate_transvection, "direction must be nonzero");
  const PrimeField F(p);
  const Vector ju = S.gram().apply(u);
  Matrix T = Matrix::identity(S.dim(), p);
  for (std::size_t i = 0; i < S.dim(); ++i) {
    if (u[i] == 0) continue;
    const residue a = F.mul(lambda % p, u[i]);
    for (std::size_t j = 0; j < S.dim(); ++j) T(i, j) = F.add(T(i, j), F.mul(a, ju[j]));
  }
  return T;
}

inline Matrix make_transvection(const Transvection& t, const SymplecticSpace& S) {
  return make_transvection(t.direction, t.lambda, S);
}

/// (u, lambda) with f = T_u[lambda] and u canonical, or nullopt when f is not
/// a symplectic transvection.
inline std::optional<Transvection> recognize_transvection(const Matrix& f, const SymplecticSpace& S) {
  const std::uint32_t p = S.modulus();
  if (!f.is_square() || f.rows() != S.dim() || f.modulus() != p) {
    throw error(errc::dimension_mismatch, "matrix does not act on the symplectic space");
  }
  const std::size_t n = S.dim();
  const Matrix N = f - Matrix::identity(n, p);
  std::size_t col = 0;
  while (col < n && is_zero(N.column(col))) ++col;
  if (col == n) return std::nullopt;
  Vector u = N.column(col);
  canonicalize_direction(u, p);
  const std::size_t lead = leading_index(u);
  // Rank one: N = u w^T with w^T the row of N at u's leading coordinate.
  const Vector w = N.row(lead);
  const PrimeField F(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (N(i, j) != F.mul(u[i], w[j])) return std::nullopt;
  const Vector ju = S.gram().apply(u);
  const std::size_t jlead = leading_index(ju);
  const residue lambda = F.mul(w[jlead], F.inv(ju[jlead]));
  for (std::size_t j = 0; j < n; ++j)
    if (w[j] != F.mul(lambda, ju[j])) return std::nullopt;
  if (lambda == 0) return std::nullopt;
  return Transvection{std::move(u), lambda};
}

struct DropResult {
  std::size_t drop = 0;
  std::vector<Vector> fixed_basis;  // basis of Eig(f, 1) = ker(f - I)
};

inline DropResult drop_and_eig(const Matrix& f) {
  if (!f.is_square()) throw error(errc::dimension_mismatch, "drop of non-square matrix");
  auto basis = kernel(f - Matrix::identity(f.rows(), f.modulus()));
  return {f.rows() - basis.size(), std::move(basis)};
}

/// dim V - dim Eig(f, 1) for a unipotent f with (f - I)^2 = 0.
inline std::size_t toric_dimension(const Matrix& f, const SymplecticSpace& S) {
  if (!f.is_square() || f.rows() != S.dim() || f.modulus() != S.modulus()) {
    throw error(errc::dimension_mismatch, "matrix does not act on the symplectic space");
  }
  const Matrix N = f - Matrix::identity(S.dim(), S.modulus());
  if (!(N * N).is_zero()) throw error(errc::not_semistable_unipotent, "(f - I)^2 is not zero");
  return drop_and_eig(f).drop;
}

/// |Sp(dim, p)| = p^{g^2} prod_{i=1..g} (p^{2i} - 1).
inline std::uint64_t sp_order(std::size_t dim, std::uint32_t p) {
  if (dim == 0 || dim % 2 != 0) throw error(errc::odd_dimension, "symplectic dimension must be even");
  const unsigned g = static_cast<unsigned>(dim / 2);
  std::uint64_t order = checked_pow(p, g * g);
  for (unsigned i = 1; i <= g; ++i) {
    const std::uint64_t factor = checked_pow(p, 2 * i) - 1;
    if (order > UINT64_MAX / factor) throw error(errc::scale_exceeded, "group order overflows");
    order *= factor;
  }
  return order;
}

inline std::uint64_t gsp_order(std::size_t dim, std::uint32_t p) {
  const auto sp = sp_order(dim, p);
  if (sp > UINT64_MAX / (p - 1)) throw error(errc::scale_exceeded, "group order overflows");
  return sp * (p - 1);
}

/// Basis e_1..e_g, f_1..f_g of W (columns) with e(e_i, f_j) = delta_ij and all
/// other pairings zero. W must be a symplectic subspace.
inline std::vector<Vector> symplectic_basis(const SymplecticSpace& S, const Subspace& W) {
  const std::uint32_t p = S.modulus();
  const PrimeField F(p);
  std::vector<Vector> pool = W.basis();
  std::vector<Vector> es, fs;
  while (!pool.empty()) {
    const Vector x = pool.front();
    std::size_t yi = 1;
    while (yi < pool.size() && S.form(x, pool[yi]) == 0) ++yi;
    if (yi == pool.size()) throw error(errc::degenerate_form, "restricted form is degenerate");
    Vector y = pool[yi];
    const residue s = F.inv(S.form(x, y));
    for (auto& c : y) c = F.mul(c, s);
    std::vector<Vector> rest;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (i == yi) continue;
      // v - e(v, y) x + e(v, x) y is orthogonal to both x and y.
      Vector v = pool[i];
      const residue a = S.form(v, y), b = S.form(v, x);
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = F.add(F.sub(v[j], F.mul(a, x[j])), F.mul(b, y[j]));
      }
      rest.push_back(std::move(v));
    }
    es.push_back(x);
    fs.push_back(std::move(y));
    pool = std::move(rest);
  }
  es.insert(es.end(), fs.begin(), fs.end());
  return es;
}

/// Transvections T_b[1] for b over the standard basis vectors and all sums
/// b_i + b_j (i < j), in that order. For a non-standard gram matrix the same
/// vectors are taken in a symplectic basis of the space.
inline std::vector<Matrix> sp_generators(const SymplecticSpace& S) {
  const std::size_t n = S.dim();
  const std::uint32_t p = S.modulus();
  std::vector<Vector> frame;
  if (S.is_standard()) {
    for (std::size_t i = 0; i < n; ++i) frame.push_back(unit_vector(n, i));
  } else {
    frame = symplectic_basis(S, Subspace::whole(n, p));
  }
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(make_transvection(frame[i], 1, S));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector b(n);
      for (std::size_t k = 0; k < n; ++k) b[k] = (frame[i][k] + frame[j][k]) % p;
      gens.push_back(make_transvection(b, 1, S));
    }
  }
  return gens;
}

}  // namespace hallgrp
