#pragma once

// Dense exact linear algebra over F_p: matrices, reduced row echelon form,
// kernels, inverses, characteristic polynomials and canonical subspaces.
// Vectors are columns; a matrix acts on the left.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"

namespace hallgrp {

using Vector = std::vector<residue>;

class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix scalar(std::size_t n, residue c, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c % p;
    return m;
  }

  /// Entries are reduced mod p, so negative literals are accepted.
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw error(errc::dimension_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) {
        auto v = rows[i][j] % static_cast<std::int64_t>(p);
        m(i, j) = static_cast<residue>(v < 0 ? v + p : v);
      }
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t n, std::uint32_t p) {
    Matrix m(n, cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != n) throw error(errc::dimension_mismatch, "column length");
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix diagonal(const std::vector<residue>& diag, std::uint32_t p) {
    Matrix m(diag.size(), diag.size(), p);
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i] % p;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const residue> data() const noexcept { return data_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](residue x) { return x == 0; });
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  Matrix scaled(residue c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x = static_cast<residue>(static_cast<std::uint64_t>(x) * c % p_);
    return m;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw error(errc::dimension_mismatch, "matrix-vector product");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
      out[i] = static_cast<residue>(acc % p_);
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.cols_ != b.rows_) throw error(errc::dimension_mismatch, "matrix product");
    Matrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
        c(i, j) = static_cast<residue>(acc % a.p_);
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
      c.data_[i] = (a.data_[i] + a.p_ - b.data_[i]) % a.p_;
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Shape first, then row-major entries.
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << '\n';
    }
    return os.str();
  }

 private:
  static void check_field(const Matrix& a, const Matrix& b) {
    if (a.p_ != b.p_) throw error(errc::field_mismatch, "matrices over different fields");
  }
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error(errc::dimension_mismatch, "shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 0;
  std::vector<residue> data_;
};

inline std::string to_string(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](residue x) { return x == 0; });
}

/// Index of the first nonzero coordinate, or size() for the zero vector.
inline std::size_t leading_index(const Vector& v) {
  return static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](residue x) { return x != 0; }) -
                                  v.begin());
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

/// Order on vectors used for every deterministic tie-break: position of the
/// first nonzero coordinate ascending, then entries lexicographically.
/// Under it e_1 < e_2 < ... and the canonical representatives of projective
/// points come out in the order `for_each_projective_point` visits them.
inline bool line_order_less(const Vector& a, const Vector& b) {
  const auto la = leading_index(a), lb = leading_index(b);
  if (la != lb) return la < lb;
  return a < b;
}

// ---------------------------------------------------------------------------

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const noexcept { return pivots.size(); }
};

inline RowEchelon row_reduce(Matrix m) {
  const PrimeField F(m.modulus());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const residue inv = F.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const residue f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

/// Basis of {v : m v = 0}, one vector per free column, free variable set to 1.
inline std::vector<Vector> kernel(const Matrix& m) {
  const auto re = row_reduce(m);
  const PrimeField F(m.modulus());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : re.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < re.pivots.size(); ++i) v[re.pivots[i]] = F.neg(re.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) throw error(errc::dimension_mismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n, m.modulus());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto re = row_reduce(std::move(aug));
  if (re.rank() < n || re.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n, m.modulus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = re.reduced(i, n + j);
  return inv;
}

inline Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw error(errc::singular_matrix, "matrix is not invertible");
  return *inv;
}

inline residue determinant(Matrix m) {
  if (!m.is_square()) throw error(errc::dimension_mismatch, "determinant of non-square matrix");
  const PrimeField F(m.modulus());
  const std::size_t n = m.rows();
  residue det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const residue inv = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const residue f = F.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

inline Matrix power(const Matrix& m, std::uint64_t e) {
  Matrix result = Matrix::identity(m.rows(), m.modulus());
  Matrix base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

inline bool is_nilpotent(const Matrix& m) { return power(m, m.rows()).is_zero(); }

/// f(m) by Horner's rule.
inline Matrix evaluate(const Poly& f, const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix acc(n, n, m.modulus());
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * m + Matrix::scalar(n, *it, m.modulus());
  return acc;
}

/// Characteristic polynomial det(xI - m), monic, via reduction to upper
/// Hessenberg form by similarity transforms followed by the standard
/// three-term style recurrence on leading principal minors.
inline Poly char_poly(const Matrix& a) {
  if (!a.is_square()) throw error(errc::dimension_mismatch, "char_poly of non-square matrix");
  const std::uint32_t p = a.modulus();
  const PrimeField F(p);
  const std::size_t n = a.rows();
  Matrix h = a;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const residue inv = F.inv(h(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      const residue u = F.mul(h(i, j), inv);
      for (std::size_t c = 0; c < n; ++c) h(i, c) = F.sub(h(i, c), F.mul(u, h(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = F.add(h(r, j + 1), F.mul(u, h(r, i)));
    }
  }
  // minors[k] = char poly of the leading k x k block.
  std::vector<Poly> minors(n + 1);
  minors[0] = Poly{1};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // 0-based index of the new row/column
    Poly cur = poly::mul(Poly{F.neg(h(m, m)), 1}, minors[k - 1], p);
    residue prod = 1;
    for (std::size_t i = 1; i <= m; ++i) {
      prod = F.mul(prod, h(m - i + 1, m - i));
      const residue coeff = F.mul(prod, h(m - i, m));
      if (coeff == 0) continue;
      cur = poly::sub(cur, poly::mul(Poly{coeff}, minors[k - 1 - i], p), p);
    }
    minors[k] = std::move(cur);
  }
  return minors[n];
}

// ---------------------------------------------------------------------------

/// Incrementally maintained reduced echelon basis (rows sorted by pivot).
class EchelonBasis {
 public:
  EchelonBasis(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}

  std::size_t ambient_dim() const noexcept { return n_; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }

  /// v minus its projection onto the span along pivot coordinates.
  Vector reduce(Vector v) const {
    if (v.size() != n_) throw error(errc::dimension_mismatch, "vector length");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const residue c = v[pivots_[r]];
      if (c == 0) continue;
      const auto& row = rows_[r];
      for (std::size_t j = pivots_[r]; j < n_; ++j)
        v[j] = static_cast<residue>((v[j] + static_cast<std::uint64_t>(p_ - c) * row[j]) % p_);
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  /// Adds v; returns false if it was already in the span.
  bool insert(const Vector& v) {
    Vector w = reduce(v);
    const std::size_t lead = leading_index(w);
    if (lead == n_) return false;
    const PrimeField F(p_);
    const residue inv = F.inv(w[lead]);
    for (auto& x : w) x = F.mul(x, inv);
    for (auto& row : rows_) {
      const residue c = row[lead];
      if (c == 0) continue;
      for (std::size_t j = lead; j < n_; ++j) row[j] = F.sub(row[j], F.mul(c, w[j]));
    }
    const auto pos = static_cast<std::size_t>(std::upper_bound(pivots_.begin(), pivots_.end(), lead) -
                                              pivots_.begin());
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    return true;
  }

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Subspace of F_p^n held as its reduced row echelon basis, so equal
/// subspaces compare equal member-wise.
class Subspace {
 public:
  Subspace(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}

  static Subspace span(const std::vector<Vector>& vectors, std::size_t n, std::uint32_t p) {
    EchelonBasis eb(n, p);
    for (const auto& v : vectors) eb.insert(v);
    return Subspace(eb);
  }

  static Subspace whole(std::size_t n, std::uint32_t p) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vector(n, i));
    return span(basis, n, p);
  }

  explicit Subspace(const EchelonBasis& eb) : n_(eb.ambient_dim()), p_(eb.modulus()), basis_(eb.rows()) {}

  std::size_t ambient_dim() const noexcept { return n_; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }

  EchelonBasis echelon() const {
    EchelonBasis eb(n_, p_);
    for (const auto& v : basis_) eb.insert(v);
    return eb;
  }

  bool contains(const Vector& v) const { return echelon().contains(v); }

  bool contains(const Subspace& other) const {
    const auto eb = echelon();
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const Vector& v) { return eb.contains(v); });
  }

  /// g(U) for a square matrix g.
  Subspace image(const Matrix& g) const {
    EchelonBasis eb(n_, p_);
    for (const auto& v : basis_) eb.insert(g.apply(v));
    return Subspace(eb);
  }

  Subspace sum(const Subspace& other) const {
    EchelonBasis eb = echelon();
    for (const auto& v : other.basis_) eb.insert(v);
    return Subspace(eb);
  }

  std::size_t intersection_dim(const Subspace& other) const {
    return dim() + other.dim() - sum(other).dim();
  }

  /// Columns are the basis vectors.
  Matrix basis_matrix() const { return Matrix::from_columns(basis_, n_, p_); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? " | " : "") + hallgrp::to_string(basis_[i]);
    return s.empty() ? "0" : s;
  }

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<Vector> basis_;
};

/// Smaller dimension first, then basis rows compared with line_order_less.
inline bool subspace_order_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (line_order_less(a.basis()[i], b.basis()[i])) return true;
    if (line_order_less(b.basis()[i], a.basis()[i])) return false;
  }
  return false;
}

/// Coordinates of v in the given independent vectors; nullopt if v is not in
/// their span.
inline std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v,
                                         std::uint32_t p) {
  const std::size_t n = v.size();
  const std::size_t k = basis.size();
  Matrix aug(n, k + 1, p);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != n) throw error(errc::dimension_mismatch, "basis vector length");
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
  const auto re = row_reduce(std::move(aug));
  if (re.rank() < k) throw error(errc::singular_matrix, "basis vectors are dependent");
  if (re.rank() > k) return std::nullopt;  // pivot in the augmented column
  Vector x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = re.reduced(i, k);
  return x;
}

/// Matrix of g restricted to a g-invariant subspace, in the coordinates of
/// the given basis: g B = B A.
inline Matrix restrict_to(const Matrix& g, const std::vector<Vector>& basis) {
  const std::size_t k = basis.size();
  Matrix a(k, k, g.modulus());
  for (std::size_t j = 0; j < k; ++j) {
    auto c = coordinates(basis, g.apply(basis[j]), g.modulus());
    if (!c) throw error(errc::invalid_argument, "subspace is not invariant");
    for (std::size_t i = 0; i < k; ++i) a(i, j) = (*c)[i];
  }
  return a;
}

}  // namespace hallgrp
