#pragma once

// Enumeration of finite matrix groups over F_p by breadth-first closure.
//
// Elements are stored as row-major residue bytes (so p < 256) in one flat
// buffer; an open-addressing index keyed by those bytes gives membership.
// Iteration order is insertion order, which is fully determined by the
// generator list.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/linalg.hpp"
#include "hallgrp/symplectic.hpp"

namespace hallgrp {

class ElementTable {
 public:
  static constexpr std::size_t default_cap = 1'000'000;
  static constexpr std::size_t max_dim = 16;

  ElementTable(std::size_t dim, std::uint32_t p, std::size_t cap = default_cap)
      : dim_(dim), p_(p), cap_(cap), stride_(dim * dim) {
    require_odd_prime(p);
    if (p >= 256) throw error(errc::scale_exceeded, "element tables need p < 256");
    if (dim == 0 || dim > max_dim) throw error(errc::scale_exceeded, "unsupported matrix dimension");
    if (cap == 0) throw error(errc::invalid_argument, "cap must be positive");
    slots_.assign(64, 0);
    std::vector<std::uint8_t> id(stride_, 0);
    for (std::size_t i = 0; i < dim_; ++i) id[i * dim_ + i] = 1;
    insert(id.data());
  }

  std::size_t size() const noexcept { return store_.size() / stride_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t cap() const noexcept { return cap_; }

  /// Generators actually used to build the table (redundant ones dropped).
  const std::vector<Matrix>& generators() const noexcept { return generators_; }

  std::span<const std::uint8_t> key(std::size_t i) const {
    return {store_.data() + i * stride_, stride_};
  }

  Matrix element(std::size_t i) const {
    Matrix m(dim_, dim_, p_);
    const auto* k = store_.data() + i * stride_;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) m(r, c) = k[r * dim_ + c];
    return m;
  }

  std::optional<std::size_t> find(const Matrix& g) const {
    const auto k = to_key(g);
    return lookup(k.data());
  }

  bool contains(const Matrix& g) const { return find(g).has_value(); }

  /// Adds g as a generator and closes up. Returns false (and records
  /// nothing) when g is already a member.
  bool extend(const Matrix& g) {
    const auto gk = to_key(g);
    if (lookup(gk.data())) return false;
    if (!try_inverse(g)) throw error(errc::singular_matrix, "generator is not invertible");
    generators_.push_back(g);
    generator_keys_.push_back(gk);
    std::vector<std::uint8_t> prod(stride_);
    const std::size_t old = size();
    for (std::size_t i = 0; i < old; ++i) {
      multiply(store_.data() + i * stride_, gk.data(), prod.data());
      insert(prod.data());
    }
    for (std::size_t i = old; i < size(); ++i) {
      for (const auto& hk : generator_keys_) {
        multiply(store_.data() + i * stride_, hk.data(), prod.data());
        insert(prod.data());
      }
    }
    return true;
  }

  /// The elements satisfying pred, which must form a subgroup; enforced by
  /// rebuilding the subset as a closure and comparing sizes.
  template <class Pred>
  ElementTable subgroup_where(Pred pred) const {
    ElementTable sub(dim_, p_, cap_);
    std::size_t selected = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      const Matrix g = element(i);
      if (!pred(g)) continue;
      ++selected;
      if (!sub.contains(g)) sub.extend(g);
    }
    if (sub.size() != selected) invariant_violation("filtered element set is not a subgroup");
    return sub;
  }

  /// Raw product of two stored keys; exposed for tight loops.
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const noexcept {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        unsigned acc = 0;
        for (std::size_t k = 0; k < dim_; ++k) acc += unsigned(a[i * dim_ + k]) * b[k * dim_ + j];
        out[i * dim_ + j] = static_cast<std::uint8_t>(acc % p_);
      }
    }
  }

  std::vector<std::uint8_t> to_key(const Matrix& g) const {
    if (g.rows() != dim_ || g.cols() != dim_ || g.modulus() != p_) {
      throw error(errc::dimension_mismatch, "matrix does not match the table");
    }
    std::vector<std::uint8_t> k(stride_);
    for (std::size_t i = 0; i < stride_; ++i) k[i] = static_cast<std::uint8_t>(g.data()[i]);
    return k;
  }

 private:
  static std::uint64_t hash_bytes(const std::uint8_t* k, std::size_t n) noexcept {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (std::size_t i = 0; i < n; ++i) {
      h ^= k[i];
      h *= 1099511628211ull;
    }
    return h ^ (h >> 29);
  }

  std::optional<std::size_t> lookup(const std::uint8_t* k) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_bytes(k, stride_) & mask;; s = (s + 1) & mask) {
      const auto slot = slots_[s];
      if (slot == 0) return std::nullopt;
      if (std::memcmp(store_.data() + (slot - 1) * stride_, k, stride_) == 0) return slot - 1;
    }
  }

  bool insert(const std::uint8_t* k) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_bytes(k, stride_) & mask;
    for (;; s = (s + 1) & mask) {
      const auto slot = slots_[s];
      if (slot == 0) break;
      if (std::memcmp(store_.data() + (slot - 1) * stride_, k, stride_) == 0) return false;
    }
    if (size() >= cap_) throw cap_exceeded(cap_, size());
    store_.insert(store_.end(), k, k + stride_);
    slots_[s] = static_cast<std::uint32_t>(size());
    if (2 * size() > slots_.size()) rehash();
    return true;
  }

  void rehash() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
    const std::size_t mask = fresh.size() - 1;
    for (std::size_t i = 0; i < size(); ++i) {
      std::size_t s = hash_bytes(store_.data() + i * stride_, stride_) & mask;
      while (fresh[s] != 0) s = (s + 1) & mask;
      fresh[s] = static_cast<std::uint32_t>(i + 1);
    }
    slots_.swap(fresh);
  }

  std::size_t dim_;
  std::uint32_t p_;
  std::size_t cap_;
  std::size_t stride_;
  std::vector<std::uint8_t> store_;
  std::vector<std::uint32_t> slots_;
  std::vector<Matrix> generators_;
  std::vector<std::vector<std::uint8_t>> generator_keys_;
};

/// Closure of the generators: they are sorted (row-major lexicographic) and
/// fed one at a time into a breadth-first extension.
inline ElementTable closure(std::vector<Matrix> gens, std::size_t dim, std::uint32_t p,
                            std::size_t cap = ElementTable::default_cap) {
  std::sort(gens.begin(), gens.end());
  ElementTable table(dim, p, cap);
  for (const auto& g : gens) table.extend(g);
  return table;
}

inline ElementTable closure(const std::vector<Matrix>& gens, const SymplecticSpace& S,
                            std::size_t cap = ElementTable::default_cap) {
  return closure(gens, S.dim(), S.modulus(), cap);
}

inline std::size_t order(const std::vector<Matrix>& gens, std::size_t dim, std::uint32_t p,
                         std::size_t cap = ElementTable::default_cap) {
  return closure(gens, dim, p, cap).size();
}

inline bool contains(const ElementTable& T, const Matrix& g) { return T.contains(g); }

struct FoundTransvection {
  Matrix element;
  Transvection transvection;
};

/// Every transvection in the table, in table order.
inline std::vector<FoundTransvection> transvections_in(const ElementTable& T, const SymplecticSpace& S) {
  if (T.dim() != S.dim() || T.modulus() != S.modulus()) {
    throw error(errc::dimension_mismatch, "table and space disagree");
  }
  const std::size_t n = T.dim();
  const std::uint32_t p = T.modulus();
  std::vector<FoundTransvection> out;
  std::vector<int> N(n * n);
  for (std::size_t idx = 0; idx < T.size(); ++idx) {
    // Cheap screen: f - I must have rank exactly one.
    const auto k = T.key(idx);
    for (std::size_t i = 0; i < n * n; ++i) N[i] = (int(k[i]) - (i % (n + 1) == 0 ? 1 : 0) + int(p)) % int(p);
    const auto first = static_cast<std::size_t>(
        std::find_if(N.begin(), N.end(), [](int x) { return x != 0; }) - N.begin());
    if (first == N.size()) continue;
    const std::size_t r0 = first / n, c0 = first % n;
    bool rank_one = true;
    const unsigned pivot_inv = PrimeField(p).inv(static_cast<residue>(N[r0 * n + c0]));
    for (std::size_t r = 0; r < n && rank_one; ++r) {
      if (r == r0) continue;
      const unsigned f = unsigned(N[r * n + c0]) * pivot_inv % p;
      for (std::size_t c = 0; c < n; ++c) {
        if (unsigned(N[r * n + c]) != f * unsigned(N[r0 * n + c]) % p) {
          rank_one = false;
          break;
        }
      }
    }
    if (!rank_one) continue;
    Matrix g = T.element(idx);
    if (auto t = recognize_transvection(g, S)) out.push_back({std::move(g), std::move(*t)});
  }
  return out;
}

/// Smallest subgroup containing the seeds and normalised by every ambient
/// generator.
inline ElementTable normal_closure(const std::vector<Matrix>& ambient_gens, const std::vector<Matrix>& seeds,
                                   std::size_t dim, std::uint32_t p,
                                   std::size_t cap = ElementTable::default_cap) {
  ElementTable N = closure(seeds, dim, p, cap);
  std::vector<Matrix> inverses;
  for (const auto& a : ambient_gens) inverses.push_back(inverse(a));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < ambient_gens.size(); ++a) {
      for (std::size_t i = 0; i < N.generators().size(); ++i) {
        const Matrix c = ambient_gens[a] * N.generators()[i] * inverses[a];
        if (N.extend(c)) changed = true;
      }
    }
  }
  return N;
}

inline ElementTable centralizer(const ElementTable& T, const std::vector<Matrix>& subset) {
  return T.subgroup_where([&](const Matrix& t) {
    return std::all_of(subset.begin(), subset.end(), [&](const Matrix& s) { return t * s == s * t; });
  });
}

/// Elements t with t(W) = W.
inline ElementTable subspace_stabilizer(const ElementTable& T, const Subspace& W) {
  if (W.ambient_dim() != T.dim()) throw error(errc::dimension_mismatch, "subspace dimension");
  const EchelonBasis eb = W.echelon();
  return T.subgroup_where([&](const Matrix& t) {
    return std::all_of(W.basis().begin(), W.basis().end(),
                       [&](const Vector& w) { return eb.contains(t.apply(w)); });
  });
}

}  // namespace hallgrp
