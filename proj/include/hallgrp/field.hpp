#pragma once

// Prime fields F_p, polynomials over F_p and small extension fields F_{p^d}.
//
// Residues are stored as std::uint32_t in [0, p). Every modulus is an odd
// prime below 2^16 so that products of two residues fit comfortably in 64 bits
// even after summing a few of them.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hallgrp/error.hpp"

namespace hallgrp {

using residue = std::uint32_t;

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

/// Distinct prime divisors of n in increasing order (trial division).
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// b^e with an overflow guard; throws scale_exceeded past `limit`.
inline std::uint64_t checked_pow(std::uint64_t b, unsigned e,
                                 std::uint64_t limit = UINT64_MAX) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > limit / b) {
      throw error(errc::scale_exceeded, std::to_string(b) + "^" + std::to_string(e) + " too large");
    }
    r *= b;
  }
  return r;
}

/// Throws unless p is an odd prime small enough for 32-bit residues.
inline void require_odd_prime(std::uint64_t p) {
  if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not prime");
  if (p == 2) throw error(errc::invalid_argument, "characteristic 2 is not supported");
  if (p >= (1u << 16)) throw error(errc::scale_exceeded, "prime " + std::to_string(p) + " too large");
}

struct FieldElement;

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) { require_odd_prime(p); }

  std::uint32_t modulus() const noexcept { return p_; }

  residue reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<residue>(r < 0 ? r + p_ : r);
  }

  residue add(residue a, residue b) const noexcept { return (a + b) % p_; }
  residue sub(residue a, residue b) const noexcept { return (a + p_ - b) % p_; }
  residue neg(residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  residue mul(residue a, residue b) const noexcept {
    return static_cast<residue>(static_cast<std::uint64_t>(a) * b % p_);
  }

  residue pow(residue a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % p_, r = 1;
    while (e) {
      if (e & 1) r = r * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<residue>(r);
  }

  residue inv(residue a) const {
    if (a % p_ == 0) throw error(errc::division_by_zero, "inverse of zero");
    return pow(a, p_ - 2);
  }

  FieldElement operator()(std::int64_t v) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// A residue tagged with its modulus. Arithmetic between different moduli
/// raises FieldMismatch.
struct FieldElement {
  residue value = 0;
  std::uint32_t modulus = 0;

  PrimeField field() const { return PrimeField(modulus); }

  FieldElement inv() const { return {field().inv(value), modulus}; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    check(a, b);
    return {(a.value + b.value) % a.modulus, a.modulus};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    check(a, b);
    return {(a.value + a.modulus - b.value) % a.modulus, a.modulus};
  }
  friend FieldElement operator-(FieldElement a) {
    return {a.value == 0 ? 0 : a.modulus - a.value, a.modulus};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    check(a, b);
    return {static_cast<residue>(static_cast<std::uint64_t>(a.value) * b.value % a.modulus),
            a.modulus};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inv(); }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (a.modulus != b.modulus) {
      throw error(errc::field_mismatch, "F_" + std::to_string(a.modulus) + " vs F_" +
                                            std::to_string(b.modulus));
    }
  }
};

inline FieldElement PrimeField::operator()(std::int64_t v) const { return {reduce(v), p_}; }

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients stored low degree first with no trailing
// zeros. The zero polynomial is the empty vector.

using Poly = std::vector<residue>;

namespace poly {

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly monomial(unsigned k) {
  Poly f(k + 1, 0);
  f[k] = 1;
  return f;
}

inline Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = static_cast<residue>(s % p);
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + p - (i < b.size() ? b[i] : 0);
    r[i] = static_cast<residue>(s % p);
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<residue>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t p) {
  if (b.empty()) throw error(errc::division_by_zero, "polynomial division by zero");
  PrimeField F(p);
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {{}, a};
  const residue lead_inv = F.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  for (int i = degree(a); i >= db; --i) {
    const residue c = F.mul(a[i], lead_inv);
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, std::uint32_t p) { return divmod(a, b, p).second; }

inline Poly make_monic(Poly f, std::uint32_t p) {
  trim(f);
  if (f.empty() || f.back() == 1) return f;
  PrimeField F(p);
  const residue c = F.inv(f.back());
  for (auto& x : f) x = F.mul(x, c);
  return f;
}

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return mod(mul(a, b, p), m, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  r = mod(r, m, p);
  base = mod(base, m, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline residue eval(const Poly& f, residue x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
  return static_cast<residue>(acc);
}

/// Ben-Or test: f monic of degree n is irreducible iff gcd(f, x^{p^i} - x) = 1
/// for every i <= n/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x = monomial(1);
  Poly h = mod(x, f, p);
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, p, f, p);
    if (degree(gcd(f, sub(h, x, p), p)) > 0) return false;
  }
  return true;
}

/// Monic polynomial of degree d whose lower coefficients are the base-p digits
/// of `index` (constant term first). Enumerating index = 0, 1, ... walks the
/// monic polynomials of degree d in a fixed order.
inline Poly monic_from_index(std::uint64_t index, unsigned d, std::uint32_t p) {
  Poly f(d + 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    f[i] = static_cast<residue>(index % p);
    index /= p;
  }
  f[d] = 1;
  return f;
}

/// Irreducible factorization of a monic polynomial as (factor, multiplicity),
/// factors ordered by degree then by enumeration index. Trial division by
/// monic polynomials of degree up to half the remaining degree; meant for the
/// small degrees that occur as characteristic polynomials here.
inline std::vector<std::pair<Poly, unsigned>> factor(Poly f, std::uint32_t p) {
  f = make_monic(std::move(f), p);
  std::vector<std::pair<Poly, unsigned>> out;
  if (degree(f) < 1) return out;
  for (unsigned k = 1; 2 * k <= static_cast<unsigned>(degree(f)); ++k) {
    const std::uint64_t count = checked_pow(p, k);
    for (std::uint64_t idx = 0; idx < count && 2 * k <= static_cast<unsigned>(degree(f)); ++idx) {
      const Poly q = monic_from_index(idx, k, p);
      unsigned mult = 0;
      for (;;) {
        auto [quot, rem] = divmod(f, q, p);
        if (!rem.empty()) break;
        f = std::move(quot);
        ++mult;
      }
      if (mult) out.emplace_back(q, mult);
    }
  }
  if (degree(f) >= 1) {
    // Remaining cofactor has no factor of degree <= deg/2; it may still equal
    // a factor already found (e.g. q^2 with deg q = 1 leaves q).
    auto same = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == f; });
    if (same != out.end()) {
      ++same->second;
    } else {
      out.emplace_back(f, 1);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  return out;
}

inline std::string to_string(const Poly& f) {
  if (f.empty()) return "0";
  std::string s;
  for (int i = degree(f); i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (f[i] != 1 || i == 0) s += std::to_string(f[i]);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace poly

// ---------------------------------------------------------------------------

struct ExtFieldElement {
  std::vector<residue> coefficients;  // length d, constant term first

  friend bool operator==(const ExtFieldElement&, const ExtFieldElement&) = default;
};

/// F_{p^d} realised as F_p[x]/(f) with f the first irreducible monic
/// polynomial of degree d in `monic_from_index` order, and generator the first
/// element of multiplicative order p^d - 1 in index order. Elements are
/// addressed by index = sum c_i p^i; multiplication goes through full
/// exponent/log tables, which bounds the field size.
class ExtField {
 public:
  static constexpr std::uint64_t max_order = 300000;

  ExtField(std::uint64_t p, unsigned d) : p_(static_cast<std::uint32_t>(p)), d_(d) {
    require_odd_prime(p);
    if (d < 1) throw error(errc::invalid_argument, "extension degree must be >= 1");
    q_ = checked_pow(p, d, max_order);
    if (q_ > max_order) {
      throw error(errc::scale_exceeded, "field of order " + std::to_string(q_) + " too large");
    }
    for (std::uint64_t idx = 0; idx < q_; ++idx) {
      Poly f = poly::monic_from_index(idx, d_, p_);
      if (poly::is_irreducible(f, p_)) {
        modulus_ = std::move(f);
        break;
      }
    }
    if (modulus_.empty()) invariant_violation("no irreducible polynomial found");

    const std::uint64_t n = q_ - 1;
    const auto primes = prime_divisors(n);
    std::uint64_t gen = 0;
    for (std::uint64_t idx = 1; idx < q_ && gen == 0; ++idx) {
      const Poly a = poly_of(idx);
      bool primitive = true;
      for (auto r : primes) {
        if (poly::powmod(a, n / r, modulus_, p_) == Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = idx;
    }
    if (gen == 0) invariant_violation("no multiplicative generator found");
    generator_ = gen;

    exp_.assign(n, 0);
    log_.assign(q_, 0);
    Poly cur{1};
    const Poly g = poly_of(gen);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto idx = index_of(cur);
      if (i > 0 && idx == 1) invariant_violation("generator returned to 1 early");
      exp_[i] = static_cast<std::uint32_t>(idx);
      log_[idx] = static_cast<std::uint32_t>(i);
      cur = poly::mulmod(cur, g, modulus_, p_);
    }
    if (index_of(cur) != 1) invariant_violation("generator order is not p^d - 1");
  }

  std::uint32_t prime() const noexcept { return p_; }
  unsigned degree() const noexcept { return d_; }
  std::uint64_t order() const noexcept { return q_; }
  std::uint64_t unit_order() const noexcept { return q_ - 1; }
  const Poly& modulus() const noexcept { return modulus_; }

  std::uint64_t generator_index() const noexcept { return generator_; }
  ExtFieldElement generator() const { return element(generator_); }
  ExtFieldElement zero() const { return element(0); }
  ExtFieldElement one() const { return element(1); }

  ExtFieldElement element(std::uint64_t index) const {
    if (index >= q_) throw error(errc::invalid_argument, "element index out of range");
    ExtFieldElement e{std::vector<residue>(d_, 0)};
    for (unsigned i = 0; i < d_; ++i) {
      e.coefficients[i] = static_cast<residue>(index % p_);
      index /= p_;
    }
    return e;
  }

  std::uint64_t index(const ExtFieldElement& e) const {
    if (e.coefficients.size() != d_) throw error(errc::field_mismatch, "wrong element length");
    std::uint64_t idx = 0;
    for (unsigned i = d_; i-- > 0;) {
      if (e.coefficients[i] >= p_) throw error(errc::field_mismatch, "coefficient not reduced");
      idx = idx * p_ + e.coefficients[i];
    }
    return idx;
  }

  // Index-level arithmetic.
  std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }
  std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
  }
  std::uint64_t pow_index(std::uint64_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
  }
  std::uint64_t power_of_generator(std::uint64_t m) const { return exp_[m % (q_ - 1)]; }

  ExtFieldElement add(const ExtFieldElement& a, const ExtFieldElement& b) const {
    return element(add_index(index(a), index(b)));
  }
  ExtFieldElement mul(const ExtFieldElement& a, const ExtFieldElement& b) const {
    return element(mul_index(index(a), index(b)));
  }
  ExtFieldElement pow(const ExtFieldElement& a, std::uint64_t e) const {
    return element(pow_index(index(a), e));
  }
  ExtFieldElement inv(const ExtFieldElement& a) const {
    const auto i = index(a);
    if (i == 0) throw error(errc::division_by_zero, "inverse of zero");
    return element(exp_[(q_ - 1 - log_[i]) % (q_ - 1)]);
  }

  /// The unique m in [0, p^d - 1) with generator^m = x.
  std::uint64_t dlog_index(std::uint64_t x) const {
    if (x == 0) throw error(errc::dlog_of_zero, "discrete log of zero");
    return log_[x];
  }
  std::uint64_t dlog(const ExtFieldElement& x) const { return dlog_index(index(x)); }

  std::uint64_t multiplicative_order_index(std::uint64_t x) const {
    const auto n = q_ - 1;
    return n / std::gcd(n, static_cast<std::uint64_t>(dlog_index(x)));
  }

  /// Evaluates a polynomial over F_p at an element given by index.
  std::uint64_t eval_index(const Poly& f, std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = add_index(mul_index(acc, x), *it % p_);
    return acc;
  }

  /// Indices of all roots of f in this field, ascending.
  std::vector<std::uint64_t> roots(const Poly& f) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < q_; ++x) {
      if (eval_index(f, x) == 0) out.push_back(x);
    }
    return out;
  }

 private:
  Poly poly_of(std::uint64_t index) const {
    Poly f(d_, 0);
    for (unsigned i = 0; i < d_; ++i) {
      f[i] = static_cast<residue>(index % p_);
      index /= p_;
    }
    poly::trim(f);
    return f;
  }

  std::uint64_t index_of(const Poly& f) const {
    std::uint64_t idx = 0;
    for (std::size_t i = f.size(); i-- > 0;) idx = idx * p_ + f[i];
    return idx;
  }

  std::uint32_t p_;
  unsigned d_;
  std::uint64_t q_ = 0;
  Poly modulus_;
  std::uint64_t generator_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace hallgrp
