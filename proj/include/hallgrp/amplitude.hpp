#pragma once

// Amplitudes of characters of E^x and of representations of E^x on F_p
// spaces, E = F_{p^d}.
//
// A representation is given by the image g of the fixed generator of E^x.
// Each simple summand V_i of <g> is a 1-dimensional space over F_{p^k}, and
// <g> acts on it through a character gamma -> beta with beta a root of the
// summand's minimal polynomial. The summand exponent is the m' in
// [0, p^k - 1) with beta = N(i(gamma))^{m'}, where i embeds E into a common
// field and N(x) = x^{(p^d-1)/(p^k-1)} generates the copy of F_{p^k}^x. The
// E-level exponent is m' * (p^d-1)/(p^k-1); its base-p digits are those of
// m' repeated d/k times, so both carry the same amplitude.
//
// Replacing beta by a Frobenius conjugate (or changing the embedding)
// rotates the digits of m'. The reported exponent is the least one over all
// roots, which makes it independent of both choices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <tuple>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/linalg.hpp"
#include "hallgrp/modrep.hpp"

namespace hallgrp {

struct CharacterData {
  std::uint32_t prime = 0;
  unsigned degree = 0;
  std::uint64_t exponent = 0;
  std::vector<unsigned> digits;  // base-p, least significant first, length = degree
  unsigned amplitude = 0;
};

inline CharacterData char_amplitude(std::uint32_t p, unsigned d, std::uint64_t m) {
  require_odd_prime(p);
  if (d < 1) throw error(errc::invalid_argument, "degree must be >= 1");
  const std::uint64_t q = checked_pow(p, d);
  if (m > q - 2) {
    throw error(errc::exponent_out_of_range,
                "exponent " + std::to_string(m) + " not in [0, " + std::to_string(q - 2) + "]");
  }
  CharacterData c{p, d, m, std::vector<unsigned>(d, 0), 0};
  for (unsigned j = 0; j < d; ++j) {
    c.digits[j] = static_cast<unsigned>(m % p);
    m /= p;
  }
  c.amplitude = *std::max_element(c.digits.begin(), c.digits.end());
  return c;
}

struct AmplitudeReport {
  unsigned extension_degree = 0;
  std::vector<SimpleSummand> summands;
  unsigned overall = 0;
};

namespace detail {

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
  while (newr != 0) {
    const auto q = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - q * newt);
    std::tie(r, newr) = std::make_pair(newr, r - q * newr);
  }
  if (r != 1) invariant_violation("value not invertible modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

}  // namespace detail

/// Computes summand exponents for representations of one fixed E. Common
/// fields are built lazily and cached, so one instance can serve many calls.
class AmplitudeCalculator {
 public:
  explicit AmplitudeCalculator(const ExtField& E) : E_(E) {}

  const ExtField& field() const noexcept { return E_; }

  AmplitudeReport operator()(const Matrix& g) {
    if (!g.is_square() || g.modulus() != E_.prime()) {
      throw error(errc::field_mismatch, "representation must be over the prime field of E");
    }
    const std::uint64_t n = E_.unit_order();
    const Matrix gn = power(g, n);
    if (!gn.is_identity()) {
      if (is_nilpotent(gn - Matrix::identity(g.rows(), g.modulus()))) {
        throw error(errc::not_semisimple, "element has order divisible by the characteristic");
      }
      throw error(errc::wrong_order, "element order does not divide |E^x|");
    }
    AmplitudeReport report;
    report.extension_degree = E_.degree();
    report.summands = cyclic_module_decompose(g, n);
    for (auto& s : report.summands) {
      const std::uint64_t m = summand_exponent(s.minimal_polynomial, s.degree);
      const auto ch = char_amplitude(E_.prime(), s.degree, m);
      s.exponent = m;
      s.digits = ch.digits;
      s.amplitude = ch.amplitude;
      report.overall = std::max(report.overall, s.amplitude);
    }
    return report;
  }

  /// Least m' over the roots beta of q (degree k) with beta = N(i(gamma))^{m'}.
  std::uint64_t summand_exponent(const Poly& q, unsigned k) {
    const std::uint32_t p = E_.prime();
    const unsigned d = E_.degree();
    const unsigned D = std::lcm(d, k);
    const ExtField& L = common_field(D);
    const std::uint64_t NL = L.unit_order();
    const std::uint64_t NE = E_.unit_order();
    const std::uint64_t Nk = checked_pow(p, k) - 1;

    // i(gamma): identity embedding when L is E itself, otherwise via the
    // least root of E's modulus in L.
    std::uint64_t igamma;
    if (D == d) {
      igamma = E_.generator_index();
    } else {
      const auto r = L.roots(E_.modulus());
      if (r.empty()) invariant_violation("E does not embed in the common field");
      Poly gpoly = E_.generator().coefficients;
      poly::trim(gpoly);
      igamma = L.eval_index(gpoly, r.front());
    }
    const std::uint64_t t = L.dlog_index(igamma);
    const std::uint64_t qE = NL / NE;  // t = qE * c with gcd(c, NE) = 1
    if (t % qE != 0) invariant_violation("embedded generator has the wrong order");
    const std::uint64_t c_inv = detail::mod_inverse(t / qE, NE);

    const auto roots = L.roots(q);
    if (roots.empty()) invariant_violation("summand polynomial has no root in the common field");
    std::uint64_t best = UINT64_MAX;
    for (auto beta : roots) {
      const std::uint64_t a = L.dlog_index(beta);
      if (a % qE != 0) {
        throw error(errc::wrong_order, "eigenvalue is not in the image of E^x");
      }
      const std::uint64_t m_full = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(a / qE) * c_inv % NE);
      const std::uint64_t qk = NE / Nk;
      if (NE % Nk != 0 || m_full % qk != 0) invariant_violation("summand field does not sit in E");
      best = std::min(best, m_full / qk);
    }
    return best;
  }

 private:
  const ExtField& common_field(unsigned D) {
    if (D == E_.degree()) return E_;
    auto it = fields_.find(D);
    if (it == fields_.end()) {
      it = fields_.emplace(D, std::make_unique<ExtField>(E_.prime(), D)).first;
    }
    return *it->second;
  }

  const ExtField& E_;
  std::map<unsigned, std::unique_ptr<ExtField>> fields_;
};

/// Amplitude of the representation of E^x sending the generator to g.
inline AmplitudeReport rep_amplitude(const Matrix& g, const ExtField& E) {
  AmplitudeCalculator calc(E);
  return calc(g);
}

}  // namespace hallgrp
