#pragma once

// Line-oriented instance files.
//
//   format: 1
//   prime: 5
//   dim: 4
//   gram:                 (optional; standard form when absent)
//   <dim rows>
//   generator:            (repeated)
//   <dim rows>
//   amplitude-degree: 2   (optional, together with amplitude-image)
//   amplitude-image:
//   <dim rows>
//
// Rows are space-separated residues in [0, prime). Blank lines and text after
// '#' are ignored.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/group.hpp"
#include "hallgrp/linalg.hpp"
#include "hallgrp/symplectic.hpp"

namespace hallgrp {

struct Instance {
  std::uint32_t prime = 0;
  std::size_t dim = 0;
  std::optional<Matrix> gram;
  std::vector<Matrix> generators;
  std::optional<unsigned> amplitude_degree;
  std::optional<Matrix> amplitude_image;

  SymplecticSpace space() const {
    return gram ? SymplecticSpace(*gram) : SymplecticSpace::standard(dim, prime);
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw error(errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline std::string_view strip(std::string_view s) {
  if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  if (tok.empty() || tok.size() > 12) parse_fail(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') parse_fail(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string_view body;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    ++number;
    if (auto s = detail::strip(raw); !s.empty()) lines.push_back({number, s});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }

  Instance inst;
  std::size_t pos = 0;
  auto key_value = [&](const Line& l, std::string_view& key, std::string_view& value) {
    const auto colon = l.body.find(':');
    if (colon == std::string_view::npos) detail::parse_fail(l.number, "expected 'key:'");
    key = detail::strip(l.body.substr(0, colon));
    value = detail::strip(l.body.substr(colon + 1));
  };
  auto read_matrix = [&](std::size_t header_line) {
    if (inst.dim == 0 || inst.prime == 0) detail::parse_fail(header_line, "matrix before prime and dim");
    Matrix m(inst.dim, inst.dim, inst.prime);
    for (std::size_t r = 0; r < inst.dim; ++r) {
      if (pos >= lines.size()) detail::parse_fail(header_line, "matrix has fewer than dim rows");
      const Line& l = lines[pos++];
      std::istringstream in{std::string(l.body)};
      std::string tok;
      std::size_t c = 0;
      while (in >> tok) {
        if (c == inst.dim) detail::parse_fail(l.number, "row has more than dim entries");
        const auto v = detail::parse_uint(tok, l.number);
        if (v >= inst.prime) detail::parse_fail(l.number, "entry " + tok + " is not a residue mod prime");
        m(r, c++) = static_cast<residue>(v);
      }
      if (c != inst.dim) detail::parse_fail(l.number, "row has " + std::to_string(c) + " entries, expected dim");
    }
    return m;
  };

  std::string_view key, value;
  if (lines.empty()) detail::parse_fail(1, "empty instance");
  key_value(lines[pos], key, value);
  if (key != "format" || value != "1") detail::parse_fail(lines[pos].number, "expected 'format: 1'");
  ++pos;

  std::size_t amplitude_degree_line = 0;
  std::vector<std::size_t> generator_lines;
  std::size_t gram_line = 0;
  while (pos < lines.size()) {
    const Line& l = lines[pos++];
    key_value(l, key, value);
    auto scalar = [&] {
      if (value.empty()) detail::parse_fail(l.number, "'" + std::string(key) + "' needs a value");
      return detail::parse_uint(value, l.number);
    };
    auto bare = [&] {
      if (!value.empty()) detail::parse_fail(l.number, "'" + std::string(key) + ":' takes no value");
    };
    if (key == "prime") {
      if (inst.prime) detail::parse_fail(l.number, "duplicate prime");
      const auto p = scalar();
      try {
        require_odd_prime(p > UINT32_MAX ? 0 : static_cast<std::uint32_t>(p));
      } catch (const error& e) {
        detail::parse_fail(l.number, e.what());
      }
      inst.prime = static_cast<std::uint32_t>(p);
    } else if (key == "dim") {
      if (inst.dim) detail::parse_fail(l.number, "duplicate dim");
      const auto d = scalar();
      if (d == 0 || d % 2 != 0 || d > 64) detail::parse_fail(l.number, "dim must be even, between 2 and 64");
      inst.dim = static_cast<std::size_t>(d);
    } else if (key == "gram") {
      bare();
      if (inst.gram) detail::parse_fail(l.number, "duplicate gram");
      if (!inst.generators.empty()) detail::parse_fail(l.number, "gram must precede the generators");
      gram_line = l.number;
      inst.gram = read_matrix(l.number);
    } else if (key == "generator") {
      bare();
      generator_lines.push_back(l.number);
      inst.generators.push_back(read_matrix(l.number));
    } else if (key == "amplitude-degree") {
      if (inst.amplitude_degree) detail::parse_fail(l.number, "duplicate amplitude-degree");
      const auto d = scalar();
      if (d == 0 || d > 64) detail::parse_fail(l.number, "amplitude-degree must be between 1 and 64");
      amplitude_degree_line = l.number;
      inst.amplitude_degree = static_cast<unsigned>(d);
    } else if (key == "amplitude-image") {
      bare();
      if (inst.amplitude_image) detail::parse_fail(l.number, "duplicate amplitude-image");
      inst.amplitude_image = read_matrix(l.number);
    } else {
      detail::parse_fail(l.number, "unknown key '" + std::string(key) + "'");
    }
  }
  const std::size_t last = number;
  if (!inst.prime) detail::parse_fail(last, "missing prime");
  if (!inst.dim) detail::parse_fail(last, "missing dim");
  if (inst.amplitude_degree.has_value() != inst.amplitude_image.has_value()) {
    detail::parse_fail(amplitude_degree_line ? amplitude_degree_line : last,
                       "amplitude-degree and amplitude-image go together");
  }
  if (inst.gram) {
    try {
      (void)SymplecticSpace(*inst.gram);
    } catch (const error& e) {
      detail::parse_fail(gram_line, std::string("gram: ") + e.what());
    }
  }
  const SymplecticSpace S = inst.space();
  for (std::size_t i = 0; i < inst.generators.size(); ++i) {
    if (!try_inverse(inst.generators[i]) || !try_multiplier(inst.generators[i], S)) {
      detail::parse_fail(generator_lines[i], "generator is not a similitude of the form");
    }
  }
  return inst;
}

inline std::string serialize(const Instance& inst) {
  std::string out = "format: 1\nprime: " + std::to_string(inst.prime) + "\ndim: " + std::to_string(inst.dim) + "\n";
  auto matrix = [&](const char* key, const Matrix& m) {
    out += key;
    out += ":\n";
    for (std::size_t r = 0; r < m.rows(); ++r) out += to_string(m.row(r)) + "\n";
  };
  if (inst.gram) matrix("gram", *inst.gram);
  for (const auto& g : inst.generators) matrix("generator", g);
  if (inst.amplitude_degree) out += "amplitude-degree: " + std::to_string(*inst.amplitude_degree) + "\n";
  if (inst.amplitude_image) matrix("amplitude-image", *inst.amplitude_image);
  return out;
}

struct RandomInstanceParams {
  std::size_t blocks = 1;
  std::size_t block_dim = 2;
  std::uint32_t prime = 5;
  std::uint64_t seed = 0;
  bool swap = false;
  bool transvection = false;
  bool similitude = false;
};

namespace detail {

/// Index of coordinate c of block b in the standard basis of dimension s*k:
/// block b owns e-indices [b*h, (b+1)*h) and the matching f-indices.
inline std::size_t block_coordinate(std::size_t b, std::size_t c, std::size_t k, std::size_t s) {
  const std::size_t h = k / 2, g = s * h;
  return c < h ? b * h + c : g + b * h + (c - h);
}

inline Matrix embed_block(const Matrix& a, std::size_t b, std::size_t s) {
  const std::size_t k = a.rows(), n = s * k;
  Matrix m = Matrix::identity(n, a.modulus());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(block_coordinate(b, i, k, s), block_coordinate(b, j, k, s)) = a(i, j);
  return m;
}

}  // namespace detail

/// Generators of Sp(W)^s on the standard space of dimension s*k, block b
/// spanned by its e- and f-coordinates, optionally with the cyclic block
/// shift. The planted blocks are the coordinate blocks.
inline std::vector<Matrix> block_group_generators(std::size_t s, std::size_t k, std::uint32_t p, bool swap) {
  if (s == 0) throw error(errc::invalid_argument, "need at least one block");
  const auto Sk = SymplecticSpace::standard(k, p);
  const std::size_t n = s * k;
  std::vector<Matrix> gens;
  for (std::size_t b = 0; b < s; ++b)
    for (const auto& t : sp_generators(Sk)) gens.push_back(detail::embed_block(t, b, s));
  if (swap && s > 1) {
    Matrix shift(n, n, p);
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t c = 0; c < k; ++c)
        shift(detail::block_coordinate((b + 1) % s, c, k, s), detail::block_coordinate(b, c, k, s)) = 1;
    gens.push_back(std::move(shift));
  }
  return gens;
}

/// Planted block group, conjugated by a random symplectic word so the blocks
/// are not coordinate aligned. Deterministic in the seed (raw mt19937_64
/// output reduced modulo the range).
inline Instance gen_random(const RandomInstanceParams& prm) {
  require_odd_prime(prm.prime);
  if (prm.block_dim == 0 || prm.block_dim % 2 != 0) throw error(errc::odd_dimension, "block dimension must be even");
  if (prm.blocks == 0) throw error(errc::invalid_argument, "need at least one block");
  const std::uint32_t p = prm.prime;
  const std::size_t n = prm.blocks * prm.block_dim;
  if (n > ElementTable::max_dim) throw error(errc::scale_exceeded, "dimension too large");
  std::mt19937_64 rng(prm.seed);
  auto draw = [&](std::uint64_t range) { return rng() % range; };

  std::vector<Matrix> gens = block_group_generators(prm.blocks, prm.block_dim, p, prm.swap);
  const auto S = SymplecticSpace::standard(n, p);
  if (prm.transvection) {
    Vector u(n, 0);
    while (is_zero(u))
      for (std::size_t c = 0; c < prm.block_dim; ++c)
        u[detail::block_coordinate(0, c, prm.block_dim, prm.blocks)] = static_cast<residue>(draw(p));
    gens.push_back(make_transvection(u, static_cast<residue>(1 + draw(p - 1)), S));
  }
  if (prm.similitude) {
    const residue mu = static_cast<residue>(2 + draw(p - 2));
    std::vector<residue> diag(n, 1);
    for (std::size_t i = n / 2; i < n; ++i) diag[i] = mu;
    gens.push_back(Matrix::diagonal(diag, p));
  }

  const auto sp = sp_generators(S);
  Matrix c = Matrix::identity(n, p);
  for (std::size_t i = 0; i < 4 * n; ++i) c = c * sp[draw(sp.size())];
  const Matrix cinv = inverse(c);
  for (auto& g : gens) g = c * g * cinv;

  Instance inst;
  inst.prime = p;
  inst.dim = n;
  inst.generators = std::move(gens);
  return inst;
}

}  // namespace hallgrp
