#pragma once

// Text reports for the command-line tool. Every report starts with the
// format line, the tool version and the SHA-256 of the canonical
// (re-serialised) instance, so identical instances give identical reports.

#include <openssl/evp.h>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "hallgrp/amplitude.hpp"
#include "hallgrp/error.hpp"
#include "hallgrp/group.hpp"
#include "hallgrp/hall.hpp"
#include "hallgrp/instance.hpp"
#include "hallgrp/symplectic.hpp"
#include "hallgrp/version.hpp"

namespace hallgrp {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw error(errc::invalid_argument, "SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace detail {

inline std::string report_header(const Instance& inst) {
  return std::string("format: 1\ntool: hallgrp ") + version + "\ninput-sha256: " + sha256_hex(serialize(inst)) +
         "\nprime: " + std::to_string(inst.prime) + "\ndim: " + std::to_string(inst.dim) + "\n";
}

inline std::string bracketed(const Vector& v) { return "[" + to_string(v) + "]"; }

inline std::string amplitude_lines(const AmplitudeReport& rep) {
  std::string out = "amplitude: " + std::to_string(rep.overall) + "\n";
  for (std::size_t i = 0; i < rep.summands.size(); ++i) {
    const auto& s = rep.summands[i];
    out += "summand " + std::to_string(i + 1) + ": degree " + std::to_string(s.degree) + " exponent " +
           std::to_string(s.exponent.value_or(0)) + " digits";
    for (auto d : s.digits) out += " " + std::to_string(d);
    out += " amplitude " + std::to_string(s.amplitude) + "\n";
  }
  return out;
}

}  // namespace detail

/// Amplitude section for an instance with amplitude data. Errors propagate.
inline std::string amplitude_section(const Instance& inst) {
  if (!inst.amplitude_degree || !inst.amplitude_image) {
    throw error(errc::invalid_argument, "instance has no amplitude section");
  }
  const ExtField E(inst.prime, *inst.amplitude_degree);
  return "amplitude-degree: " + std::to_string(*inst.amplitude_degree) + "\n" +
         detail::amplitude_lines(rep_amplitude(*inst.amplitude_image, E));
}

inline std::string amplitude_report(const Instance& inst) {
  return detail::report_header(inst) + amplitude_section(inst);
}

inline std::string classify_report(const Instance& inst, std::size_t cap = ElementTable::default_cap) {
  std::string out = detail::report_header(inst);
  out += "generators: " + std::to_string(inst.generators.size()) + "\n";
  const SymplecticSpace S = inst.space();
  std::optional<ElementTable> M;
  try {
    M = closure(inst.generators, S, cap);
  } catch (const cap_exceeded& e) {
    out += "order: cap-exceeded (cap " + std::to_string(e.cap()) + ", reached " + std::to_string(e.partial()) + ")\n";
    out += "verdict: " + to_string(Verdict{NotApplicable{NotApplicableReason::cap_exceeded}}) + "\n";
    return out;
  }
  out += "order: " + std::to_string(M->size()) + "\n";
  const Classification c = classify_monodromy(*M, S);
  out += "transvections: " + std::to_string(c.decomposition ? c.transvection_count
                                                              : transvections_in(*M, S).size()) + "\n";
  out += "verdict: " + to_string(c.verdict) + "\n";
  if (c.decomposition) {
    const HallDecomposition& D = *c.decomposition;
    out += "blocks: " + std::to_string(D.block_count()) + "\n";
    out += "block-dim: " + std::to_string(D.block_dim()) + "\n";
    out += "stabilizer-order: " + std::to_string(D.H.size()) + "\n";
    out += "transvection-subgroup-order: " + std::to_string(D.R.size()) + "\n";
    for (std::size_t i = 0; i < D.blocks.size(); ++i) {
      out += "block " + std::to_string(i + 1) + ":";
      for (const auto& v : D.blocks[i].basis()) out += " " + detail::bracketed(v);
      out += "\n";
    }
    const BlockLocator locate(D.blocks);
    for (std::size_t i = 0; i < inst.generators.size(); ++i) {
      out += "phi " + std::to_string(i + 1) + ": " + cycle_notation(locate(inst.generators[i])) + "\n";
    }
  }
  if (inst.amplitude_degree) {
    try {
      out += amplitude_section(inst);
      if (c.decomposition && M->contains(*inst.amplitude_image)) {
        out += "amplitude-phi: " + cycle_notation(phi_image(*inst.amplitude_image, *c.decomposition)) + "\n";
      }
    } catch (const error& e) {
      if (e.code() == errc::internal_invariant_violation) throw;
      out += std::string("amplitude-error: ") + to_string(e.code()) + "\n";
    }
  }
  return out;
}

inline std::string toric_report(const Instance& inst) {
  std::string out = detail::report_header(inst);
  const SymplecticSpace S = inst.space();
  for (std::size_t i = 0; i < inst.generators.size(); ++i) {
    const Matrix& g = inst.generators[i];
    out += "generator " + std::to_string(i + 1) + ": drop " + std::to_string(drop_and_eig(g).drop);
    try {
      out += " toric " + std::to_string(toric_dimension(g, S)) + " semistable-unipotent yes\n";
    } catch (const error& e) {
      if (e.code() != errc::not_semistable_unipotent) throw;
      out += " toric - semistable-unipotent no\n";
    }
  }
  return out;
}

/// Closed form, and the enumerated order when it fits under the cap. A
/// disagreement is an invariant violation.
inline std::string sp_order_report(std::size_t dim, std::uint32_t p, std::size_t cap) {
  const auto S = SymplecticSpace::standard(dim, p);
  const std::uint64_t formula = sp_order(dim, p);
  std::string out = "format: 1\ntool: hallgrp " + std::string(version) + "\ndim: " + std::to_string(dim) +
                    "\nprime: " + std::to_string(p) + "\nformula: " + std::to_string(formula) + "\n";
  if (formula > cap) return out + "enumerated: skipped (cap " + std::to_string(cap) + ")\n";
  const std::size_t enumerated = closure(sp_generators(S), S, cap).size();
  if (enumerated != formula) invariant_violation("enumerated order differs from the closed form");
  return out + "enumerated: " + std::to_string(enumerated) + "\nmatch: yes\n";
}

}  // namespace hallgrp
