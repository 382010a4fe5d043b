#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hallgrp {

enum class errc {
  division_by_zero,
  field_mismatch,
  not_prime,
  invalid_argument,
  dlog_of_zero,
  odd_dimension,
  dimension_mismatch,
  singular_matrix,
  degenerate_form,
  not_a_similitude,
  degenerate_transvection,
  not_semistable_unipotent,
  cap_exceeded,
  scale_exceeded,
  not_semisimple,
  wrong_order,
  exponent_out_of_range,
  no_transvection,
  not_simple_module,
  not_block_respecting,
  internal_invariant_violation,
  parse_error,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::not_prime: return "NotPrime";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::dlog_of_zero: return "DlogOfZero";
    case errc::odd_dimension: return "OddDimension";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::degenerate_form: return "DegenerateForm";
    case errc::not_a_similitude: return "NotASimilitude";
    case errc::degenerate_transvection: return "DegenerateTransvection";
    case errc::not_semistable_unipotent: return "NotSemistableUnipotent";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::scale_exceeded: return "ScaleExceeded";
    case errc::not_semisimple: return "NotSemisimple";
    case errc::wrong_order: return "WrongOrder";
    case errc::exponent_out_of_range: return "ExponentOutOfRange";
    case errc::no_transvection: return "NoTransvection";
    case errc::not_simple_module: return "NotSimpleModule";
    case errc::not_block_respecting: return "NotBlockRespecting";
    case errc::internal_invariant_violation: return "InternalInvariantViolation";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Raised when an enumeration outgrows its element cap; `partial()` is the
/// number of elements held when the cap was hit.
class cap_exceeded : public error {
 public:
  cap_exceeded(std::size_t cap, std::size_t partial)
      : error(errc::cap_exceeded,
              "element cap " + std::to_string(cap) + " reached with " + std::to_string(partial) +
                  " elements"),
        cap_(cap),
        partial_(partial) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t cap_;
  std::size_t partial_;
};

[[noreturn]] inline void invariant_violation(const std::string& what) {
  throw error(errc::internal_invariant_violation, what);
}

}  // namespace hallgrp
