#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apoly {

enum class errc {
  not_divisible,
  division_by_zero,
  zero_polynomial,
  pole_at_zero,
  exponent_overflow,
  parse_error,
  zero_slope,
  not_neighbors,
  degenerate_lst,
  initial_vertex,
  shape_mismatch,
  index_out_of_range,
  degenerate_walk,
  verification_failed,
  zero_old_gamma,
  excluded_slope,
  basis_unavailable,
  both_constant,
  elimination_collapse,
  time_limit,
};

constexpr std::string_view to_string(errc e) noexcept {
  switch (e) {
    case errc::not_divisible: return "NotDivisible";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::pole_at_zero: return "PoleAtZero";
    case errc::exponent_overflow: return "ExponentOverflow";
    case errc::parse_error: return "ParseError";
    case errc::zero_slope: return "ZeroSlope";
    case errc::not_neighbors: return "NotNeighbors";
    case errc::degenerate_lst: return "DegenerateLST";
    case errc::initial_vertex: return "InitialVertex";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::degenerate_walk: return "DegenerateWalk";
    case errc::verification_failed: return "VerificationFailed";
    case errc::zero_old_gamma: return "ZeroOldGamma";
    case errc::excluded_slope: return "ExcludedSlope";
    case errc::basis_unavailable: return "BasisUnavailable";
    case errc::both_constant: return "BothConstant";
    case errc::elimination_collapse: return "EliminationCollapse";
    case errc::time_limit: return "TimeLimit";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace apoly
