#pragma once

// Published values the pipeline is checked against.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace apoly::reference {

// K3_1 (slope 1/1), standard basis.
inline constexpr std::string_view k31_sl2 =
    "L^6 - L^5*M^20 + 2*L^5*M^18 - L^5*M^16 - L^4*M^38 - 2*L^4*M^36 + 2*L^2*M^74 + L^2*M^72 + L*M^94 "
    "- 2*L*M^92 + L*M^90 - M^110";

// The same polynomial in l = L^2, m = M^2, as a LaTeX display.
inline constexpr std::string_view k31_psl_latex =
    "\\ell^3 - \\ell^{5/2} m^{10} + 2 \\ell^{5/2} m^9 - \\ell^{5/2} m^8 - \\ell^2 m^{19} - "
    "2 \\ell^2 m^{18} + 2 \\ell m^{37} + \\ell m^{36} + \\sqrt{\\ell} m^{47} - 2 \\sqrt{\\ell} m^{46} + "
    "\\sqrt{\\ell} m^{45} - m^{55}";

// K5_4 (slope 1/2), standard basis.
inline constexpr std::size_t k54_terms = 106;
inline constexpr std::int64_t k54_deg_m = 820;
inline constexpr std::int64_t k54_deg_l = 19;

}  // namespace apoly::reference
