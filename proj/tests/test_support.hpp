#pragma once

#include <random>
#include <string_view>

#include "apoly/laurent_poly.hpp"
#include "apoly/render.hpp"

namespace apoly::test {

inline LaurentPoly P(std::string_view s) { return parse_poly(s); }

// Exponents in [-5, 5], coefficients in [-9, 9]; terms may merge or cancel.
inline LaurentPoly random_poly(std::mt19937_64& rng, int max_terms, int min_terms = 0) {
  std::uniform_int_distribution<int> n(min_terms, max_terms), e(-5, 5), c(-9, 9);
  std::vector<Term> ts;
  for (int k = n(rng); k > 0; --k) ts.push_back({e(rng), e(rng), Integer(c(rng))});
  return LaurentPoly::from_terms(std::move(ts));
}

// A-polynomial of K3_1 in the standard basis.
inline constexpr std::string_view k31_text =
    "L^6 - L^5*M^20 + 2*L^5*M^18 - L^5*M^16 - L^4*M^38 - 2*L^4*M^36 + 2*L^2*M^74 + L^2*M^72 + L*M^94 "
    "- 2*L*M^92 + L*M^90 - M^110";

}  // namespace apoly::test
