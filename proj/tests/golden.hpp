#pragma once

// Expected equation systems for slopes 1/n and -1/n, written out from the
// closed-form pattern rather than from a walk.

#include <string>
#include <vector>

#include "apoly/ptolemy.hpp"

namespace apoly::test {

inline Slope sl(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }

inline std::string g(std::int64_t p, std::int64_t q) { return "g(" + sl(p, q).str() + ")"; }

// Product of two gammas with factors in canonical order.
inline std::string prod(Slope a, Slope b) {
  if (b < a) std::swap(a, b);
  return "g(" + a.str() + ")*g(" + b.str() + ")";
}

inline std::string lst(Slope o, Slope h, Slope p, Slope f) {
  return prod(o, h) + " + g(" + p.str() + ")^2 - g(" + f.str() + ")^2 = 0";
}

inline std::string fold(Slope a, Slope b) {
  if (b < a) std::swap(a, b);
  return "g(" + a.str() + ") = g(" + b.str() + ")";
}

// First three tetrahedra of the layered solid torus, common to all 1/n and -1/n.
inline std::vector<std::string> first_three() {
  return {lst(sl(4, 1), sl(2, 1), sl(3, 1), sl(1, 0)), lst(sl(3, 1), sl(1, 1), sl(1, 0), sl(2, 1)),
          lst(sl(2, 1), sl(0, 1), sl(1, 0), sl(1, 1))};
}

inline const std::vector<std::string>& outside_golden() {
  static const std::vector<std::string> v{
      "L^-1*M*g(1/0)*g(4/1) - L^-1*M^2*g(4/1)*g(3/1) - g(3/1)^2 = 0",
      "-L^-1*M^2*g(3/1)^2 + M*g(1/0)*g(4/1) - g(3/1)*g(4/1) = 0"};
  return v;
}

/// Inside equations then the folding equation, for 1/n (n >= 2) or -1/n (n >= 2).
inline std::vector<std::string> inside_golden(int sign, int n) {
  auto expect = first_three();
  if (sign > 0) {
    if (n >= 3) expect.push_back(lst(sl(1, 0), sl(1, 2), sl(1, 1), sl(0, 1)));
    for (int k = 4; k <= n; ++k)
      expect.push_back(prod(sl(1, k - 1), sl(1, k - 3)) + " + g(0/1)^2 - " + g(1, k - 2) + "^2 = 0");
    expect.push_back(fold(sl(0, 1), n >= 3 ? sl(1, n - 1) : sl(1, 1)));
  } else {
    expect.push_back(prod(sl(1, 1), sl(-1, 1)) + " + g(1/0)^2 - g(0/1)^2 = 0");
    for (int k = 3; k <= n; ++k)
      expect.push_back(prod(sl(-1, k - 1), sl(-1, k - 3)) + " + g(0/1)^2 - " + g(-1, k - 2) + "^2 = 0");
    expect.push_back(fold(sl(0, 1), sl(-1, n - 1)));
  }
  return expect;
}

/// The generated system in the same canonical strings.
inline std::pair<std::vector<std::string>, std::vector<std::string>> rendered_system(const EquationSystem& sys) {
  std::vector<std::string> out, in;
  for (const auto& e : sys.outside) out.push_back(render(e));
  for (const auto& e : sys.inside) in.push_back(render(e, Style::sl_plain, true));
  in.push_back(render(sys.fold, Style::sl_plain, true));
  return {out, in};
}

}  // namespace apoly::test
