#pragma once

// Text and JSON forms of LaurentPoly.
//
// SL styles print L, M directly. PSL styles print the same data in l = L^2,
// m = M^2, halving every exponent: odd exponents become l^(k/2), and the
// exponent 1/2 prints as a square root.

#include <json.hpp>

#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "apoly/laurent_poly.hpp"
#include "apoly/rat_fun.hpp"

namespace apoly {

enum class Style { sl_plain, sl_latex, psl_plain, psl_latex, json };

namespace detail {

inline bool is_latex(Style s) { return s == Style::sl_latex || s == Style::psl_latex; }
inline bool is_psl(Style s) { return s == Style::psl_plain || s == Style::psl_latex; }

// Exponent given in half-units when `halve` is set.
inline std::string power(std::string_view var, std::int64_t e, bool halve, bool latex) {
  const std::string v(var);
  if (e == 0) return {};
  if (halve && e % 2 != 0) {
    if (e == 1) return latex ? "\\sqrt{" + v + "}" : "sqrt(" + v + ")";
    const std::string frac = std::to_string(e) + "/2";
    return latex ? v + "^{" + frac + "}" : v + "^(" + frac + ")";
  }
  const std::int64_t k = halve ? e / 2 : e;
  if (k == 1) return v;
  const std::string ks = std::to_string(k);
  if (latex) return ks.size() == 1 ? v + "^" + ks : v + "^{" + ks + "}";
  return v + "^" + ks;
}

}  // namespace detail

/// Monomial factor string (no coefficient), e.g. "L^5*M^18"; empty for 1.
inline std::string render_monomial(std::int64_t l, std::int64_t m, Style style) {
  const bool latex = detail::is_latex(style);
  const bool psl = detail::is_psl(style);
  const std::string lv = psl ? (latex ? "\\ell" : "l") : "L";
  const std::string mv = psl ? "m" : "M";
  const std::string a = detail::power(lv, l, psl, latex);
  const std::string b = detail::power(mv, m, psl, latex);
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + (latex ? " " : "*") + b;
}

inline nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) terms.push_back({{"L", t.l}, {"M", t.m}, {"c", t.c.get_str()}});
  return {{"vars", {"L", "M"}}, {"terms", std::move(terms)}};
}

/// Parses the polynomial schema; rejects duplicate exponent pairs and zero coefficients.
inline LaurentPoly poly_from_json(const nlohmann::json& j) {
  try {
    if (j.at("vars") != nlohmann::json::array({"L", "M"}))
      throw error(errc::parse_error, "polynomial vars must be [\"L\",\"M\"]");
    std::vector<Term> ts;
    std::set<std::pair<Exponent, Exponent>> seen;
    for (const auto& t : j.at("terms")) {
      const auto l = detail::checked_exp(t.at("L").get<std::int64_t>());
      const auto m = detail::checked_exp(t.at("M").get<std::int64_t>());
      Integer c;
      if (c.set_str(t.at("c").get<std::string>(), 10) != 0)
        throw error(errc::parse_error, "bad coefficient string");
      if (sgn(c) == 0) throw error(errc::parse_error, "zero coefficient in polynomial");
      if (!seen.emplace(l, m).second) throw error(errc::parse_error, "duplicate exponent pair in polynomial");
      ts.push_back({l, m, std::move(c)});
    }
    return LaurentPoly::from_terms(std::move(ts));
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

inline nlohmann::json to_json(const RatFun& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline RatFun ratfun_from_json(const nlohmann::json& j) {
  try {
    return RatFun::make(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

/// Parses the sl_plain grammar: sums of terms like "2*L^5*M^-3", "-L", "7".
inline LaurentPoly parse_poly(std::string_view text) {
  std::vector<Term> ts;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  const auto fail = [&](const char* why) {
    throw error(errc::parse_error, std::string(why) + " at offset " + std::to_string(i) + " in \"" +
                                       std::string(text) + "\"");
  };
  const auto read_int = [&]() -> std::string {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start || (i == start + 1 && (text[start] == '-' || text[start] == '+'))) fail("expected integer");
    return std::string(text.substr(start, i - start));
  };
  skip();
  if (text.substr(i) == "0") return {};
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) {
      if (first) fail("empty polynomial");
      break;
    }
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Term t{0, 0, Integer(sign)};
    bool any = false;
    while (true) {
      skip();
      if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        t.c *= Integer(read_int());
      } else if (i < text.size() && (text[i] == 'L' || text[i] == 'M')) {
        const char v = text[i++];
        std::int64_t e = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          e = std::stoll(read_int());
        }
        (v == 'L' ? t.l : t.m) = detail::add_exp(v == 'L' ? t.l : t.m, detail::checked_exp(e));
      } else {
        fail("expected factor");
      }
      any = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    ts.push_back(std::move(t));
  }
  return LaurentPoly::from_terms(std::move(ts));
}

/// Deterministic rendering in the canonical term order.
inline std::string render(const LaurentPoly& p, Style style = Style::sl_plain) {
  if (style == Style::json) return to_json(p).dump();
  if (p.is_zero()) return "0";
  const bool latex = detail::is_latex(style);
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = sgn(t.c) < 0;
    const Integer mag = abs(t.c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const std::string mono = render_monomial(t.l, t.m, style);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + (latex ? " " : "*") + mono;
    }
  }
  return out;
}

inline std::string render(const RatFun& f, Style style = Style::sl_plain) {
  if (style == Style::json) return to_json(f).dump();
  const LaurentPoly& n = f.num();
  if (f.den() == LaurentPoly(1) && (n.is_zero() || (n.min_l() >= 0 && n.min_m() >= 0))) return render(n, style);
  // Negative powers in the numerator display as a monomial in the denominator.
  const std::int64_t sl = n.is_zero() ? 0 : std::min<std::int64_t>(0, n.min_l());
  const std::int64_t sm = n.is_zero() ? 0 : std::min<std::int64_t>(0, n.min_m());
  const LaurentPoly top = n.times_monomial(1, detail::checked_exp(-sl), detail::checked_exp(-sm));
  const std::string mono = render_monomial(-sl, -sm, style);
  const bool latex = detail::is_latex(style);
  std::string bottom;
  if (f.den() == LaurentPoly(1)) {
    bottom = mono;
  } else if (mono.empty()) {
    bottom = render(f.den(), style);
  } else {
    bottom = mono + (latex ? " " : "*") + "(" + render(f.den(), style) + ")";
  }
  if (latex) return "\\frac{" + render(top, style) + "}{" + bottom + "}";
  return "(" + render(top, style) + ")/(" + bottom + ")";
}

}  // namespace apoly
