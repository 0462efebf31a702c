#pragma once

// Polynomial GCD over Z[L, M] (and hence over the Laurent ring, where
// monomials are units).
//
// Two algorithms sit behind `poly_gcd`:
//   * primitive pseudo-remainder sequences on the recursive representation
//     Z[M][L] (`gcd_prs`), the reference algorithm;
//   * the heuristic evaluation GCD of Char, Geddes and Gonnet (`gcd_heuristic`),
//     which maps to integer GCDs through large evaluation points and verifies
//     the interpolated candidate by exact division.
// The heuristic is tried first; PRS is the fallback when it gives up.

#include <gmpxx.h>

#include <optional>
#include <tuple>
#include <utility>

#include "apoly/dense.hpp"
#include "apoly/laurent_poly.hpp"

namespace apoly {

namespace detail {

inline constexpr int heuristic_attempts = 6;

/// Symmetric x-adic expansion of an integer into a univariate polynomial.
inline dense::Uni x_adic(mpz_class h, const mpz_class& x) {
  dense::Uni r;
  const mpz_class half = x / 2;
  while (sgn(h) != 0) {
    mpz_class g;
    mpz_fdiv_r(g.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    if (g > half) g -= x;
    r.push_back(g);
    h -= g;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
  }
  return r;
}

inline mpz_class next_point(const mpz_class& x) {
  mpz_class r = sqrt(sqrt(x));
  r *= x;
  r *= 73794;
  r /= 27011;
  return r;
}

inline mpz_class initial_point(const mpz_class& fn, const mpz_class& gn, const mpz_class& flc,
                               const mpz_class& glc, int extra) {
  const mpz_class b = 2 * (fn < gn ? fn : gn) + 29;
  mpz_class s = 99 * sqrt(b);
  mpz_class x = b < s ? b : s;
  mpz_class fq = fn / abs(flc), gq = gn / abs(glc);
  mpz_class alt = 2 * (fq < gq ? fq : gq) + extra;
  return x > alt ? x : alt;
}

struct UniGcd {
  dense::Uni h, cf, cg;
};

inline std::optional<UniGcd> heuristic_uni(const dense::Uni& f0, const dense::Uni& g0) {
  using namespace dense;
  if (f0.empty() || g0.empty()) return std::nullopt;
  mpz_class c;
  mpz_class cf = content(f0), cg = content(g0);
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  Uni f = divexact_scalar(f0, c), g = divexact_scalar(g0, c);
  if (degree(f) == 0 || degree(g) == 0) return UniGcd{{c}, f, g};
  const mpz_class fn = max_norm(f), gn = max_norm(g);
  mpz_class x = initial_point(fn, gn, f.back(), g.back(), 2);
  for (int attempt = 0; attempt < heuristic_attempts; ++attempt, x = next_point(x)) {
    const mpz_class ff = eval(f, x), gg = eval(g, x);
    if (sgn(ff) == 0 || sgn(gg) == 0) continue;
    mpz_class h;
    mpz_gcd(h.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
    Uni hp = primitive(x_adic(h, x));
    if (auto qf = exact_div(f, hp)) {
      if (auto qg = exact_div(g, hp)) return UniGcd{scale(hp, c), std::move(*qf), std::move(*qg)};
    }
    Uni cff = x_adic(ff / h, x);
    if (!cff.empty()) {
      if (auto hh = exact_div(f, cff)) {
        if (auto qg = exact_div(g, *hh)) {
          if (!hh->empty() && sgn(hh->back()) < 0) {
            *hh = scale(*hh, -1);
            cff = scale(cff, -1);
            *qg = scale(*qg, -1);
          }
          return UniGcd{scale(*hh, c), std::move(cff), std::move(*qg)};
        }
      }
    }
    Uni cfg = x_adic(gg / h, x);
    if (!cfg.empty()) {
      if (auto hh = exact_div(g, cfg)) {
        if (auto qf = exact_div(f, *hh)) {
          if (!hh->empty() && sgn(hh->back()) < 0) {
            *hh = scale(*hh, -1);
            cfg = scale(cfg, -1);
            *qf = scale(*qf, -1);
          }
          return UniGcd{scale(*hh, c), std::move(*qf), std::move(cfg)};
        }
      }
    }
  }
  return std::nullopt;
}

inline dense::Uni prs_uni(dense::Uni a, dense::Uni b) {
  using namespace dense;
  if (a.empty()) return scale(primitive(b), content(b));
  if (b.empty()) return scale(primitive(a), content(a));
  mpz_class c;
  mpz_class ca = content(a), cb = content(b);
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = primitive(a);
  b = primitive(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    Uni r = prem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  return scale(primitive(a), c);
}

/// gcd in Z[M] with positive leading coefficient.
inline dense::Uni gcd_uni(const dense::Uni& a, const dense::Uni& b) {
  if (a.empty()) return dense::scale(dense::primitive(b), dense::content(b));
  if (b.empty()) return dense::scale(dense::primitive(a), dense::content(a));
  if (auto h = heuristic_uni(a, b)) return std::move(h->h);
  return prs_uni(a, b);
}

// ---- bivariate, as polynomials in L over Z[M] ----

inline dense::Uni content_m(const dense::Bi& a) {
  dense::Uni g;
  for (const auto& c : a) {
    if (c.empty()) continue;
    g = g.empty() ? dense::scale(dense::primitive(c), dense::content(c)) : gcd_uni(g, c);
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

inline dense::Bi div_content_m(const dense::Bi& a, const dense::Uni& c) {
  dense::Bi r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    r[i] = *dense::exact_div(a[i], c);
  }
  return r;
}

inline dense::Bi primitive_l(const dense::Bi& a) {
  if (a.empty()) return a;
  dense::Uni c = content_m(a);
  if (sgn(a.back().back()) < 0) c = dense::scale(c, -1);
  return div_content_m(a, c);
}

inline dense::Bi scale_m(const dense::Bi& a, const dense::Uni& c) {
  dense::Bi r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dense::mul(a[i], c);
  dense::trim(r);
  return r;
}

inline dense::Bi prem_l(const dense::Bi& a, const dense::Bi& b) {
  using namespace dense;
  Bi r(a);
  const int db = degree(b);
  int dr = degree(r);
  if (dr < db) return r;
  int e = dr - db + 1;
  const Uni& lb = b.back();
  while (!r.empty() && (dr = degree(r)) >= db) {
    const Uni lr = r.back();
    for (auto& c : r) c = mul(c, lb);
    const auto shift = static_cast<std::size_t>(dr - db);
    for (std::size_t j = 0; j < b.size(); ++j) r[j + shift] = sub(r[j + shift], mul(lr, b[j]));
    trim(r);
    --e;
  }
  if (e > 0) {
    Uni f{1};
    for (int i = 0; i < e; ++i) f = mul(f, lb);
    r = scale_m(r, f);
  }
  return r;
}

inline std::optional<dense::Bi> heuristic_bi(const dense::Bi& f0, const dense::Bi& g0) {
  using namespace dense;
  if (f0.empty() || g0.empty()) return std::nullopt;
  mpz_class c;
  mpz_class cf = content(f0), cg = content(g0);
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  const Bi f = divexact_scalar(f0, c), g = divexact_scalar(g0, c);
  const mpz_class fn = max_norm(f), gn = max_norm(g);
  mpz_class x = initial_point(fn, gn, ground_lc(f), ground_lc(g), 4);
  const auto lift = [&](const Uni& u) {
    Bi r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = x_adic(u[i], x);
    trim(r);
    return r;
  };
  const auto fix_sign = [](Bi& h) {
    if (!h.empty() && sgn(ground_lc(h)) < 0) h = scale(h, -1);
  };
  for (int attempt = 0; attempt < heuristic_attempts; ++attempt, x = next_point(x)) {
    const Uni ff = eval_inner(f, x), gg = eval_inner(g, x);
    if (ff.empty() || gg.empty()) continue;
    auto hu = heuristic_uni(ff, gg);
    if (!hu) continue;
    Bi h = lift(hu->h);
    if (!h.empty()) {
      h = divexact_scalar(h, content(h));
      fix_sign(h);
      if (exact_div(f, h) && exact_div(g, h)) return scale(h, c);
    }
    Bi cff = lift(hu->cf);
    if (!cff.empty()) {
      if (auto hh = exact_div(f, cff)) {
        if (exact_div(g, *hh)) {
          fix_sign(*hh);
          return scale(*hh, c);
        }
      }
    }
    Bi cfg = lift(hu->cg);
    if (!cfg.empty()) {
      if (auto hh = exact_div(g, cfg)) {
        if (exact_div(f, *hh)) {
          fix_sign(*hh);
          return scale(*hh, c);
        }
      }
    }
  }
  return std::nullopt;
}

inline dense::Bi prs_bi(dense::Bi a, dense::Bi b) {
  using namespace dense;
  const Uni ca = content_m(a), cb = content_m(b);
  const Uni c = ca.empty() ? cb : (cb.empty() ? ca : gcd_uni(ca, cb));
  if (a.empty() || b.empty()) {
    Bi r = a.empty() ? b : a;
    return r.empty() ? r : scale_m(primitive_l(r), c);
  }
  a = primitive_l(a);
  b = primitive_l(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    if (degree(b) == 0) {
      a = Bi{Uni{1}};
      break;
    }
    Bi r = prem_l(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_l(r);
  }
  return scale_m(primitive_l(a), c);
}

enum class GcdMethod { automatic, heuristic_only, prs_only };

inline LaurentPoly gcd_impl(const LaurentPoly& p, const LaurentPoly& q, GcdMethod method) {
  if (p.is_zero() && q.is_zero()) return {};
  if (p.is_zero()) return monomial_clear(q);
  if (q.is_zero()) return monomial_clear(p);
  const LaurentPoly p0 = shift_to_origin(p), q0 = shift_to_origin(q);
  if (p0.is_constant() || q0.is_constant()) {
    mpz_class a = content(p0), b = content(q0), g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return LaurentPoly(g);
  }
  const dense::Bi a = p0.to_dense(0, 0), b = q0.to_dense(0, 0);
  std::optional<dense::Bi> g;
  if (method != GcdMethod::prs_only) g = heuristic_bi(a, b);
  if (!g) {
    if (method == GcdMethod::heuristic_only)
      throw error(errc::verification_failed, "heuristic gcd gave up");
    g = prs_bi(a, b);
  }
  return monomial_clear(LaurentPoly::from_dense(*g));
}

}  // namespace detail

/// Normalized gcd: monomial-free, positive leading coefficient, integer
/// content equal to the gcd of the contents. gcd(p, 0) is p normalized.
inline LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q) {
  return detail::gcd_impl(p, q, detail::GcdMethod::automatic);
}

/// Reference algorithm only (primitive PRS); used to cross-check the fast path.
inline LaurentPoly gcd_prs(const LaurentPoly& p, const LaurentPoly& q) {
  return detail::gcd_impl(p, q, detail::GcdMethod::prs_only);
}

/// Heuristic only; throws if the heuristic gives up.
inline LaurentPoly gcd_heuristic(const LaurentPoly& p, const LaurentPoly& q) {
  return detail::gcd_impl(p, q, detail::GcdMethod::heuristic_only);
}

}  // namespace apoly
