#pragma once

// Dense univariate and bivariate integer polynomials. These are the working
// representation for GCDs and exact division; `LaurentPoly` converts to and
// from them after shifting out monomial factors.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace apoly::dense {

/// Coefficient of x^i at index i. The zero polynomial is empty; no trailing zeros.
using Uni = std::vector<mpz_class>;
/// Outer index is the L-degree, each entry a `Uni` in M.
using Bi = std::vector<Uni>;

inline void trim(Uni& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline void trim(Bi& a) {
  for (auto& c : a) trim(c);
  while (!a.empty() && a.back().empty()) a.pop_back();
}

inline int degree(const Uni& a) { return static_cast<int>(a.size()) - 1; }
inline int degree(const Bi& a) { return static_cast<int>(a.size()) - 1; }

inline Uni add(const Uni& a, const Uni& b) {
  Uni r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Uni sub(const Uni& a, const Uni& b) {
  Uni r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Uni mul(const Uni& a, const Uni& b) {
  if (a.empty() || b.empty()) return {};
  Uni r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}

inline Uni scale(const Uni& a, const mpz_class& c) {
  if (sgn(c) == 0) return {};
  Uni r(a);
  for (auto& x : r) x *= c;
  return r;
}

/// r -= c * x^shift * b
inline void submul_shift(Uni& r, const mpz_class& c, std::size_t shift, const Uni& b) {
  if (r.size() < b.size() + shift) r.resize(b.size() + shift);
  for (std::size_t j = 0; j < b.size(); ++j)
    mpz_submul(r[j + shift].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
}

/// Exact quotient a / b over Z, or nullopt if b does not divide a.
inline std::optional<Uni> exact_div(const Uni& a, const Uni& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return Uni{};
  if (a.size() < b.size()) return std::nullopt;
  Uni r(a);
  const std::size_t db = b.size() - 1;
  Uni q(a.size() - db);
  const mpz_class& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + db];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    const mpz_class c = q[k];
    submul_shift(r, c, k, b);
  }
  for (std::size_t i = 0; i < db && i < r.size(); ++i)
    if (sgn(r[i]) != 0) return std::nullopt;
  trim(q);
  return q;
}

inline mpz_class content(const Uni& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline Uni divexact_scalar(const Uni& a, const mpz_class& c) {
  Uni r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), c.get_mpz_t());
  return r;
}

/// Primitive part with positive leading coefficient.
inline Uni primitive(const Uni& a) {
  if (a.empty()) return {};
  mpz_class g = content(a);
  if (sgn(a.back()) < 0) g = -g;
  return divexact_scalar(a, g);
}

inline mpz_class eval(const Uni& a, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    r *= x;
    r += a[i];
  }
  return r;
}

inline mpz_class max_norm(const Uni& a) {
  mpz_class m = 0;
  for (const auto& c : a)
    if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
  return m;
}

/// Pseudo-remainder of a by b (b nonzero).
inline Uni prem(const Uni& a, const Uni& b) {
  Uni r(a);
  const int db = degree(b);
  int dr = degree(r);
  if (dr < db) return r;
  int e = dr - db + 1;
  const mpz_class& lb = b.back();
  while (!r.empty() && (dr = degree(r)) >= db) {
    const mpz_class lr = r.back();
    for (auto& x : r) x *= lb;
    submul_shift(r, lr, static_cast<std::size_t>(dr - db), b);
    trim(r);
    --e;
  }
  if (e > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& x : r) x *= f;
  }
  return r;
}

// ---- bivariate ----

inline Bi mul(const Bi& a, const Bi& b) {
  if (a.empty() || b.empty()) return {};
  Bi r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].empty()) continue;
      Uni& t = r[i + j];
      const std::size_t need = a[i].size() + b[j].size() - 1;
      if (t.size() < need) t.resize(need);
      for (std::size_t u = 0; u < a[i].size(); ++u) {
        if (sgn(a[i][u]) == 0) continue;
        for (std::size_t v = 0; v < b[j].size(); ++v)
          mpz_addmul(t[u + v].get_mpz_t(), a[i][u].get_mpz_t(), b[j][v].get_mpz_t());
      }
    }
  }
  trim(r);
  return r;
}

/// Exact quotient a / b in Z[L, M], or nullopt.
inline std::optional<Bi> exact_div(const Bi& a, const Bi& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return Bi{};
  if (a.size() < b.size()) return std::nullopt;
  // Degree bounds in M give a cheap early rejection.
  const std::size_t db = b.size() - 1;
  Bi r(a);
  Bi q(a.size() - db);
  const Uni& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Uni& top = r[k + db];
    trim(top);
    if (top.empty()) continue;
    auto qk = exact_div(top, lb);
    if (!qk) return std::nullopt;
    q[k] = std::move(*qk);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].empty()) continue;
      Uni& t = r[k + j];
      const std::size_t need = q[k].size() + b[j].size() - 1;
      if (t.size() < need) t.resize(need);
      for (std::size_t u = 0; u < q[k].size(); ++u) {
        if (sgn(q[k][u]) == 0) continue;
        for (std::size_t v = 0; v < b[j].size(); ++v)
          mpz_submul(t[u + v].get_mpz_t(), q[k][u].get_mpz_t(), b[j][v].get_mpz_t());
      }
    }
  }
  for (std::size_t i = 0; i < db; ++i) {
    trim(r[i]);
    if (!r[i].empty()) return std::nullopt;
  }
  trim(q);
  return q;
}

inline mpz_class content(const Bi& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    for (const auto& x : c) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return g;
    }
  }
  return g;
}

inline Bi divexact_scalar(const Bi& a, const mpz_class& c) {
  Bi r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = divexact_scalar(a[i], c);
  return r;
}

inline Bi scale(const Bi& a, const mpz_class& c) {
  Bi r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = scale(a[i], c);
  trim(r);
  return r;
}

inline mpz_class max_norm(const Bi& a) {
  mpz_class m = 0;
  for (const auto& c : a)
    for (const auto& x : c)
      if (mpz_cmpabs(x.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(x);
  return m;
}

/// Leading coefficient of the leading coefficient (highest L, then highest M).
inline const mpz_class& ground_lc(const Bi& a) { return a.back().back(); }

/// Substitute M = x, leaving a univariate polynomial in L.
inline Uni eval_inner(const Bi& a, const mpz_class& x) {
  Uni r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = eval(a[i], x);
  trim(r);
  return r;
}

}  // namespace apoly::dense
