#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apoly/dense.hpp"
#include "apoly/error.hpp"

namespace apoly {

using Integer = mpz_class;
using Exponent = std::int32_t;

namespace detail {

inline Exponent checked_exp(std::int64_t v) {
  if (v < std::numeric_limits<Exponent>::min() || v > std::numeric_limits<Exponent>::max())
    throw error(errc::exponent_overflow, "exponent out of range");
  return static_cast<Exponent>(v);
}

inline Exponent add_exp(Exponent a, Exponent b) {
  return checked_exp(std::int64_t{a} + std::int64_t{b});
}

inline std::uint64_t pack(Exponent l, Exponent m) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l)) << 32) |
         static_cast<std::uint32_t>(m);
}

inline std::pair<Exponent, Exponent> unpack(std::uint64_t k) {
  return {static_cast<Exponent>(static_cast<std::uint32_t>(k >> 32)),
          static_cast<Exponent>(static_cast<std::uint32_t>(k & 0xffffffffu))};
}

// Dense accumulation is used while the exponent box stays this small.
inline constexpr std::size_t dense_box_limit = std::size_t{1} << 22;

}  // namespace detail

struct Term {
  Exponent l = 0;
  Exponent m = 0;
  Integer c;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Term order: L-exponent descending, then M-exponent descending.
inline bool term_before(Exponent l1, Exponent m1, Exponent l2, Exponent m2) {
  return l1 != l2 ? l1 > l2 : m1 > m2;
}

/// Sparse Laurent polynomial in L, M with integer coefficients.
///
/// Terms are kept sorted (L-major, descending) with no zero coefficients, so
/// structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({0, 0, Integer(c)});
  }
  LaurentPoly(const Integer& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) terms_.push_back({0, 0, c});
  }

  static LaurentPoly monomial(const Integer& c, Exponent l, Exponent m) {
    LaurentPoly p;
    if (sgn(c) != 0) p.terms_.push_back({l, m, c});
    return p;
  }
  static LaurentPoly L(Exponent k = 1) { return monomial(1, k, 0); }
  static LaurentPoly M(Exponent k = 1) { return monomial(1, 0, k); }

  /// Builds from arbitrary terms: duplicates are summed, zeros dropped.
  static LaurentPoly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return term_before(a.l, a.m, b.l, b.m); });
    LaurentPoly p;
    for (auto& t : ts) {
      if (!p.terms_.empty() && p.terms_.back().l == t.l && p.terms_.back().m == t.m) {
        p.terms_.back().c += t.c;
      } else {
        if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
    return p;
  }

  /// Takes terms already in canonical order with nonzero coefficients.
  static LaurentPoly from_sorted_unchecked(std::vector<Term> ts) {
    LaurentPoly p;
    p.terms_ = std::move(ts);
    return p;
  }

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] const Term& leading() const { return terms_.front(); }

  [[nodiscard]] bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].l == 0 && terms_[0].m == 0);
  }
  [[nodiscard]] bool is_monomial() const noexcept { return terms_.size() == 1; }

  [[nodiscard]] Exponent max_l() const { return terms_.front().l; }
  [[nodiscard]] Exponent min_l() const { return terms_.back().l; }
  [[nodiscard]] Exponent max_m() const {
    Exponent r = std::numeric_limits<Exponent>::min();
    for (const auto& t : terms_) r = std::max(r, t.m);
    return r;
  }
  [[nodiscard]] Exponent min_m() const {
    Exponent r = std::numeric_limits<Exponent>::max();
    for (const auto& t : terms_) r = std::min(r, t.m);
    return r;
  }

  /// Coefficient of L^l M^m (zero when absent).
  [[nodiscard]] Integer coeff(Exponent l, Exponent m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{l, m},
                               [](const Term& t, const std::pair<Exponent, Exponent>& k) {
                                 return term_before(t.l, t.m, k.first, k.second);
                               });
    if (it != terms_.end() && it->l == l && it->m == m) return it->c;
    return 0;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly operator-() const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, true); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return multiply(a, b); }
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  /// Multiplies by c * L^l * M^m.
  [[nodiscard]] LaurentPoly times_monomial(const Integer& c, Exponent l, Exponent m) const {
    if (sgn(c) == 0) return {};
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
      r.terms_.push_back({detail::add_exp(t.l, l), detail::add_exp(t.m, m), t.c * c});
    return r;
  }

  /// Divides every coefficient exactly by c.
  [[nodiscard]] LaurentPoly divexact(const Integer& c) const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
    return r;
  }

  // ---- dense conversion (caller shifts so all exponents are >= 0) ----

  [[nodiscard]] dense::Bi to_dense(Exponent shift_l, Exponent shift_m) const {
    dense::Bi r;
    if (terms_.empty()) return r;
    r.resize(static_cast<std::size_t>(max_l() - shift_l) + 1);
    for (const auto& t : terms_) {
      auto& row = r[static_cast<std::size_t>(t.l - shift_l)];
      const auto j = static_cast<std::size_t>(t.m - shift_m);
      if (row.size() <= j) row.resize(j + 1);
      row[j] = t.c;
    }
    return r;
  }

  static LaurentPoly from_dense(const dense::Bi& a, Exponent shift_l = 0, Exponent shift_m = 0) {
    LaurentPoly p;
    for (std::size_t i = a.size(); i-- > 0;)
      for (std::size_t j = a[i].size(); j-- > 0;)
        if (sgn(a[i][j]) != 0)
          p.terms_.push_back({detail::checked_exp(std::int64_t(i) + shift_l),
                              detail::checked_exp(std::int64_t(j) + shift_m), a[i][j]});
    return p;
  }

 private:
  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool negate_b) {
    LaurentPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && term_before(a.terms_[i].l, a.terms_[i].m, b.terms_[j].l, b.terms_[j].m))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() ||
                 term_before(b.terms_[j].l, b.terms_[j].m, a.terms_[i].l, a.terms_[i].m)) {
        r.terms_.push_back(b.terms_[j++]);
        if (negate_b) r.terms_.back().c = -r.terms_.back().c;
      } else {
        Integer c = negate_b ? Integer(a.terms_[i].c - b.terms_[j].c) : Integer(a.terms_[i].c + b.terms_[j].c);
        if (sgn(c) != 0) r.terms_.push_back({a.terms_[i].l, a.terms_[i].m, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.size() == 1) return a.times_monomial(b.terms_[0].c, b.terms_[0].l, b.terms_[0].m);
    if (a.size() == 1) return b.times_monomial(a.terms_[0].c, a.terms_[0].l, a.terms_[0].m);
    const std::int64_t lo_l = std::int64_t{a.min_l()} + b.min_l();
    const std::int64_t hi_l = std::int64_t{a.max_l()} + b.max_l();
    const std::int64_t lo_m = std::int64_t{a.min_m()} + b.min_m();
    const std::int64_t hi_m = std::int64_t{a.max_m()} + b.max_m();
    for (std::int64_t e : {lo_l, hi_l, lo_m, hi_m}) detail::checked_exp(e);
    const auto wl = static_cast<std::size_t>(hi_l - lo_l + 1);
    const auto wm = static_cast<std::size_t>(hi_m - lo_m + 1);
    const std::size_t products = a.size() * b.size();
    LaurentPoly r;
    if (wl <= detail::dense_box_limit / wm && wl * wm <= 8 * products + 4096) {
      std::vector<Integer> acc(wl * wm);
      for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
          const auto idx = static_cast<std::size_t>(s.l + t.l - lo_l) * wm +
                           static_cast<std::size_t>(s.m + t.m - lo_m);
          mpz_addmul(acc[idx].get_mpz_t(), s.c.get_mpz_t(), t.c.get_mpz_t());
        }
      for (std::size_t i = wl; i-- > 0;)
        for (std::size_t j = wm; j-- > 0;) {
          auto& c = acc[i * wm + j];
          if (sgn(c) != 0)
            r.terms_.push_back({static_cast<Exponent>(std::int64_t(i) + lo_l),
                                static_cast<Exponent>(std::int64_t(j) + lo_m), std::move(c)});
        }
      return r;
    }
    std::unordered_map<std::uint64_t, Integer> acc;
    acc.reserve(products);
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto& c = acc[detail::pack(s.l + t.l, s.m + t.m)];
        mpz_addmul(c.get_mpz_t(), s.c.get_mpz_t(), t.c.get_mpz_t());
      }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [k, c] : acc) {
      if (sgn(c) == 0) continue;
      auto [l, m] = detail::unpack(k);
      ts.push_back({l, m, std::move(c)});
    }
    std::sort(ts.begin(), ts.end(),
              [](const Term& x, const Term& y) { return term_before(x.l, x.m, y.l, y.m); });
    r.terms_ = std::move(ts);
    return r;
  }

  std::vector<Term> terms_;
};

inline LaurentPoly pow(const LaurentPoly& p, unsigned k) {
  LaurentPoly r = 1;
  LaurentPoly base = p;
  while (k != 0) {
    if (k & 1u) r *= base;
    k >>= 1;
    if (k != 0) base *= base;
  }
  return r;
}

/// gcd of the integer coefficients (0 for the zero polynomial).
inline Integer content(const LaurentPoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Shifts out the largest monomial factor L^a M^b (sign kept).
inline LaurentPoly shift_to_origin(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p.times_monomial(1, detail::checked_exp(-std::int64_t{p.min_l()}),
                          detail::checked_exp(-std::int64_t{p.min_m()}));
}

/// Multiplies by the unique ±L^i M^j making p an ordinary polynomial not
/// divisible by L or M, with positive leading coefficient.
inline LaurentPoly monomial_clear(const LaurentPoly& p) {
  if (p.is_zero()) throw error(errc::zero_polynomial, "monomial_clear of zero");
  LaurentPoly r = shift_to_origin(p);
  if (sgn(r.leading().c) < 0) r = -r;
  return r;
}

/// Monomial-free, content-free, positive leading coefficient.
inline LaurentPoly canonical(const LaurentPoly& p) {
  LaurentPoly r = monomial_clear(p);
  return r.divexact(content(r));
}

/// True for ±L^i M^j.
inline bool is_unit(const LaurentPoly& p) {
  return p.is_monomial() && (p.leading().c == 1 || p.leading().c == -1);
}

/// p == q * (±monomial)
inline bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return monomial_clear(p) == monomial_clear(q);
}

namespace detail {

inline std::optional<LaurentPoly> sparse_div(const LaurentPoly& p, const LaurentPoly& d) {
  // p and d are shifted to the origin; classical division in L-major order.
  using Key = std::pair<Exponent, Exponent>;
  auto cmp = [](const Key& a, const Key& b) { return term_before(a.first, a.second, b.first, b.second); };
  std::map<Key, Integer, decltype(cmp)> rem(cmp);
  for (const auto& t : p.terms()) rem.emplace(Key{t.l, t.m}, t.c);
  const Term& lt = d.leading();
  std::vector<Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    const Exponent ql = it->first.first - lt.l;
    const Exponent qm = it->first.second - lt.m;
    if (ql < 0 || qm < 0) return std::nullopt;
    if (!mpz_divisible_p(it->second.get_mpz_t(), lt.c.get_mpz_t())) return std::nullopt;
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lt.c.get_mpz_t());
    for (const auto& t : d.terms()) {
      Key k{t.l + ql, t.m + qm};
      auto [pos, inserted] = rem.try_emplace(k, 0);
      mpz_submul(pos->second.get_mpz_t(), qc.get_mpz_t(), t.c.get_mpz_t());
      if (sgn(pos->second) == 0) rem.erase(pos);
    }
    q.push_back({ql, qm, std::move(qc)});
  }
  return LaurentPoly::from_sorted_unchecked(std::move(q));
}

}  // namespace detail

/// Exact quotient p / d in the Laurent ring, or nullopt when d does not divide p.
inline std::optional<LaurentPoly> try_exact_div(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw error(errc::division_by_zero, "exact division by zero polynomial");
  if (p.is_zero()) return LaurentPoly{};
  const Exponent pl = p.min_l(), pm = p.min_m();
  const Exponent dl = d.min_l(), dm = d.min_m();
  if (d.is_monomial()) {
    const Integer& c = d.leading().c;
    for (const auto& t : p.terms())
      if (!mpz_divisible_p(t.c.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
    LaurentPoly r = p.times_monomial(sgn(c), detail::checked_exp(-std::int64_t{dl}),
                                     detail::checked_exp(-std::int64_t{dm}));
    return r.divexact(abs(c));
  }
  const LaurentPoly p0 = shift_to_origin(p);
  const LaurentPoly d0 = shift_to_origin(d);
  std::optional<LaurentPoly> q0;
  const auto box = [](const LaurentPoly& x) {
    return (std::size_t(x.max_l()) + 1) * (std::size_t(x.max_m()) + 1);
  };
  if (box(p0) <= detail::dense_box_limit && box(p0) <= 16 * p0.size() + 4096) {
    auto q = dense::exact_div(p0.to_dense(0, 0), d0.to_dense(0, 0));
    if (q) q0 = LaurentPoly::from_dense(*q);
  } else {
    q0 = detail::sparse_div(p0, d0);
  }
  if (!q0) return std::nullopt;
  return q0->times_monomial(1, detail::checked_exp(std::int64_t{pl} - dl),
                            detail::checked_exp(std::int64_t{pm} - dm));
}

inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
  auto q = try_exact_div(p, d);
  if (!q) throw error(errc::not_divisible, "polynomial is not an exact multiple of the divisor");
  return std::move(*q);
}

/// Unimodular change of cusp basis with entries a, b, c, d.
struct BasisChange {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  [[nodiscard]] std::int64_t determinant() const { return a * d - b * c; }
  [[nodiscard]] bool unimodular() const { return determinant() == 1 || determinant() == -1; }

  /// The change whose substitution undoes this one up to a monomial unit.
  [[nodiscard]] BasisChange inverse() const {
    const std::int64_t det = determinant();
    return {d * det, -b * det, -c * det, a * det};
  }

  friend bool operator==(const BasisChange&, const BasisChange&) = default;
};

/// Applying `first` then `second` equals applying the matrix product second * first.
inline BasisChange compose(const BasisChange& first, const BasisChange& second) {
  const BasisChange& x = second;
  const BasisChange& y = first;
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

/// (L, M) -> (L^d M^-b, L^-c M^a): the term L^i M^j goes to L^(d i - c j) M^(-b i + a j).
inline LaurentPoly substitute_basis(const LaurentPoly& p, const BasisChange& ch) {
  if (!ch.unimodular()) throw error(errc::verification_failed, "basis change is not unimodular");
  std::vector<Term> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    const std::int64_t l = ch.d * t.l - ch.c * t.m;
    const std::int64_t m = -ch.b * t.l + ch.a * t.m;
    ts.push_back({detail::checked_exp(l), detail::checked_exp(m), t.c});
  }
  return LaurentPoly::from_terms(std::move(ts));
}

namespace detail {

// Exact to long double precision, unlike mpz_get_d.
inline long double to_long_double(const Integer& c) {
  const mpz_srcptr z = c.get_mpz_t();
  long double r = 0;
  for (std::size_t i = mpz_size(z); i-- > 0;)
    r = std::ldexp(r, GMP_NUMB_BITS) + static_cast<long double>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
  return sgn(c) < 0 ? -r : r;
}

template <typename T>
std::complex<T> ipow(std::complex<T> x, std::int64_t k) {
  if (k < 0) return T(1) / ipow(x, -k);
  std::complex<T> r{1, 0};
  while (k != 0) {
    if (k & 1) r *= x;
    k >>= 1;
    if (k != 0) x *= x;
  }
  return r;
}

}  // namespace detail

/// Floating evaluation (binary64 by default); approximate by nature.
template <typename T = double>
std::complex<T> evaluate(const LaurentPoly& p, std::complex<T> l0, std::complex<T> m0) {
  if (p.is_zero()) return {0, 0};
  if ((l0 == std::complex<T>{} && p.min_l() < 0) || (m0 == std::complex<T>{} && p.min_m() < 0))
    throw error(errc::pole_at_zero, "evaluation at a pole");
  // Horner over blocks of equal L-exponent.
  std::complex<T> acc{};
  const auto& ts = p.terms();
  std::int64_t cur_l = ts.front().l;
  std::size_t i = 0;
  while (i < ts.size()) {
    const Exponent l = ts[i].l;
    acc *= detail::ipow(l0, cur_l - l);
    cur_l = l;
    std::complex<T> row{};
    for (; i < ts.size() && ts[i].l == l; ++i)
      row += static_cast<T>(detail::to_long_double(ts[i].c)) * detail::ipow(m0, ts[i].m);
    acc += row;
  }
  return acc * detail::ipow(l0, cur_l);
}

}  // namespace apoly
