#pragma once

// Independent checks of the substitution pipeline: elimination by iterated
// Sylvester resultants, and numeric residuals of the Ptolemy system at roots
// of a computed polynomial.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "apoly/eliminate.hpp"
#include "apoly/laurent_poly.hpp"
#include "apoly/ptolemy.hpp"

namespace apoly {

// ---- multivariate polynomials (nonnegative exponents) ----

/// Sparse polynomial in a fixed number of variables; variable 0 is L, 1 is M.
class MultiPoly {
 public:
  using Mono = std::vector<std::int32_t>;
  using Terms = std::map<Mono, Integer, std::greater<>>;  // leading term first (lex)

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}
  MultiPoly(std::size_t nvars, const Integer& c) : nvars_(nvars) {
    if (sgn(c) != 0) terms_[Mono(nvars, 0)] = c;
  }

  static MultiPoly var(std::size_t nvars, std::size_t i, std::int32_t power = 1) {
    MultiPoly p(nvars);
    Mono m(nvars, 0);
    m.at(i) = power;
    p.terms_[m] = 1;
    return p;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] int degree(std::size_t v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
    return d;
  }

  /// Coefficient of v^k, as a polynomial in the same variables.
  [[nodiscard]] MultiPoly coeff(std::size_t v, int k) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_)
      if (m[v] == k) {
        Mono mm = m;
        mm[v] = 0;
        r.terms_[mm] = c;
      }
    return r;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    widen(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    widen(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(std::max(a.nvars_, b.nvars_));
    Mono m(r.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < r.nvars_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  /// Exact quotient, or nullopt.
  [[nodiscard]] std::optional<MultiPoly> try_div(const MultiPoly& d) const {
    if (d.is_zero()) throw error(errc::division_by_zero, "multivariate division by zero");
    MultiPoly q(std::max(nvars_, d.nvars_)), r = *this;
    const auto& [dm, dc] = *d.terms_.begin();
    Mono t(q.nvars_);
    while (!r.is_zero()) {
      const auto [rm, rc] = *r.terms_.begin();
      for (std::size_t i = 0; i < q.nvars_; ++i) {
        t[i] = rm[i] - dm[i];
        if (t[i] < 0) return std::nullopt;
      }
      if (!mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
      Integer c;
      mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
      q.add_term(t, c);
      Mono m(q.nvars_);
      for (const auto& [em, ec] : d.terms_) {
        for (std::size_t i = 0; i < q.nvars_; ++i) m[i] = em[i] + t[i];
        r.add_term(m, -c * ec);
      }
    }
    return q;
  }

  /// Divides out integer content, the common monomial, and makes the leading coefficient positive.
  [[nodiscard]] MultiPoly primitive() const {
    if (is_zero()) return *this;
    Integer g = 0;
    Mono low = terms_.begin()->first;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      for (std::size_t i = 0; i < nvars_; ++i) low[i] = std::min(low[i], m[i]);
    }
    if (sgn(terms_.begin()->second) < 0) g = -g;
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      Mono mm = m;
      for (std::size_t i = 0; i < nvars_; ++i) mm[i] -= low[i];
      Integer q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      r.terms_.emplace(std::move(mm), std::move(q));
    }
    return r;
  }

  /// Bivariate polynomial in L, M; every other variable must be absent.
  [[nodiscard]] LaurentPoly to_laurent() const {
    std::vector<Term> ts;
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 2; i < nvars_; ++i)
        if (m[i] != 0) throw error(errc::verification_failed, "polynomial still involves eliminated variables");
      ts.push_back({m.at(0), m.at(1), c});
    }
    return LaurentPoly::from_terms(std::move(ts));
  }

  template <typename T>
  [[nodiscard]] std::complex<T> evaluate(const std::vector<std::complex<T>>& at) const {
    std::complex<T> s{0, 0};
    for (const auto& [m, c] : terms_) {
      std::complex<T> t{static_cast<T>(detail::to_long_double(c)), 0};
      for (std::size_t i = 0; i < nvars_; ++i) t *= detail::ipow(at.at(i), m[i]);
      s += t;
    }
    return s;
  }

 private:
  void widen(const MultiPoly& o) {
    if (o.nvars_ <= nvars_) return;
    Terms t;
    for (auto& [m, c] : terms_) {
      Mono mm = m;
      mm.resize(o.nvars_, 0);
      t.emplace(std::move(mm), c);
    }
    terms_ = std::move(t);
    nvars_ = o.nvars_;
  }
  void add_term(const Mono& m, const Integer& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

// ---- resultants ----

/// Polynomial in a distinguished variable x with coefficients in R; coeffs[k] multiplies x^k.
template <typename R>
struct UniPoly {
  std::vector<R> coeffs;

  [[nodiscard]] int degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
      if (!coeffs[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
  }
};

using UniPolyOverPoly = UniPoly<LaurentPoly>;

namespace detail {

inline std::optional<LaurentPoly> ring_div(const LaurentPoly& a, const LaurentPoly& b) { return try_exact_div(a, b); }
inline std::optional<MultiPoly> ring_div(const MultiPoly& a, const MultiPoly& b) { return a.try_div(b); }
inline LaurentPoly ring_one(const LaurentPoly&) { return LaurentPoly(1); }
inline MultiPoly ring_one(const MultiPoly& like) { return MultiPoly(like.nvars(), Integer(1)); }

}  // namespace detail

/// Determinant of a square matrix by fraction-free (Bareiss) elimination; every division must be exact.
template <typename R>
R bareiss_determinant(std::vector<std::vector<R>> a, const R& one) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  R prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < n && a[i][k].is_zero()) ++i;
      if (i == n) return R{} * one;
      std::swap(a[k], a[i]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto q = detail::ring_div(num, prev);
        if (!q) throw error(errc::verification_failed, "Bareiss step is not fraction-free");
        a[i][j] = std::move(*q);
      }
      a[i][k] = R{} * one;
    }
    prev = a[k][k];
  }
  R d = a[n - 1][n - 1];
  return negate ? -d : d;
}

/// Determinant of the Sylvester matrix of f and g.
template <typename R>
R sylvester_resultant(const UniPoly<R>& f, const UniPoly<R>& g, const R& one) {
  const int m = f.degree(), n = g.degree();
  if (m < 1 && n < 1) throw error(errc::both_constant, "resultant of two constants");
  if (m < 0 || n < 0) return R{} * one;
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<R>> s(size, std::vector<R>(size, R{} * one));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + m - k)] = f.coeffs[static_cast<std::size_t>(k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + n - k)] = g.coeffs[static_cast<std::size_t>(k)];
  return bareiss_determinant(std::move(s), one);
}

inline LaurentPoly sylvester_resultant(const UniPolyOverPoly& f, const UniPolyOverPoly& g) {
  return sylvester_resultant(f, g, LaurentPoly(1));
}

inline UniPoly<MultiPoly> as_uni(const MultiPoly& p, std::size_t v) {
  UniPoly<MultiPoly> u;
  for (int k = 0; k <= p.degree(v); ++k) u.coeffs.push_back(p.coeff(v, k));
  return u;
}

// ---- cleared polynomial system ----

struct PolySystem {
  std::vector<MultiPoly> equations;
  std::map<Slope, std::size_t> var_of;  // gamma slope -> variable index (>= 2)
  std::vector<std::size_t> elimination_order;
  std::size_t nvars = 2;
};

/// Ptolemy system with gamma of the removed edge set to 1 and monomial coefficients cleared.
inline PolySystem cleared_system(const ParentData& d, const Walk& w) {
  const auto sys = equation_system(d, w);
  PolySystem ps;
  const Slope one = d.removed_slope();
  std::vector<Slope> order;  // variable creation order
  const auto note = [&](const Slope& s) {
    if (s == one || ps.var_of.count(s)) return;
    ps.var_of[s] = 2 + order.size();
    order.push_back(s);
  };
  for (const auto& e : sys.outside)
    for (const auto& t : e.terms) note(t.a), note(t.b);
  for (const auto& st : w.steps) note(st.old), note(st.pivot), note(st.fan), note(st.heading);
  ps.nvars = 2 + order.size();
  const auto gamma = [&](const Slope& s) {
    return s == one ? MultiPoly(ps.nvars, Integer(1)) : MultiPoly::var(ps.nvars, ps.var_of.at(s));
  };
  const auto to_poly = [&](const PtolemyEquation& e) {
    std::int32_t shift_l = 0, shift_m = 0;
    for (const auto& t : e.terms) shift_l = std::max(shift_l, -t.l), shift_m = std::max(shift_m, -t.m);
    MultiPoly p(ps.nvars);
    for (const auto& t : e.terms) {
      MultiPoly mono = MultiPoly::var(ps.nvars, 0, t.l + shift_l) * MultiPoly::var(ps.nvars, 1, t.m + shift_m);
      p += MultiPoly(ps.nvars, Integer(t.sign)) * mono * gamma(t.a) * gamma(t.b);
    }
    return p.primitive();
  };
  for (const auto& e : sys.outside) ps.equations.push_back(to_poly(e));
  for (const auto& e : sys.inside) ps.equations.push_back(to_poly(e));
  ps.equations.push_back(gamma(sys.fold.a) - gamma(sys.fold.b));
  // innermost first: headings in reverse walk order, then the outside gammas
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
    if (ps.var_of.count(it->heading)) ps.elimination_order.push_back(ps.var_of.at(it->heading));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = ps.var_of.at(*it);
    if (std::find(ps.elimination_order.begin(), ps.elimination_order.end(), v) == ps.elimination_order.end())
      ps.elimination_order.push_back(v);
  }
  return ps;
}

/// Eliminates every gamma variable by resultants against the lowest-degree pivot.
inline LaurentPoly resultant_eliminate(const PolySystem& ps) {
  std::vector<MultiPoly> eqs = ps.equations;
  for (const std::size_t v : ps.elimination_order) {
    std::vector<MultiPoly> with, without;
    for (auto& e : eqs) (e.degree(v) > 0 ? with : without).push_back(std::move(e));
    if (with.empty()) throw error(errc::elimination_collapse, "variable absent from every equation");
    const auto pivot_it = std::min_element(with.begin(), with.end(), [&](const MultiPoly& a, const MultiPoly& b) {
      return a.degree(v) != b.degree(v) ? a.degree(v) < b.degree(v) : a.size() < b.size();
    });
    const MultiPoly pivot = *pivot_it;
    with.erase(pivot_it);
    const auto pu = as_uni(pivot, v);
    for (const auto& e : with) {
      const MultiPoly r = sylvester_resultant(pu, as_uni(e, v), MultiPoly(ps.nvars, Integer(1)));
      if (r.is_zero()) throw error(errc::elimination_collapse, "an intermediate resultant vanishes identically");
      without.push_back(r.primitive());
    }
    eqs = std::move(without);
  }
  if (eqs.empty()) throw error(errc::elimination_collapse, "no equation left after elimination");
  // More equations than unknowns leaves several; their gcd carries the common part.
  LaurentPoly out = eqs.front().to_laurent();
  for (std::size_t i = 1; i < eqs.size(); ++i) out = poly_gcd(out, eqs[i].to_laurent());
  if (out.is_constant()) throw error(errc::elimination_collapse, "elimination left a constant");
  return monomial_clear(out);
}

inline LaurentPoly resultant_eliminate(const ParentData& d, const Slope& s) {
  return resultant_eliminate(cleared_system(d, walk_to(s)));
}

// ---- numeric residuals ----

using Cplx = std::complex<long double>;

namespace detail {

// Initial radii from the upper convex hull of (k, log|c_k|).
inline std::vector<Cplx> newton_polygon_start(const std::vector<Cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::pair<int, long double>> pts;
  for (int k = 0; k <= n; ++k)
    if (std::abs(c[static_cast<std::size_t>(k)]) > 0)
      pts.emplace_back(k, std::log(std::abs(c[static_cast<std::size_t>(k)])));
  std::vector<std::pair<int, long double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<Cplx> z;
  const long double pi = std::acos(-1.0L);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int k0 = hull[h].first, k1 = hull[h + 1].first;
    const long double r = std::exp((hull[h].second - hull[h + 1].second) / (k1 - k0));
    for (int j = 0; j < k1 - k0; ++j) {
      const long double ang = 2 * pi * (j + 0.25L) / (k1 - k0) + 0.4L * static_cast<long double>(h);
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

inline std::pair<Cplx, Cplx> horner_with_derivative(const std::vector<Cplx>& c, Cplx x) {
  Cplx p = c.back(), dp{0, 0};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[k];
  }
  return {p, dp};
}

}  // namespace detail

/// All complex roots of sum c[k] x^k (c.back() != 0, c[0] != 0) by Aberth–Ehrlich iteration.
inline std::vector<Cplx> polynomial_roots(const std::vector<Cplx>& c) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  std::vector<Cplx> z = detail::newton_polygon_start(c);
  z.resize(n, Cplx{1, 0});
  for (int it = 0; it < 500; ++it) {
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [p, dp] = detail::horner_with_derivative(c, z[i]);
      if (p == Cplx{0, 0}) continue;
      const Cplx ratio = p / dp;
      Cplx s{0, 0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      const Cplx w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[i])));
    }
    if (worst < 1e-18L) break;
  }
  for (auto& x : z)
    for (int k = 0; k < 3; ++k) {
      const auto [p, dp] = detail::horner_with_derivative(c, x);
      if (dp == Cplx{0, 0}) break;
      x -= p / dp;
    }
  return z;
}

/// Coefficients in L of p(L, m0), lowest power first (p must have no negative L powers).
inline std::vector<Cplx> coefficients_in_l(const LaurentPoly& p, Cplx m0) {
  std::vector<Cplx> c(static_cast<std::size_t>(p.max_l()) + 1, Cplx{0, 0});
  for (const auto& t : p.terms())
    c[static_cast<std::size_t>(t.l)] += Cplx(detail::to_long_double(t.c), 0) * detail::ipow(m0, t.m);
  return c;
}

// Roots near a cluster are found to long double accuracy but the gamma chain
// amplifies their error by many orders; residuals are therefore evaluated
// after polishing in 100-digit arithmetic.
using HCplx = boost::multiprecision::cpp_complex_100;
using HReal = boost::multiprecision::cpp_bin_float_100;

namespace detail {

inline HCplx hp(const Cplx& z) { return {HReal(z.real()), HReal(z.imag())}; }
inline HCplx hp(const Integer& c) { return {HReal(c.get_str()), HReal(0)}; }

inline Cplx lp(const HCplx& z) {
  return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
}

inline HCplx ipow(HCplx x, std::int64_t k) {
  if (k < 0) return HCplx(1) / ipow(x, -k);
  HCplx r(1);
  while (k != 0) {
    if (k & 1) r *= x;
    k >>= 1;
    if (k != 0) x *= x;
  }
  return r;
}

inline long double abs_ld(const Cplx& z) { return std::abs(z); }
inline long double abs_ld(const HCplx& z) { return static_cast<long double>(abs(z)); }

template <typename C>
C coeff(const Integer& c) {
  if constexpr (std::is_same_v<C, HCplx>)
    return hp(c);
  else
    return C(to_long_double(c), 0);
}

template <typename C>
C eval_terms(const LaurentPoly& p, const C& l0, const C& m0) {
  C s(0);
  for (const auto& t : p.terms()) s += coeff<C>(t.c) * ipow(l0, t.l) * ipow(m0, t.m);
  return s;
}

template <typename C>
long double relative_residual(const std::vector<C>& terms) {
  C s(0);
  long double mag = 0;
  for (const auto& t : terms) {
    s += t;
    mag += abs_ld(t);
  }
  return mag == 0 ? 0 : abs_ld(s) / mag;
}

inline std::vector<HCplx> coefficients_in_l_hp(const LaurentPoly& p, const HCplx& m0) {
  std::vector<HCplx> c(static_cast<std::size_t>(p.max_l()) + 1, HCplx(0));
  for (const auto& t : p.terms()) c[static_cast<std::size_t>(t.l)] += hp(t.c) * ipow(m0, t.m);
  return c;
}

/// Simultaneous Aberth refinement of all roots of sum c[k] x^k; handles clusters that single-root Newton cannot.
inline std::vector<HCplx> refine_roots(const std::vector<HCplx>& c, std::vector<HCplx> z) {
  const std::size_t n = z.size();
  const HReal tol("1e-80");
  for (int it = 0; it < 200; ++it) {
    HReal worst(0);
    for (std::size_t i = 0; i < n; ++i) {
      HCplx p = c.back(), dp(0);
      for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == HCplx(0)) continue;
      const HCplx ratio = p / dp;
      HCplx s(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += HCplx(1) / (z[i] - z[j]);
      const HCplx w = ratio / (HCplx(1) - ratio * s);
      z[i] -= w;
      worst = std::max(worst, HReal(abs(w) / (1 + abs(z[i]))));
    }
    if (worst < tol) break;
  }
  return z;
}

}  // namespace detail

/// |sum of terms| / sum of |terms|.
inline long double relative_residual(const std::vector<Cplx>& terms) { return detail::relative_residual(terms); }

/// Worst relative residual of the whole Ptolemy system when the gamma chain is evaluated at (l0, m0).
template <typename C = Cplx>
long double system_residual(const ParentData& d, const EquationSystem& sys, const C& l0, const C& m0) {
  std::map<Slope, C> g;
  g[d.removed_slope()] = C(1);
  for (const auto& [s, f] : d.outside_gamma_forms)
    g[s] = detail::eval_terms(f.num(), l0, m0) / detail::eval_terms(f.den(), l0, m0);
  for (const auto& st : sys.walk.steps) {
    const C o = g.at(st.old), p = g.at(st.pivot), f = g.at(st.fan);
    g[st.heading] = (f * f - p * p) / o;
  }
  long double worst = 0;
  const auto eq_terms = [&](const PtolemyEquation& e) {
    std::vector<C> ts;
    for (const auto& t : e.terms)
      ts.push_back(C(t.sign) * detail::ipow(l0, t.l) * detail::ipow(m0, t.m) * g.at(t.a) * g.at(t.b));
    return ts;
  };
  for (const auto& e : sys.outside) worst = std::max(worst, detail::relative_residual(eq_terms(e)));
  for (const auto& e : sys.inside) worst = std::max(worst, detail::relative_residual(eq_terms(e)));
  worst = std::max(worst, detail::relative_residual(std::vector<C>{g.at(sys.fold.a), -g.at(sys.fold.b)}));
  if (!std::isfinite(static_cast<double>(worst))) return std::numeric_limits<long double>::infinity();
  return worst;
}

struct ResidualTrial {
  Cplx m0;
  std::size_t roots = 0;
  long double max_residual = 0;
};

struct ResidualReport {
  Slope slope;
  std::vector<ResidualTrial> trials;
  long double max_residual = 0;
  long double threshold = 1e-8L;
  [[nodiscard]] bool ok() const { return !trials.empty() && max_residual < threshold; }
};

/// Residuals at every root L0 of the polynomial for random M0 in the annulus 0.5 < |M0| < 2.
inline ResidualReport numeric_residual(const ParentData& d, const Slope& slope, const LaurentPoly& poly, Basis basis,
                                       int trials = 20, std::uint64_t seed = 1) {
  if (poly.is_zero()) throw error(errc::zero_polynomial, "numeric check of the zero polynomial");
  LaurentPoly p = poly;
  if (basis == Basis::standard) {
    const auto n = one_over_n(slope);
    if (!n) throw error(errc::basis_unavailable, "standard basis needs slope 1/n");
    p = monomial_clear(substitute_basis(p, standard_basis_change(*n, d.linking_number, d.longitude_offset).inverse()));
  }
  p = monomial_clear(p);
  const auto sys = equation_system(d, walk_to(slope));
  ResidualReport rep;
  rep.slope = slope;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> log_r(std::log(0.5L), std::log(2.0L)), ang(0, 2 * std::acos(-1.0L));
  for (int t = 0; t < trials; ++t) {
    ResidualTrial tr;
    tr.m0 = std::polar(std::exp(log_r(rng)), ang(rng));
    const auto roots = polynomial_roots(coefficients_in_l(p, tr.m0));
    tr.roots = roots.size();
    const HCplx m0 = detail::hp(tr.m0);
    const auto c = detail::coefficients_in_l_hp(p, m0);
    std::vector<HCplx> seeds;
    for (const auto& l0 : roots) seeds.push_back(detail::hp(l0));
    for (const auto& l0 : detail::refine_roots(c, seeds))
      tr.max_residual = std::max(tr.max_residual, system_residual(d, sys, l0, m0));
    rep.max_residual = std::max(rep.max_residual, tr.max_residual);
    rep.trials.push_back(tr);
  }
  return rep;
}

inline nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"M0", {static_cast<double>(t.m0.real()), static_cast<double>(t.m0.imag())}},
                      {"roots", t.roots},
                      {"max_residual", static_cast<double>(t.max_residual)}});
  return {{"slope", r.slope.str()},
          {"max_residual", static_cast<double>(r.max_residual)},
          {"threshold", static_cast<double>(r.threshold)},
          {"ok", r.ok()},
          {"trials", trials}};
}

}  // namespace apoly
