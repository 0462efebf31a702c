#pragma once

#include <complex>
#include <utility>

#include "apoly/gcd.hpp"
#include "apoly/laurent_poly.hpp"

namespace apoly {

/// Reduced quotient of Laurent polynomials.
///
/// The denominator is an ordinary polynomial not divisible by L or M with a
/// positive leading coefficient; all monomial factors live in the numerator.
/// gcd(num, den) is a unit.
class RatFun {
 public:
  RatFun() : num_(0), den_(1) {}
  RatFun(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(long c) : num_(c), den_(1) {}                    // NOLINT(google-explicit-constructor)

  /// Reduces and normalizes num / den.
  static RatFun make(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw error(errc::division_by_zero, "rational function with zero denominator");
    if (num.is_zero()) return {};
    const LaurentPoly g = poly_gcd(num, den);
    return from_coprime(exact_div(num, g), exact_div(den, g));
  }

  [[nodiscard]] const LaurentPoly& num() const noexcept { return num_; }
  [[nodiscard]] const LaurentPoly& den() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }

  friend bool operator==(const RatFun&, const RatFun&) = default;

  RatFun operator-() const { return raw(-num_, den_); }

  friend RatFun operator+(const RatFun& x, const RatFun& y) { return add(x, y); }
  friend RatFun operator-(const RatFun& x, const RatFun& y) { return add(x, -y); }

  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const LaurentPoly g1 = poly_gcd(x.num_, y.den_);
    const LaurentPoly g2 = poly_gcd(y.num_, x.den_);
    return from_coprime(exact_div(x.num_, g1) * exact_div(y.num_, g2),
                        exact_div(x.den_, g2) * exact_div(y.den_, g1));
  }

  friend RatFun operator/(const RatFun& x, const RatFun& y) { return x * y.inverse(); }

  [[nodiscard]] RatFun inverse() const {
    if (is_zero()) throw error(errc::division_by_zero, "inverse of zero rational function");
    return from_coprime(den_, num_);
  }

  [[nodiscard]] RatFun squared() const { return raw(num_ * num_, den_ * den_); }

  template <typename T = double>
  std::complex<T> evaluate(std::complex<T> l0, std::complex<T> m0) const {
    return apoly::evaluate<T>(num_, l0, m0) / apoly::evaluate<T>(den_, l0, m0);
  }

 private:
  static RatFun raw(LaurentPoly n, LaurentPoly d) {
    RatFun r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }

  // num and den share no non-unit factor; only monomials and sign move.
  static RatFun from_coprime(LaurentPoly num, LaurentPoly den) {
    if (den.is_zero()) throw error(errc::division_by_zero, "rational function with zero denominator");
    if (num.is_zero()) return {};
    const Exponent sl = den.min_l(), sm = den.min_m();
    const bool flip = sgn(den.leading().c) < 0;
    const Integer s = flip ? -1 : 1;
    if (sl != 0 || sm != 0) {
      den = den.times_monomial(s, detail::checked_exp(-std::int64_t{sl}), detail::checked_exp(-std::int64_t{sm}));
      num = num.times_monomial(s, detail::checked_exp(-std::int64_t{sl}), detail::checked_exp(-std::int64_t{sm}));
    } else if (flip) {
      den = -den;
      num = -num;
    }
    return raw(std::move(num), std::move(den));
  }

  static RatFun add(const RatFun& x, const RatFun& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const LaurentPoly g = poly_gcd(x.den_, y.den_);
    if (g.is_constant()) return from_coprime(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    const LaurentPoly xd = exact_div(x.den_, g), yd = exact_div(y.den_, g);
    LaurentPoly n = x.num_ * yd + y.num_ * xd;
    if (n.is_zero()) return {};
    const LaurentPoly g2 = poly_gcd(n, g);
    return from_coprime(exact_div(n, g2), xd * exact_div(y.den_, g2));
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

enum class RatOp { add, sub, mul, div, square };

/// Field arithmetic in the fraction field; `square` ignores y.
inline RatFun ratfun_combine(RatOp op, const RatFun& x, const RatFun& y = RatFun{}) {
  switch (op) {
    case RatOp::add: return x + y;
    case RatOp::sub: return x - y;
    case RatOp::mul: return x * y;
    case RatOp::div: return x / y;
    case RatOp::square: return x.squared();
  }
  return {};
}

inline RatFun ratfun_normalize(const LaurentPoly& num, const LaurentPoly& den) {
  return RatFun::make(num, den);
}

}  // namespace apoly
