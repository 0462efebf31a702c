#include <catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "apoly/eliminate.hpp"
#include "test_support.hpp"

using namespace apoly;
using apoly::test::P;

namespace {

const ParentData& data() {
  static const ParentData d = load_parent();
  return d;
}

Slope s(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::verification_failed;
}

// Triangulation-basis K3_1 polynomial, obtained independently by a CAS from the folding difference.
const char* const k31_triangulation =
    "L^6*M - L^5*M^4 + 2*L^5*M^2 - L^5 - L^4*M^5 - 2*L^4*M^3 + 2*L^2*M^7 + L^2*M^5 + L*M^10 - 2*L*M^8 + L*M^6 - M^9";

}  // namespace

TEST_CASE("outside gammas", "[eliminate]") {
  const auto t = outside_gammas(data());
  CHECK(t.values.size() == 3);
  CHECK(t.at(s(3, 1)) == RatFun(1));
  CHECK(t.at(s(4, 1)) == RatFun::make(P("M^2 - L^2"), P("L*M^2 - L")));
  CHECK(t.at(s(1, 0)) == RatFun::make(P("M^4 - L^2"), P("M^3 - M*L^2")));
  CHECK(substitute(tet_ptolemy_equation(data(), 0), t.values).is_zero());
  auto bad = data();
  bad.outside_gamma_forms[s(4, 1)] = RatFun::make(P("M^2 - L^2 + 1"), P("L*M^2 - L"));
  CHECK(code_of([&] { outside_gammas(bad); }) == errc::verification_failed);
}

TEST_CASE("chain substitution", "[eliminate]") {
  const auto w = walk_to(s(1, 3));
  const auto t = chain_substitute(outside_gammas(data()), w);
  CHECK(t.values.size() == 3 + 4);
  // (gamma_{1/0}^2 - 1)/gamma_{4/1}, reduced independently with a CAS.
  const auto num = P("L") * P("L^2 - M^3") * P("L^2 + M^3") * pow(P("M - 1"), 2) * pow(P("M + 1"), 2);
  const auto den = P("M^2") * pow(P("L - M"), 3) * pow(P("L + M"), 3);
  CHECK(t.at(s(2, 1)) == RatFun::make(num, den));
  CHECK(t.at(s(1, 1)) == t.at(s(2, 1)).squared() - t.at(s(1, 0)).squared());
  CHECK(t.at(s(0, 1)) == (t.at(s(1, 1)).squared() - t.at(s(1, 0)).squared()) / t.at(s(2, 1)));
  CHECK(t.order == std::vector<Slope>{s(3, 1), s(1, 0), s(4, 1), s(2, 1), s(1, 1), s(0, 1), s(1, 2)});
  CHECK_FALSE(t.accumulated_denominators.empty());

  // Numeric chain for step 0 at random points.
  const auto one = chain_substitute(outside_gammas(data()), walk_to(s(1, 1)));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> r(0.5, 2.0), a(0, 6.28);
  for (int i = 0; i < 50; ++i) {
    using C = std::complex<double>;
    const C l = std::polar(r(rng), a(rng)), m = std::polar(r(rng), a(rng));
    const C g4 = (m * m - l * l) / (l * (m * m - 1.0));
    const C ginf = (m * m * m * m - l * l) / (m * (m * m - l * l));
    const C g2 = (ginf * ginf - 1.0) / g4;
    CHECK(std::abs(one.at(s(2, 1)).evaluate(l, m) - g2) <= 1e-10 * std::max(1.0, std::abs(g2)));
  }
}

TEST_CASE("zero old gamma", "[eliminate]") {
  GammaTable t = outside_gammas(data());
  t.set(s(4, 1), RatFun{});
  CHECK(code_of([&] { chain_substitute(t, walk_to(s(1, 1))); }) == errc::zero_old_gamma);
}

TEST_CASE("folding polynomial of K3_1", "[eliminate]") {
  const auto w = walk_to(s(1, 1));
  const auto t = chain_substitute(outside_gammas(data()), w);
  const auto raw = folding_polynomial(t, w);
  // The displayed precursor: -(L^2-M^4)^2/(M^2 (L^2-M^2)^2) + (L^2-M^4)/(M (L - L M^2)) + 1.
  const auto a = RatFun::make(-pow(P("L^2 - M^4"), 2), P("M^2") * pow(P("L^2 - M^2"), 2));
  const auto b = RatFun::make(P("L^2 - M^4"), P("M") * P("L - L*M^2"));
  const auto precursor = a + b + RatFun(1);
  CHECK(equal_up_to_unit(monomial_clear(precursor.num()), raw));
  CHECK(raw == P(k31_triangulation));
}

TEST_CASE("strip extraneous factors", "[eliminate]") {
  const auto A = P("L^3 + M + 2");
  {
    const auto r = strip_extraneous(pow(P("L - M"), 2) * A, {P("L - M")});
    CHECK(r.polynomial == A);
    CHECK(r.stripped == std::vector<LaurentPoly>{P("L - M"), P("L - M")});
  }
  {
    const auto r = strip_extraneous(A * P("L^-2*M"), {P("L - M"), P("M + 1")});
    CHECK(r.polynomial == A);
    CHECK(r.stripped.empty());
  }
  {
    // a candidate sharing only part of its factors
    const auto r = strip_extraneous(P("6") * P("M + 1") * A, {P("M + 1") * P("L - 1")});
    CHECK(r.polynomial == A);
    CHECK(r.stripped == std::vector<LaurentPoly>{P("M + 1"), P("6")});
  }
  CHECK(code_of([] { strip_extraneous(LaurentPoly{}, {}); }) == errc::zero_polynomial);
}

TEST_CASE("basis change for 1/n", "[eliminate]") {
  CHECK(standard_basis_change(1) == BasisChange{1, 17, 0, 1});
  CHECK(substitute_basis(P("L"), standard_basis_change(1)) == P("L*M^-17"));
  CHECK(change_basis_1n(P("L^2*M^40 + M^3"), 1) == P("L^2*M^3 + 1"));
  CHECK(change_basis_1n(P("L*M^20 - 1"), 1) == P("L*M^3 - 1"));
  CHECK(standard_basis_change(-2) == BasisChange{1, -58, 0, 1});
  CHECK(code_of([] { change_basis_1n(P("L"), 0); }) == errc::basis_unavailable);
  const auto p = P(k31_triangulation);
  const auto ch = standard_basis_change(3);
  CHECK(substitute_basis(substitute_basis(p, ch), ch.inverse()) == p);
}

TEST_CASE("K3_1 in the standard basis", "[eliminate][reference]") {
  const auto r = compute_apoly(data(), s(1, 1), {Basis::standard});
  CHECK(r.polynomial == P(apoly::test::k31_text));
  CHECK(r.stats.terms == 12);
  CHECK(reconstructs(r));
  const auto tri = compute_apoly(data(), s(1, 1));
  CHECK(tri.polynomial == P(k31_triangulation));
  CHECK(change_basis_1n(tri.polynomial, 1) == r.polynomial);
}

TEST_CASE("K5_4 statistics", "[eliminate][reference]") {
  const auto r = compute_apoly(data(), s(1, 2), {Basis::standard});
  CHECK(r.stats.terms == 106);
  CHECK(r.stats.deg_m == 820);
  CHECK(r.stats.deg_l == 19);
  CHECK(reconstructs(r));
}

TEST_CASE("strip and basis change commute", "[eliminate]") {
  for (auto sl : {s(1, 1), s(1, 2), s(-1, 1), s(-1, 2)}) {
    INFO(sl.str());
    const auto a = compute_apoly(data(), sl, {Basis::standard, 0, StripOrder::strip_then_basis});
    const auto b = compute_apoly(data(), sl, {Basis::standard, 0, StripOrder::basis_then_strip});
    CHECK(a.polynomial == b.polynomial);
  }
}

TEST_CASE("exclusions", "[eliminate]") {
  for (auto sl : {"2", "3", "7/2", "11/3", "4", "1/0"}) {
    const auto ex = excluded(parse_slope(sl));
    REQUIRE(ex);
    CHECK(ex->reason == Exclusion::non_hyperbolic);
    CHECK(code_of([&] { compute_apoly(data(), parse_slope(sl)); }) == errc::excluded_slope);
  }
  const auto five = excluded(s(5, 1));
  REQUIRE(five);
  CHECK(five->reason == Exclusion::degenerate_lst);
  CHECK(five->message.find("homeomorphic to the Dehn filling along slope 10/3") != std::string::npos);
  CHECK_FALSE(excluded(s(10, 3)));
  const auto r = compute_apoly(data(), s(10, 3));
  CHECK(r.stats.terms > 0);
  CHECK(code_of([&] { compute_apoly(data(), s(10, 3), {Basis::standard}); }) == errc::basis_unavailable);
  CHECK(code_of([&] { compute_apoly(data(), s(2, 3), {Basis::standard}); }) == errc::basis_unavailable);
}

TEST_CASE("structure and canonical form", "[eliminate]") {
  for (int n = 1; n <= 4; ++n) {
    for (int sign : {1, -1}) {
      if (sign < 0 && n == 4) continue;
      const auto r = compute_apoly(data(), s(sign, n));
      INFO(r.slope.str());
      // 1/1 layers a single tetrahedron; from n = 2 on there are n + 1.
      if (sign > 0 && n >= 2) {
        CHECK(r.lst_equations == static_cast<std::size_t>(n + 1));
        CHECK(r.gamma_entries == static_cast<std::size_t>(n + 4));
      }
      CHECK(reconstructs(r));
      CHECK(content(r.polynomial) == 1);
      CHECK(r.polynomial.min_l() == 0);
      CHECK(r.polynomial.min_m() == 0);
      CHECK(r.polynomial.leading().c > 0);
    }
  }
}

TEST_CASE("result json", "[eliminate]") {
  const auto r = compute_apoly(data(), s(1, 2), {Basis::standard});
  const auto j = to_json(r);
  CHECK(j["meta"]["stats"]["terms"] == 106);
  CHECK(j["meta"]["basis"] == "standard");
  CHECK(poly_from_json(j) == r.polynomial);
  const auto back = apoly_result_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.polynomial == r.polynomial);
  CHECK(back.stripped_factors == r.stripped_factors);
  CHECK(reconstructs(back));
}

TEST_CASE("time limit", "[eliminate]") {
  CHECK(code_of([&] { compute_apoly(data(), s(1, 6), {Basis::triangulation, 1e-6}); }) == errc::time_limit);
}
