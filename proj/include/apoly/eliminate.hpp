#pragma once

// Substitution elimination: outside gammas in closed form, the layered solid
// torus recursion, the folding difference, removal of factors that come from
// gamma numerators and denominators, and the change to the standard basis.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apoly/farey.hpp"
#include "apoly/gcd.hpp"
#include "apoly/laurent_poly.hpp"
#include "apoly/parent_data.hpp"
#include "apoly/ptolemy.hpp"
#include "apoly/rat_fun.hpp"
#include "apoly/render.hpp"

namespace apoly {

enum class Basis { triangulation, standard };

inline std::string_view to_string(Basis b) { return b == Basis::standard ? "standard" : "triangulation"; }

// ---- exclusions ----

enum class Exclusion { non_hyperbolic, degenerate_lst };

struct ExclusionInfo {
  Exclusion reason;
  std::string message;
};

inline std::string_view to_string(Exclusion e) {
  return e == Exclusion::non_hyperbolic ? "non-hyperbolic" : "degenerate layered solid torus";
}

/// Slopes the method does not cover: non-hyperbolic fillings and degenerate layered solid tori.
inline std::optional<ExclusionInfo> excluded(const Slope& s) {
  const auto is = [&](std::int64_t p, std::int64_t q) { return s == Slope{p, q}; };
  if (is(1, 0) || is(3, 1) || is(4, 1))
    return ExclusionInfo{Exclusion::non_hyperbolic,
                         "slope " + s.str() + " is non-hyperbolic (a vertex of the initial Farey triangle)"};
  if (is(2, 1) || is(7, 2))
    return ExclusionInfo{Exclusion::non_hyperbolic, "slope " + s.str() +
                                                        " is non-hyperbolic (it would also give a degenerate "
                                                        "layered solid torus)"};
  if (is(11, 3)) return ExclusionInfo{Exclusion::non_hyperbolic, "slope 11/3 is non-hyperbolic"};
  if (is(5, 1))
    return ExclusionInfo{Exclusion::degenerate_lst,
                         "slope 5/1 gives a degenerate layered solid torus; the filling is homeomorphic to the "
                         "Dehn filling along slope 10/3"};
  return std::nullopt;
}

// ---- time budget ----

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))),
        limited_(seconds > 0) {}

  void check(const std::string& where) const {
    if (limited_ && std::chrono::steady_clock::now() > end_)
      throw error(errc::time_limit, "time limit exceeded during " + where);
  }

 private:
  std::chrono::steady_clock::time_point end_{};
  bool limited_ = false;
};

// ---- gamma table ----

struct GammaTable {
  std::map<Slope, RatFun> values;
  std::vector<Slope> order;                         // insertion order
  std::vector<LaurentPoly> accumulated_denominators;  // every denominator met before reduction

  [[nodiscard]] const RatFun& at(const Slope& s) const {
    const auto it = values.find(s);
    if (it == values.end()) throw error(errc::index_out_of_range, "gamma " + s.str() + " not computed");
    return it->second;
  }
  [[nodiscard]] bool contains(const Slope& s) const { return values.count(s) != 0; }
  void set(const Slope& s, RatFun v) {
    if (!contains(s)) order.push_back(s);
    values[s] = std::move(v);
  }
  void note_denominator(const LaurentPoly& d) {
    if (d.is_zero() || d.is_monomial()) return;
    accumulated_denominators.push_back(monomial_clear(d));
  }
};

/// gamma of the removed edge = 1 plus the parent's closed forms, checked against the outside equations.
inline GammaTable outside_gammas(const ParentData& d) {
  GammaTable t;
  t.set(d.removed_slope(), RatFun(1));
  for (const auto& [s, f] : d.outside_gamma_forms) {
    t.set(s, f);
    t.note_denominator(f.den());
  }
  for (int tet : d.outside_tets) {
    const RatFun r = substitute(tet_ptolemy_equation(d, tet), t.values);
    if (!r.is_zero())
      throw error(errc::verification_failed,
                  "outside gamma forms violate the Ptolemy equation of tetrahedron " + std::to_string(tet));
  }
  return t;
}

/// gamma_h = (gamma_f^2 - gamma_p^2) / gamma_o along the walk.
inline GammaTable chain_substitute(GammaTable t, const Walk& w, const Deadline& deadline = {}) {
  for (const auto& s : w.steps) {
    deadline.check("substitution for gamma " + s.heading.str());
    const RatFun& o = t.at(s.old);
    if (o.is_zero()) throw error(errc::zero_old_gamma, "gamma " + s.old.str() + " vanishes identically");
    const RatFun top = t.at(s.fan).squared() - t.at(s.pivot).squared();
    t.note_denominator(top.den());
    t.note_denominator(o.num());
    RatFun h = top / o;
    t.note_denominator(h.den());
    t.set(s.heading, std::move(h));
  }
  return t;
}

/// Numerator of gamma_a - gamma_b for the folded edge, monomials cleared.
inline LaurentPoly folding_polynomial(const GammaTable& t, const Walk& w) {
  const RatFun diff = t.at(w.fold_edge.first) - t.at(w.fold_edge.second);
  if (diff.is_zero()) throw error(errc::zero_polynomial, "folding difference vanishes identically");
  return monomial_clear(diff.num());
}

/// Candidate extraneous factors: accumulated denominators and all gamma numerators.
inline std::vector<LaurentPoly> strip_candidates(const GammaTable& t) {
  std::vector<LaurentPoly> c = t.accumulated_denominators;
  for (const auto& s : t.order) {
    const auto& n = t.at(s).num();
    if (!n.is_zero() && !n.is_monomial()) c.push_back(monomial_clear(n));
  }
  for (auto& p : c) p = canonical(p);
  std::sort(c.begin(), c.end(), [](const LaurentPoly& a, const LaurentPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return render(a) < render(b);
  });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  c.erase(std::remove_if(c.begin(), c.end(), [](const LaurentPoly& p) { return p.is_constant(); }), c.end());
  return c;
}

struct StripResult {
  LaurentPoly polynomial;
  std::vector<LaurentPoly> stripped;
};

/// Divides out every common factor with the candidates, then content and monomials.
inline StripResult strip_extraneous(const LaurentPoly& raw, const std::vector<LaurentPoly>& candidates,
                                    const Deadline& deadline = {}) {
  if (raw.is_zero()) throw error(errc::zero_polynomial, "cannot strip the zero polynomial");
  StripResult r{monomial_clear(raw), {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& d : candidates) {
      while (!r.polynomial.is_constant()) {
        deadline.check("factor stripping");
        const LaurentPoly g = poly_gcd(r.polynomial, d);
        if (g.is_constant()) break;
        r.polynomial = exact_div(r.polynomial, g);
        r.stripped.push_back(g);
        changed = true;
      }
    }
  }
  const Integer c = content(r.polynomial);
  if (c != 1) {
    r.stripped.emplace_back(c);
    r.polynomial = r.polynomial.divexact(c);
  }
  r.polynomial = monomial_clear(r.polynomial);
  return r;
}

/// (L, M) -> (L M^(-offset - x^2 n), M), i.e. (L, M) -> (L M^(8 - 25 n), M) for the Whitehead sister.
inline BasisChange standard_basis_change(std::int64_t n, std::int64_t linking_number = 5,
                                         std::int64_t longitude_offset = -8) {
  if (n == 0) throw error(errc::basis_unavailable, "basis change needs n != 0");
  const std::int64_t e = -longitude_offset - linking_number * linking_number * n;
  return {1, -e, 0, 1};
}

inline LaurentPoly change_basis_1n(const LaurentPoly& p, std::int64_t n, std::int64_t linking_number = 5,
                                   std::int64_t longitude_offset = -8) {
  return monomial_clear(substitute_basis(p, standard_basis_change(n, linking_number, longitude_offset)));
}

// ---- end-to-end ----

struct PolyStats {
  std::size_t terms = 0;
  std::int64_t deg_l = 0;
  std::int64_t deg_m = 0;
};

inline PolyStats stats_of(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  return {p.size(), std::int64_t{p.max_l()} - p.min_l(), std::int64_t{p.max_m()} - p.min_m()};
}

struct APolyResult {
  Slope slope;
  Basis basis = Basis::triangulation;
  LaurentPoly polynomial;
  LaurentPoly raw;  // folding numerator, in the output basis
  std::vector<LaurentPoly> stripped_factors;
  PolyStats stats;
  std::size_t lst_equations = 0;
  std::size_t gamma_entries = 0;
  double ms = 0;
};

enum class StripOrder { strip_then_basis, basis_then_strip };

struct ApolyOptions {
  Basis basis = Basis::triangulation;
  double max_seconds = 0;  // 0: unlimited
  StripOrder order = StripOrder::strip_then_basis;
};

/// n with slope = 1/n, when the standard basis is defined.
inline std::optional<std::int64_t> one_over_n(const Slope& s) {
  if (s.q == 0 || (s.p != 1 && s.p != -1)) return std::nullopt;
  return s.p * s.q;
}

/// polynomial * prod(stripped) equals raw up to sign and a monomial.
inline bool reconstructs(const APolyResult& r) {
  LaurentPoly prod = r.polynomial;
  for (const auto& f : r.stripped_factors) prod *= f;
  return equal_up_to_unit(prod, r.raw);
}

inline APolyResult compute_apoly(const ParentData& data, const Slope& slope, const ApolyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (const auto ex = excluded(slope)) throw error(errc::excluded_slope, ex->message);
  std::optional<BasisChange> change;
  if (opt.basis == Basis::standard) {
    const auto n = one_over_n(slope);
    if (!n)
      throw error(errc::basis_unavailable,
                  "the standard basis is available only for slopes 1/n and -1/n, not " + slope.str());
    change = standard_basis_change(*n, data.linking_number, data.longitude_offset);
  }
  const Deadline deadline(opt.max_seconds);
  const Walk w = walk_to(slope);
  const GammaTable table = chain_substitute(outside_gammas(data), w, deadline);
  APolyResult r;
  r.slope = slope;
  r.basis = opt.basis;
  r.lst_equations = w.size();
  r.gamma_entries = table.values.size();
  LaurentPoly raw = folding_polynomial(table, w);
  std::vector<LaurentPoly> cands = strip_candidates(table);
  if (change && opt.order == StripOrder::basis_then_strip) {
    raw = monomial_clear(substitute_basis(raw, *change));
    for (auto& c : cands) c = canonical(substitute_basis(c, *change));
  }
  auto stripped = strip_extraneous(raw, cands, deadline);
  r.raw = std::move(raw);
  r.stripped_factors = std::move(stripped.stripped);
  r.polynomial = std::move(stripped.polynomial);
  if (!reconstructs(r))
    throw error(errc::verification_failed, "stripped factors do not reconstruct the folding numerator");
  if (change && opt.order == StripOrder::strip_then_basis) {
    // a ring isomorphism, so the factorization carries over up to units
    r.polynomial = monomial_clear(substitute_basis(r.polynomial, *change));
    r.raw = monomial_clear(substitute_basis(r.raw, *change));
    for (auto& f : r.stripped_factors) f = canonical(substitute_basis(f, *change));
    if (!reconstructs(r)) throw error(errc::verification_failed, "reconstruction fails after the basis change");
  }
  r.stats = stats_of(r.polynomial);
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline nlohmann::json to_json(const APolyResult& r, bool psl = false) {
  nlohmann::json j = to_json(r.polynomial);
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : r.stripped_factors) factors.push_back(to_json(f));
  j["meta"] = {{"slope", r.slope.str()},
               {"basis", to_string(r.basis)},
               {"rep", psl ? "psl2" : "sl2"},
               {"stats", {{"terms", r.stats.terms}, {"deg_L", r.stats.deg_l}, {"deg_M", r.stats.deg_m}}},
               {"stripped_factor_count", r.stripped_factors.size()},
               {"lst_equations", r.lst_equations},
               {"gamma_entries", r.gamma_entries},
               {"reconstruction_ok", reconstructs(r)},
               {"ms", r.ms}};
  j["stripped_factors"] = factors;
  j["raw"] = to_json(r.raw);
  return j;
}

/// Inverse of to_json (timing is kept as stored).
inline APolyResult apoly_result_from_json(const nlohmann::json& j) {
  try {
    APolyResult r;
    r.polynomial = poly_from_json(j);
    const auto& m = j.at("meta");
    r.slope = parse_slope(m.at("slope").get<std::string>());
    r.basis = m.at("basis").get<std::string>() == "standard" ? Basis::standard : Basis::triangulation;
    r.lst_equations = m.value("lst_equations", std::size_t{0});
    r.gamma_entries = m.value("gamma_entries", std::size_t{0});
    r.ms = m.value("ms", 0.0);
    for (const auto& f : j.at("stripped_factors")) r.stripped_factors.push_back(poly_from_json(f));
    r.raw = poly_from_json(j.at("raw"));
    r.stats = stats_of(r.polynomial);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

}  // namespace apoly
