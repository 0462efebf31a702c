#pragma once

// Ptolemy equations of the outside tetrahedra, of the layered solid torus,
// and the folding equation.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "apoly/farey.hpp"
#include "apoly/parent_data.hpp"
#include "apoly/rat_fun.hpp"
#include "apoly/render.hpp"

namespace apoly {

/// sign * L^l * M^m * g(a) * g(b)
struct PtolemyTerm {
  int sign = 1;
  Exponent l = 0, m = 0;
  Slope a, b;
  friend bool operator==(const PtolemyTerm&, const PtolemyTerm&) = default;
};

/// terms[0] + terms[1] + terms[2] = 0; terms[2] is always -g(x)g(y).
struct PtolemyEquation {
  std::array<PtolemyTerm, 3> terms;
  friend bool operator==(const PtolemyEquation&, const PtolemyEquation&) = default;
};

/// g(a) = g(b)
struct FoldingEquation {
  Slope a, b;
};

struct EquationSystem {
  Walk walk;
  std::vector<PtolemyEquation> outside;
  std::vector<PtolemyEquation> inside;  // one per walk step, in walk order
  FoldingEquation fold;
};

inline PtolemyEquation tet_ptolemy_equation(const ParentData& d, int tet) {
  if (std::find(d.outside_tets.begin(), d.outside_tets.end(), tet) == d.outside_tets.end())
    throw error(errc::index_out_of_range, "tetrahedron " + std::to_string(tet) + " is not outside the filled cusp");
  const auto col = static_cast<std::size_t>(2 * tet);
  const auto& mrow = d.nz.at(static_cast<std::size_t>(d.cusp_rows.m0));
  const auto& lrow = d.nz.at(static_cast<std::size_t>(d.cusp_rows.l0));
  const auto parity = [](std::int64_t b) { return b % 2 == 0 ? 1 : -1; };
  const auto g = [&](const char* label) { return d.edge_slope(tet, edge_label_index(label)); };
  PtolemyEquation eq;
  eq.terms[0] = {parity(d.b_vec.at(col + 1)), detail::checked_exp(-mrow.at(col)), detail::checked_exp(lrow.at(col)),
                 g("01"), g("23")};
  eq.terms[1] = {parity(d.b_vec.at(col)), detail::checked_exp(-mrow.at(col + 1)),
                 detail::checked_exp(lrow.at(col + 1)), g("02"), g("13")};
  eq.terms[2] = {-1, 0, 0, g("03"), g("12")};
  return eq;
}

/// g(o)g(h) + g(p)^2 - g(f)^2 = 0 per step, and the folding equation.
inline std::pair<std::vector<PtolemyEquation>, FoldingEquation> lst_equations(const Walk& w) {
  if (w.steps.empty()) throw error(errc::degenerate_walk, "walk has no layered tetrahedra");
  std::vector<PtolemyEquation> eqs;
  for (const auto& s : w.steps) {
    PtolemyEquation eq;
    eq.terms[0] = {1, 0, 0, s.old, s.heading};
    eq.terms[1] = {1, 0, 0, s.pivot, s.pivot};
    eq.terms[2] = {-1, 0, 0, s.fan, s.fan};
    eqs.push_back(eq);
  }
  return {eqs, {w.fold_edge.first, w.fold_edge.second}};
}

inline EquationSystem equation_system(const ParentData& d, const Walk& w) {
  EquationSystem sys;
  sys.walk = w;
  for (int t : d.outside_tets) sys.outside.push_back(tet_ptolemy_equation(d, t));
  auto [inside, fold] = lst_equations(w);
  sys.inside = std::move(inside);
  sys.fold = fold;
  return sys;
}

// ---- rendering ----

namespace detail {

inline std::string gamma_name(const Slope& s, bool latex) {
  return latex ? "\\gamma_{" + s.str() + "}" : "g(" + s.str() + ")";
}

inline std::string gamma_product(Slope a, Slope b, bool latex, bool sorted) {
  if (sorted && b < a) std::swap(a, b);
  if (a == b) return gamma_name(a, latex) + "^2";
  return gamma_name(a, latex) + (latex ? "" : "*") + gamma_name(b, latex);
}

}  // namespace detail

/// `sorted` orders the two factors of each product, giving a canonical string.
inline std::string render(const PtolemyEquation& eq, Style style = Style::sl_plain, bool sorted = false) {
  const bool latex = detail::is_latex(style);
  std::string out;
  bool first = true;
  for (const auto& t : eq.terms) {
    if (first)
      out += t.sign < 0 ? "-" : "";
    else
      out += t.sign < 0 ? " - " : " + ";
    first = false;
    const std::string mono = render_monomial(t.l, t.m, style);
    if (!mono.empty()) out += mono + (latex ? " " : "*");
    out += detail::gamma_product(t.a, t.b, latex, sorted);
  }
  return out + " = 0";
}

inline std::string render(const FoldingEquation& f, Style style = Style::sl_plain, bool sorted = false) {
  const bool latex = detail::is_latex(style);
  Slope a = f.a, b = f.b;
  if (sorted && b < a) std::swap(a, b);
  return detail::gamma_name(a, latex) + " = " + detail::gamma_name(b, latex);
}

/// Layered-solid-torus equation solved for the heading: g(h) = (g(f)^2 - g(p)^2)/g(o).
inline std::string render_solved(const WalkStep& s, Style style = Style::sl_plain) {
  const bool latex = detail::is_latex(style);
  const auto g = [&](const Slope& x) { return detail::gamma_name(x, latex); };
  if (latex)
    return g(s.heading) + " = \\frac{" + g(s.fan) + "^2 - " + g(s.pivot) + "^2}{" + g(s.old) + "}";
  return g(s.heading) + " = (" + g(s.fan) + "^2 - " + g(s.pivot) + "^2)/" + g(s.old);
}

inline nlohmann::json to_json(const PtolemyEquation& eq) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : eq.terms)
    terms.push_back({{"sign", t.sign}, {"L", t.l}, {"M", t.m}, {"gammas", {t.a.str(), t.b.str()}}});
  return {{"terms", terms}, {"text", render(eq)}};
}

// ---- symbolic evaluation ----

/// Left-hand side with each g(s) replaced by gammas.at(s).
inline RatFun substitute(const PtolemyEquation& eq, const std::map<Slope, RatFun>& gammas) {
  const auto get = [&](const Slope& s) -> const RatFun& {
    const auto it = gammas.find(s);
    if (it == gammas.end()) throw error(errc::index_out_of_range, "no value for gamma " + s.str());
    return it->second;
  };
  RatFun sum;
  for (const auto& t : eq.terms) {
    const RatFun coeff(LaurentPoly::monomial(Integer(t.sign), t.l, t.m));
    sum = sum + coeff * get(t.a) * get(t.b);
  }
  return sum;
}

// ---- validation ----

struct ValidationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  [[nodiscard]] bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.ok; });
  }
  [[nodiscard]] std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.name);
    return out;
  }
};

/// Outside gamma forms with the removed edge's gamma set to 1.
inline std::map<Slope, RatFun> outside_gamma_map(const ParentData& d) {
  std::map<Slope, RatFun> g = d.outside_gamma_forms;
  g[d.removed_slope()] = RatFun(1);
  return g;
}

/// Checks every invariant of the parent data; never throws.
inline ValidationReport validate_parent(const ParentData& d) {
  ValidationReport rep;
  const auto check = [&](std::string name, auto&& fn) {
    ValidationCheck c{std::move(name), false, {}};
    try {
      c.detail = fn();
      c.ok = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    rep.checks.push_back(std::move(c));
    return rep.checks.back().ok;
  };
  const auto rows = d.row_names.size();
  const auto tets = static_cast<std::size_t>(std::max(d.num_tets, 0));
  const bool shape_ok = check("shape", [&]() -> std::string {
    if (d.num_tets <= 0) return "num_tets must be positive";
    if (d.incidence.size() != rows || d.nz.size() != rows) return "row count mismatch";
    for (const auto& r : d.incidence)
      if (r.size() != 3 * tets) return "incidence needs 3 columns per tetrahedron";
    for (const auto& r : d.nz)
      if (r.size() != 2 * tets) return "nz needs 2 columns per tetrahedron";
    if (d.c_vec.size() != rows) return "c length mismatch";
    if (d.b_vec.size() != 2 * tets) return "b length mismatch";
    if (d.edge_map.size() != tets) return "edge_map needs one entry per tetrahedron";
    if (d.edge_row_count <= 0 || static_cast<std::size_t>(d.edge_row_count) > rows) return "bad edge_row_count";
    for (int r : {d.cusp_rows.m0, d.cusp_rows.l0, d.cusp_rows.m1, d.cusp_rows.l1})
      if (r < d.edge_row_count || static_cast<std::size_t>(r) >= rows) return "cusp row index out of range";
    for (const auto* v : {&d.outside_tets, &d.filled_tets})
      for (int t : *v)
        if (t < 0 || static_cast<std::size_t>(t) >= tets) return "tetrahedron index out of range";
    for (const auto& m : d.edge_map)
      for (const auto& cls : m)
        if (d.edge_slopes.count(cls) == 0) return "edge_map names unknown class " + cls;
    for (int r = 0; r < d.edge_row_count; ++r)
      if (d.edge_slopes.count(d.row_names[static_cast<std::size_t>(r)]) == 0) return "edge row without class entry";
    return {};
  });
  if (!shape_ok) return rep;

  const auto derived = derive_nz(d.incidence, d.edge_row_count);
  check("NZ re-derived from incidence", [&]() -> std::string {
    return derived.first == d.nz ? "" : "nz differs from derive_nz(incidence)";
  });
  check("C re-derived from incidence", [&]() -> std::string {
    return derived.second == d.c_vec ? "" : "c differs from derive_nz(incidence)";
  });
  check("NZ·B=C", [&]() -> std::string {
    for (std::size_t r = 0; r < rows; ++r) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 2 * tets; ++k) s += d.nz[r][k] * d.b_vec[k];
      if (s != d.c_vec[r]) return "row " + d.row_names[r] + " gives " + std::to_string(s);
    }
    return {};
  });
  check("filled-cusp zero constraint", [&]() -> std::string {
    for (int t : d.filled_tets)
      if (d.b_vec[static_cast<std::size_t>(2 * t)] != 0 || d.b_vec[static_cast<std::size_t>(2 * t + 1)] != 0)
        return "B is nonzero on tetrahedron " + std::to_string(t);
    return {};
  });
  check("tetrahedron edge count", [&]() -> std::string {
    for (std::size_t t = 0; t < tets; ++t)
      for (std::size_t k = 0; k < 3; ++k) {
        std::int64_t s = 0;
        for (int r = 0; r < d.edge_row_count; ++r) s += d.incidence[static_cast<std::size_t>(r)][3 * t + k];
        if (s != 2) return "tetrahedron " + std::to_string(t) + " column " + "abc"[k] + " sums to " + std::to_string(s);
      }
    return {};
  });
  check("edge map matches incidence", [&]() -> std::string {
    for (std::size_t t = 0; t < tets; ++t)
      for (int r = 0; r < d.edge_row_count; ++r) {
        const auto& cls = d.row_names[static_cast<std::size_t>(r)];
        std::array<std::int64_t, 3> count{};
        for (std::size_t i = 0; i < 6; ++i)
          if (d.edge_map[t][i] == cls) ++count[std::min(i, 5 - i)];
        for (std::size_t k = 0; k < 3; ++k)
          if (count[k] != d.incidence[static_cast<std::size_t>(r)][3 * t + k])
            return "tetrahedron " + std::to_string(t) + ", class " + cls;
      }
    return {};
  });
  check("removed edge row", [&]() -> std::string {
    const int removed = d.row_index(d.removed_edge);
    if (removed >= d.edge_row_count) return "removed row is not an edge row";
    if (!d.edge_slopes.at(d.removed_edge)) return "removed edge has no slope";
    // C with the removed row deleted must have a nonzero entry among its first num_tets - 1.
    std::vector<std::int64_t> flat;
    for (std::size_t r = 0; r < rows; ++r)
      if (static_cast<int>(r) != removed) flat.push_back(d.c_vec[r]);
    for (std::size_t i = 0; i + 1 < tets && i < flat.size(); ++i)
      if (flat[i] != 0) return {};
    return "first entries of C-flat vanish";
  });
  const bool forms_ok = check("outside gamma forms present", [&]() -> std::string {
    for (int t : d.outside_tets)
      for (int i = 0; i < 6; ++i) {
        const Slope s = d.edge_slope(t, i);
        if (s != d.removed_slope() && d.outside_gamma_forms.count(s) == 0) return "missing form for " + s.str();
      }
    return {};
  });
  if (forms_ok) {
    const auto gammas = outside_gamma_map(d);
    for (int t : d.outside_tets)
      check("outside Ptolemy equation of tetrahedron " + std::to_string(t), [&]() -> std::string {
        const RatFun r = substitute(tet_ptolemy_equation(d, t), gammas);
        return r.is_zero() ? "" : "residual " + render(r);
      });
  }
  return rep;
}

inline nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : r.checks) a.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", a}};
}

/// Reads and validates; throws VerificationFailed naming the failing checks.
inline ParentData load_parent(const std::string& path = default_parent_path()) {
  ParentData d = read_parent(path);
  const auto rep = validate_parent(d);
  if (!rep.ok()) {
    std::string names;
    for (const auto& f : rep.failures()) names += (names.empty() ? "" : ", ") + f;
    throw error(errc::verification_failed, "parent data " + path + " fails: " + names);
  }
  return d;
}

}  // namespace apoly
