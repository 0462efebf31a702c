#pragma once

// The end-to-end check suite behind `apoly verify`.

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apoly/eliminate.hpp"
#include "apoly/oracle.hpp"
#include "apoly/ptolemy.hpp"
#include "apoly/reference.hpp"

namespace apoly {

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
  double ms = 0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  [[nodiscard]] bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }
};

struct VerifyOptions {
  std::string data_path = default_parent_path();
  int trials = 20;
  std::uint64_t seed = 1;
  int max_n = 4;  // numeric residuals and reconstruction for 1/1 .. 1/max_n
};

inline std::string strip_whitespace(std::string_view s) {
  std::string out;
  for (const char c : s)
    if (c != ' ' && c != '\n' && c != '\t') out += c;
  return out;
}

namespace detail {

// Runs fn, which returns "" on success or a failure description.
inline void run_check(VerifyReport& rep, std::string name, const std::function<std::string()>& fn) {
  VerifyCheck c{std::move(name), false, {}, 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.detail = fn();
    c.ok = c.detail.empty();
  } catch (const std::exception& e) {
    c.detail = e.what();
  }
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.checks.push_back(std::move(c));
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& opt = {}) {
  VerifyReport rep;
  ParentData d;
  try {
    d = read_parent(opt.data_path);
  } catch (const std::exception& e) {
    rep.checks.push_back({"parent data readable", false, e.what(), 0});
    return rep;
  }
  const auto parent = validate_parent(d);
  for (const auto& c : parent.checks) rep.checks.push_back({"parent data: " + c.name, c.ok, c.detail, 0});
  if (!parent.ok()) return rep;

  const Slope one{1, 1}, half{1, 2};
  detail::run_check(rep, "K3_1 standard polynomial", [&]() -> std::string {
    const auto r = compute_apoly(d, one, {Basis::standard});
    return r.polynomial == parse_poly(reference::k31_sl2) ? "" : "got " + render(r.polynomial);
  });
  detail::run_check(rep, "K3_1 PSL display", [&]() -> std::string {
    const auto got = render(compute_apoly(d, one, {Basis::standard}).polynomial, Style::psl_latex);
    return strip_whitespace(got) == strip_whitespace(reference::k31_psl_latex) ? "" : "got " + got;
  });
  detail::run_check(rep, "K5_4 statistics", [&]() -> std::string {
    const auto s = compute_apoly(d, half, {Basis::standard}).stats;
    if (s.terms == reference::k54_terms && s.deg_m == reference::k54_deg_m && s.deg_l == reference::k54_deg_l)
      return "";
    return "terms " + std::to_string(s.terms) + ", deg M " + std::to_string(s.deg_m) + ", deg L " +
           std::to_string(s.deg_l);
  });
  detail::run_check(rep, "exclusions", [&]() -> std::string {
    const std::vector<std::pair<Slope, Exclusion>> expect{
        {{2, 1}, Exclusion::non_hyperbolic}, {{3, 1}, Exclusion::non_hyperbolic},
        {{7, 2}, Exclusion::non_hyperbolic}, {{11, 3}, Exclusion::non_hyperbolic},
        {{4, 1}, Exclusion::non_hyperbolic}, {{5, 1}, Exclusion::degenerate_lst},
        {{1, 0}, Exclusion::non_hyperbolic}};
    for (const auto& [s, why] : expect) {
      const auto ex = excluded(s);
      if (!ex || ex->reason != why) return s.str() + " not excluded as " + std::string(to_string(why));
      try {
        compute_apoly(d, s);
        return s.str() + " was computed";
      } catch (const error& e) {
        if (e.code() != errc::excluded_slope) return s.str() + ": " + e.what();
      }
    }
    return compute_apoly(d, {10, 3}).polynomial.is_zero() ? "10/3 gave zero" : "";
  });
  detail::run_check(rep, "oracle divisibility 1/1", [&]() -> std::string {
    const auto res = resultant_eliminate(d, one);
    return try_exact_div(res, compute_apoly(d, one).polynomial) ? "" : "resultant not divisible";
  });
  for (int n = 1; n <= opt.max_n; ++n) {
    const Slope s{1, n};
    detail::run_check(rep, "numeric residuals " + s.str(), [&]() -> std::string {
      const auto r = compute_apoly(d, s, {Basis::standard});
      const auto nr = numeric_residual(d, s, r.polynomial, Basis::standard, opt.trials, opt.seed);
      return nr.ok() ? "" : "max residual " + std::to_string(static_cast<double>(nr.max_residual));
    });
  }
  std::vector<Slope> recon;
  for (int n = 1; n <= opt.max_n; ++n) recon.push_back({1, n});
  for (int n = 1; n <= 3; ++n) recon.push_back({-1, n});
  for (const auto& s : recon)
    detail::run_check(rep, "reconstruction " + s.str(),
                      [&]() -> std::string { return reconstructs(compute_apoly(d, s)) ? "" : "mismatch"; });
  return rep;
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : r.checks) a.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"ms", c.ms}});
  return {{"ok", r.ok()}, {"checks", a}};
}

}  // namespace apoly
