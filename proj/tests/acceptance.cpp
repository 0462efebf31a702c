// One pass/fail line per acceptance criterion, each with its time budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "apoly/cli.hpp"
#include "apoly/oracle.hpp"
#include "golden.hpp"
#include "test_support.hpp"

using namespace apoly;

namespace {

const ParentData& data() {
  static const ParentData d = load_parent();
  return d;
}

Slope s(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& what, double budget_s, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.ok && secs < budget_s;
  if (o.ok && !ok) o.detail = "over time budget";
  failures += ok ? 0 : 1;
  std::printf("criterion %d: %s  %s  [%.3f s / %.0f s]%s%s\n", id, ok ? "PASS" : "FAIL", what.c_str(), secs, budget_s,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

int cli_run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out != nullptr) *out = o.str();
  return code;
}

bool walk_valid(const Walk& w, const Slope& t) {
  std::set<Slope> tri(initial_triangle.begin(), initial_triangle.end());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto& st = w.steps[k];
    if (!farey_neighbors(st.crossed_edge.first, st.crossed_edge.second)) return false;
    const auto [a, b] = edge_completions(st.crossed_edge);
    if (std::set<Slope>{a, b} != std::set<Slope>{st.old, st.heading}) return false;
    if (tri != std::set<Slope>{st.pivot, st.fan, st.old}) return false;
    if (k > 0) {
      const auto& prev = w.steps[k - 1].crossed_edge;
      if (prev.first != st.pivot && prev.second != st.pivot) return false;
      if (st.turn == Turn::initial) return false;
    }
    tri = {st.pivot, st.fan, st.heading};
  }
  return tri.count(w.fold_edge.first) == 1 && tri.count(w.fold_edge.second) == 1 &&
         farey_neighbors(w.fold_edge.first, t) && farey_neighbors(w.fold_edge.second, t);
}

}  // namespace

int main() {
  criterion(1, "K3_1 standard-basis polynomial equals the published one", 1, [] {
    std::string out;
    const int code = cli_run({"apoly", "1/1", "--basis", "standard"}, &out);
    const auto got = parse_poly(out.substr(0, out.find('\n')));
    const auto want = canonical(parse_poly(reference::k31_sl2));
    if (code != 0) return Outcome{false, "exit " + std::to_string(code)};
    return Outcome{got == want && got.terms().size() == 12, got == want ? "" : "got " + render(got)};
  });

  criterion(2, "K3_1 PSL rendering equals the published display", 1, [] {
    const auto r = compute_apoly(data(), s(1, 1), {Basis::standard});
    const auto got = render(r.polynomial, Style::psl_latex);
    std::string plain;
    cli_run({"apoly", "1/1", "--basis", "standard", "--rep", "psl2"}, &plain);
    const bool ok = strip_whitespace(got) == strip_whitespace(reference::k31_psl_latex) &&
                    plain.rfind("l^3 - l^(5/2)*m^10", 0) == 0;
    return Outcome{ok, ok ? "" : "got " + got};
  });

  criterion(3, "K5_4: 106 terms, degree 820 in M, 19 in L", 30, [] {
    std::string out;
    const int code = cli_run({"apoly", "1/2", "--basis", "standard", "--format", "json"}, &out);
    const auto st = nlohmann::json::parse(out)["meta"]["stats"];
    const bool ok = code == 0 && st["terms"] == reference::k54_terms && st["deg_M"] == reference::k54_deg_m &&
                    st["deg_L"] == reference::k54_deg_l;
    return Outcome{ok, ok ? "" : st.dump()};
  });

  criterion(4, "equation systems for 1/n (3..10) and -1/n (2..10) match the pattern", 1, [] {
    for (int sign : {1, -1})
      for (int n = sign > 0 ? 3 : 2; n <= 10; ++n) {
        const auto [out, in] = test::rendered_system(equation_system(data(), walk_to(s(sign, n))));
        if (out != test::outside_golden() || in != test::inside_golden(sign, n))
          return Outcome{false, "mismatch at " + s(sign, n).str()};
      }
    return Outcome{true, ""};
  });

  criterion(5, "excluded slopes rejected with their reason, 10/3 computed", 1, [] {
    const std::vector<std::pair<std::string, Exclusion>> expect{
        {"2", Exclusion::non_hyperbolic},    {"3", Exclusion::non_hyperbolic}, {"7/2", Exclusion::non_hyperbolic},
        {"11/3", Exclusion::non_hyperbolic}, {"4", Exclusion::non_hyperbolic}, {"5", Exclusion::degenerate_lst},
        {"1/0", Exclusion::non_hyperbolic}};
    for (const auto& [text, why] : expect) {
      const auto ex = excluded(parse_slope(text));
      if (!ex || ex->reason != why) return Outcome{false, text + " has the wrong reason"};
      if (cli_run({"apoly", text}) != cli::exit_user) return Outcome{false, text + " not rejected"};
    }
    if (excluded(s(5, 1))->message.find("10/3") == std::string::npos) return Outcome{false, "5 lacks the 10/3 hint"};
    std::string out;
    if (cli_run({"apoly", "10/3", "--basis", "triangulation"}, &out) != 0 || out.empty())
      return Outcome{false, "10/3 failed"};
    return Outcome{true, ""};
  });

  criterion(6, "triangulation K3_1 divides the resultant elimination for 1/1", 60, [] {
    const auto res = resultant_eliminate(data(), s(1, 1));
    const auto k31 = compute_apoly(data(), s(1, 1)).polynomial;
    return Outcome{try_exact_div(res, k31).has_value(), ""};
  });

  criterion(7, "Ptolemy residuals < 1e-8 at roots for 1/1..1/4, 20 seeded trials each", 60, [] {
    long double worst = 0;
    for (int n = 1; n <= 4; ++n) {
      const auto r = compute_apoly(data(), s(1, n), {Basis::standard});
      const auto rep = numeric_residual(data(), s(1, n), r.polynomial, Basis::standard, 20, 1);
      if (rep.trials.size() != 20) return Outcome{false, "trial count"};
      worst = std::max(worst, rep.max_residual);
    }
    std::ostringstream o;
    o << "max residual " << static_cast<double>(worst);
    return Outcome{worst < 1e-8L, o.str()};
  });

  criterion(8, "reconstruction holds for batch 1..4 and -1/1..-1/3", 120, [] {
    const auto dir = std::filesystem::temp_directory_path() / "apoly_acceptance_batch";
    std::filesystem::remove_all(dir);
    if (cli_run({"batch", "--from", "1", "--to", "4", "--out", dir.string()}) != 0)
      return Outcome{false, "batch failed"};
    for (int n = 1; n <= 4; ++n) {
      std::ifstream in(dir / ("apoly_1_" + std::to_string(n) + ".json"));
      if (!in || !reconstructs(apoly_result_from_json(nlohmann::json::parse(in))))
        return Outcome{false, "1/" + std::to_string(n)};
    }
    for (int n = 1; n <= 3; ++n)
      if (!reconstructs(compute_apoly(data(), s(-1, n)))) return Outcome{false, "-1/" + std::to_string(n)};
    return Outcome{true, ""};
  });

  criterion(9, "property suites, 1000 random cases each", 60, [] {
    std::mt19937_64 rng(9);
    using test::random_poly;
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
      if (!((a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a && a + b == b + a))
        return Outcome{false, "ring axioms"};
    }
    for (int i = 0; i < 1000;) {
      const auto p = random_poly(rng, 4), q = random_poly(rng, 4), r = random_poly(rng, 3);
      if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
      ++i;
      const auto g = poly_gcd(p, q);
      if (!try_exact_div(p, g) || !try_exact_div(q, g) || !equal_up_to_unit(poly_gcd(p * r, q * r), g * r))
        return Outcome{false, "gcd divisibility"};
    }
    std::uniform_int_distribution<int> pd(-50, 50), qd(0, 50);
    for (int i = 0; i < 1000;) {
      const int p = pd(rng), q = qd(rng);
      if (std::gcd(p, q) != 1) continue;
      const auto t = reduce_slope(p, q);
      try {
        if (!walk_valid(walk_to(t), t)) return Outcome{false, "walk to " + t.str()};
        ++i;
      } catch (const error& e) {
        if (e.code() != errc::degenerate_lst && e.code() != errc::initial_vertex)
          return Outcome{false, "walk to " + t.str()};
      }
    }
    std::uniform_int_distribution<int> small(-3, 3);
    for (int i = 0; i < 1000;) {
      const BasisChange ch{small(rng), small(rng), small(rng), small(rng)};
      if (!ch.unimodular()) continue;
      ++i;
      const auto p = random_poly(rng, 5);
      if (substitute_basis(substitute_basis(p, ch), ch.inverse()) != p) return Outcome{false, "basis inverse"};
    }
    return Outcome{true, ""};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
