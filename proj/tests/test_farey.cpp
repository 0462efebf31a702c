#include <catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>

#include "apoly/farey.hpp"

using namespace apoly;

namespace {

Slope S(std::string_view s) { return parse_slope(s); }

std::vector<std::string> headings(const Walk& w) {
  std::vector<std::string> out;
  for (const auto& s : w.steps) out.push_back(s.heading.str());
  return out;
}

std::set<Slope> as_set(const Edge& e) { return {e.first, e.second}; }

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return errc::verification_failed;
}

}  // namespace

TEST_CASE("slope reduction", "[farey]") {
  CHECK(reduce_slope(2, 4) == Slope{1, 2});
  CHECK(reduce_slope(-1, -1) == Slope{1, 1});
  CHECK(reduce_slope(3, 0) == Slope{1, 0});
  CHECK(reduce_slope(-3, 0) == Slope{1, 0});
  CHECK(reduce_slope(0, -7) == Slope{0, 1});
  CHECK(reduce_slope(6, -4) == Slope{-3, 2});
  CHECK(code_of([] { reduce_slope(0, 0); }) == errc::zero_slope);
}

TEST_CASE("slope parsing", "[farey]") {
  CHECK(S("10/3") == Slope{10, 3});
  CHECK(S("4") == Slope{4, 1});
  CHECK(S("-1/2") == Slope{-1, 2});
  CHECK(S("1/0") == Slope{1, 0});
  CHECK(S("2/-4") == Slope{-1, 2});
  for (auto bad : {"0/0", "", "1/", "/2", "a", "1/2x", "1.5", "99999999999/1"})
    CHECK(code_of([&] { parse_slope(bad); }) == errc::parse_error);
}

TEST_CASE("edge completions", "[farey]") {
  const auto set2 = [](std::pair<Slope, Slope> p) { return std::set<Slope>{p.first, p.second}; };
  CHECK(set2(edge_completions({S("1/0"), S("1/1")})) == std::set<Slope>{S("2/1"), S("0/1")});
  CHECK(set2(edge_completions({S("3/1"), S("1/0")})) == std::set<Slope>{S("4/1"), S("2/1")});
  CHECK(set2(edge_completions({S("0/1"), S("1/3")})) == std::set<Slope>{S("1/4"), S("1/2")});
  CHECK(code_of([] { edge_completions({Slope{1, 2}, Slope{3, 1}}); }) == errc::not_neighbors);
}

TEST_CASE("walk to 1/1", "[farey]") {
  const auto w = walk_to(S("1/1"));
  REQUIRE(w.size() == 1);
  const auto& s = w.steps[0];
  CHECK(as_set(s.crossed_edge) == std::set<Slope>{S("3/1"), S("1/0")});
  CHECK(s.old == S("4/1"));
  CHECK(s.heading == S("2/1"));
  CHECK(s.pivot == S("3/1"));
  CHECK(s.fan == S("1/0"));
  CHECK(s.turn == Turn::initial);
  CHECK(as_set(w.fold_edge) == std::set<Slope>{S("2/1"), S("1/0")});
}

TEST_CASE("walk to 1/2", "[farey]") {
  const auto w = walk_to(S("1/2"));
  CHECK(headings(w) == std::vector<std::string>{"2/1", "1/1", "0/1"});
  CHECK(w.fold_edge == Edge{S("1/1"), S("0/1")});
  CHECK(w.steps[1].old == S("3/1"));
  CHECK(w.steps[1].pivot == S("1/0"));
  CHECK(w.steps[1].fan == S("2/1"));
  CHECK(w.steps[2].old == S("2/1"));
  CHECK(w.steps[2].pivot == S("1/0"));
  CHECK(w.steps[2].fan == S("1/1"));
}

TEST_CASE("walks to 1/n", "[farey]") {
  for (int n = 3; n <= 12; ++n) {
    const auto w = walk_to(reduce_slope(1, n));
    std::vector<std::string> expect{"2/1", "1/1", "0/1"};
    for (int k = 2; k < n; ++k) expect.push_back("1/" + std::to_string(k));
    CHECK(headings(w) == expect);
    CHECK(w.size() == static_cast<std::size_t>(n + 1));
    CHECK(w.steps[3].pivot == S("1/1"));
    for (std::size_t k = 4; k < w.size(); ++k) {
      CHECK(w.steps[k].pivot == S("0/1"));
      CHECK(w.steps[k].turn == Turn::left);
    }
    CHECK(w.fold_edge == Edge{S("0/1"), reduce_slope(1, n - 1)});
  }
}

TEST_CASE("walks to -1/n", "[farey]") {
  for (int n = 2; n <= 12; ++n) {
    const auto w = walk_to(reduce_slope(-1, n));
    std::vector<std::string> expect{"2/1", "1/1", "0/1"};
    for (int k = 1; k < n; ++k) expect.push_back("-1/" + std::to_string(k));
    CHECK(headings(w) == expect);
    CHECK(w.steps[3].old == S("1/1"));
    CHECK(w.steps[3].pivot == S("1/0"));
    CHECK(w.steps[3].fan == S("0/1"));
    for (std::size_t k = 4; k < w.size(); ++k) CHECK(w.steps[k].pivot == S("0/1"));
    CHECK(w.fold_edge == Edge{S("0/1"), reduce_slope(-1, n - 1)});
  }
}

TEST_CASE("degenerate and initial targets", "[farey]") {
  for (auto s : {"2/1", "7/2", "5/1"}) CHECK(code_of([&] { walk_to(S(s)); }) == errc::degenerate_lst);
  for (auto s : {"3/1", "4/1", "1/0"}) CHECK(code_of([&] { walk_to(S(s)); }) == errc::initial_vertex);
  // No other slope with small entries has an empty walk.
  for (int p = -30; p <= 30; ++p)
    for (int q = 0; q <= 30; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto s = reduce_slope(p, q);
      if (s == S("2/1") || s == S("7/2") || s == S("5/1") || s == S("3/1") || s == S("4/1") || s == S("1/0")) continue;
      CHECK(walk_to(s).size() >= 1);
    }
}

TEST_CASE("walk json round trip", "[farey]") {
  const auto w = walk_to(S("10/3"));
  const auto j = to_json(w);
  CHECK(j["steps"][0]["crossed_edge"][0].is_string());
  const auto back = walk_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.fold_edge == w.fold_edge);
}

TEST_CASE("walk validity on random slopes", "[farey][property]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pd(-50, 50), qd(0, 50);
  int count = 0;
  while (count < 1000) {
    const int p = pd(rng), q = qd(rng);
    if (std::gcd(p, q) != 1) continue;
    const auto t = reduce_slope(p, q);
    Walk w;
    try {
      w = walk_to(t);
    } catch (const error& e) {
      REQUIRE((e.code() == errc::degenerate_lst || e.code() == errc::initial_vertex));
      continue;
    }
    ++count;
    // Triangles along the walk.
    std::set<Slope> tri(initial_triangle.begin(), initial_triangle.end());
    for (std::size_t k = 0; k < w.size(); ++k) {
      const auto& s = w.steps[k];
      REQUIRE(farey_neighbors(s.crossed_edge.first, s.crossed_edge.second));
      REQUIRE(as_set(s.crossed_edge) == std::set<Slope>{s.pivot, s.fan});
      const auto [a, b] = edge_completions(s.crossed_edge);
      REQUIRE(std::set<Slope>{a, b} == std::set<Slope>{s.old, s.heading});
      REQUIRE(tri == std::set<Slope>{s.pivot, s.fan, s.old});
      std::set<Slope> next{s.pivot, s.fan, s.heading};
      std::vector<Slope> common;
      std::set_intersection(tri.begin(), tri.end(), next.begin(), next.end(), std::back_inserter(common));
      REQUIRE(common.size() == 2);
      tri = next;
      if (k > 0) {
        const auto prev = as_set(w.steps[k - 1].crossed_edge);
        REQUIRE(prev.count(s.pivot) == 1);
        REQUIRE(prev.count(s.fan) == 0);
        REQUIRE(s.turn != Turn::initial);
      }
      // Pivot persistence: the same pivot means the same turn, and vice versa.
      if (k > 1) REQUIRE((s.pivot == w.steps[k - 1].pivot) == (s.turn == w.steps[k - 1].turn));
    }
    // The folded crossing leaves the last triangle into the one containing the target.
    REQUIRE(tri.count(w.fold_edge.first) == 1);
    REQUIRE(tri.count(w.fold_edge.second) == 1);
    REQUIRE(farey_neighbors(w.fold_edge.first, t));
    REQUIRE(farey_neighbors(w.fold_edge.second, t));
    REQUIRE(farey_neighbors(w.fold_edge.first, w.fold_edge.second));
    REQUIRE(walk_to(t).steps.size() == w.size());
  }
}
