#pragma once

// Walks in the Farey triangulation.
//
// A walk starts in the triangle {3/1, 4/1, 1/0} and crosses, one edge at a
// time, towards the filling slope. Every crossing but the last layers a
// tetrahedron; the last crossed edge is folded.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apoly/error.hpp"

namespace apoly {

/// Reduced p/q with q >= 0; 1/0 is the only slope with q = 0.
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope&, const Slope&) = default;

  [[nodiscard]] std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

inline Slope reduce_slope(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw error(errc::zero_slope, "slope 0/0 is undefined");
  if (q == 0) return {1, 0};
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

inline constexpr std::int64_t max_slope_entry = 1'000'000'000;

/// Accepts "p/q" or "p".
inline Slope parse_slope(std::string_view s) {
  const auto bad = [&] { return error(errc::parse_error, "cannot parse slope \"" + std::string(s) + "\""); };
  const auto parse_int = [&](std::string_view t) {
    if (t.empty()) throw bad();
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(t), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != t.size()) throw bad();
    // keeps every determinant product inside 64 bits
    if (v > max_slope_entry || v < -max_slope_entry) throw bad();
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return reduce_slope(parse_int(s), 1);
  const auto p = parse_int(s.substr(0, slash)), q = parse_int(s.substr(slash + 1));
  if (p == 0 && q == 0) throw error(errc::parse_error, "slope 0/0 is undefined");
  return reduce_slope(p, q);
}

/// p_a q_b - p_b q_a on canonical representatives.
inline std::int64_t det(const Slope& a, const Slope& b) { return a.p * b.q - b.p * a.q; }

inline bool farey_neighbors(const Slope& a, const Slope& b) {
  const auto d = det(a, b);
  return d == 1 || d == -1;
}

using Edge = std::pair<Slope, Slope>;

/// Third vertices (u+v, u-v) of the two triangles adjacent to a Farey edge.
inline std::pair<Slope, Slope> edge_completions(const Edge& e) {
  const auto& [u, v] = e;
  if (!farey_neighbors(u, v))
    throw error(errc::not_neighbors, u.str() + " and " + v.str() + " are not Farey neighbors");
  return {reduce_slope(u.p + v.p, u.q + v.q), reduce_slope(u.p - v.p, u.q - v.q)};
}

enum class Turn { initial, left, right };

inline std::string_view to_string(Turn t) {
  switch (t) {
    case Turn::initial: return "initial";
    case Turn::left: return "L";
    case Turn::right: return "R";
  }
  return "?";
}

struct WalkStep {
  Edge crossed_edge;
  Slope old, heading, pivot, fan;
  Turn turn = Turn::initial;
};

struct Walk {
  Slope target;
  std::vector<WalkStep> steps;
  Edge fold_edge;  // (pivot, fan) of the final, folded crossing

  [[nodiscard]] std::size_t size() const { return steps.size(); }
  /// One letter per non-initial step.
  [[nodiscard]] std::string turns() const {
    std::string s;
    for (const auto& st : steps)
      if (st.turn != Turn::initial) s += to_string(st.turn);
    return s;
  }
};

inline constexpr std::array<Slope, 3> initial_triangle{Slope{3, 1}, Slope{4, 1}, Slope{1, 0}};

namespace detail {

// Zero exactly on the edge endpoints; sign tells the side of the edge.
inline __int128 side(const Slope& x, const Slope& u, const Slope& v) {
  return static_cast<__int128>(det(x, u)) * det(x, v);
}

inline int sign(__int128 x) { return (x > 0) - (x < 0); }

// Orientation of three distinct points of the circle R ∪ {∞}.
inline int cyclic_orientation(const Slope& a, const Slope& b, const Slope& c) {
  return sign(det(a, b)) * sign(det(b, c)) * sign(det(c, a));
}

struct Crossing {
  Edge edge;
  Slope old, heading;
};

inline std::vector<Crossing> crossings(const Slope& target) {
  std::array<Slope, 3> tri = initial_triangle;
  for (const auto& v : tri)
    if (v == target) throw error(errc::initial_vertex, target.str() + " is a vertex of the initial triangle");
  std::vector<Crossing> out;
  while (true) {
    int found = -1;
    for (int i = 0; i < 3; ++i) {
      const Slope& w = tri[static_cast<std::size_t>(i)];
      const Slope& u = tri[static_cast<std::size_t>((i + 1) % 3)];
      const Slope& v = tri[static_cast<std::size_t>((i + 2) % 3)];
      if (sign(side(target, u, v)) * sign(side(w, u, v)) < 0) {
        if (found >= 0) throw error(errc::verification_failed, "walk: target beyond two edges");
        found = i;
      }
    }
    if (found < 0) throw error(errc::verification_failed, "walk: no edge separates target");
    const Slope w = tri[static_cast<std::size_t>(found)];
    const Slope u = tri[static_cast<std::size_t>((found + 1) % 3)];
    const Slope v = tri[static_cast<std::size_t>((found + 2) % 3)];
    const auto [s, d] = edge_completions({u, v});
    const Slope x = s == w ? d : s;
    out.push_back({{u, v}, w, x});
    if (x == target) return out;
    tri = {u, v, x};
  }
}

inline Slope shared_vertex(const Edge& a, const Edge& b) {
  if (a.first == b.first || a.first == b.second) return a.first;
  if (a.second == b.first || a.second == b.second) return a.second;
  throw error(errc::verification_failed, "consecutive crossed edges share no vertex");
}

inline Slope other(const Edge& e, const Slope& x) { return e.first == x ? e.second : e.first; }

}  // namespace detail

/// Walk from the initial triangle to `target`.
inline Walk walk_to(const Slope& target) {
  const auto cs = detail::crossings(target);
  Walk w;
  w.target = target;
  if (cs.size() == 1)
    throw error(errc::degenerate_lst, "slope " + target.str() + " gives a degenerate layered solid torus");
  for (std::size_t k = 0; k + 1 < cs.size(); ++k) {
    const auto& c = cs[k];
    WalkStep st{c.edge, c.old, c.heading, {}, {}, Turn::initial};
    if (k == 0) {
      st.pivot = det(c.old, c.edge.first) == 1 ? c.edge.first : c.edge.second;
    } else {
      st.pivot = detail::shared_vertex(cs[k - 1].edge, c.edge);
      st.turn = detail::cyclic_orientation(cs[k - 1].old, st.pivot, cs[k - 1].heading) > 0 ? Turn::left : Turn::right;
    }
    st.fan = detail::other(c.edge, st.pivot);
    w.steps.push_back(st);
  }
  const auto& last = cs.back();
  const Slope p = detail::shared_vertex(cs[cs.size() - 2].edge, last.edge);
  w.fold_edge = {p, detail::other(last.edge, p)};
  return w;
}

inline nlohmann::json to_json(const Edge& e) { return nlohmann::json::array({e.first.str(), e.second.str()}); }

inline nlohmann::json to_json(const Walk& w) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : w.steps)
    steps.push_back({{"crossed_edge", to_json(s.crossed_edge)},
                     {"old", s.old.str()},
                     {"heading", s.heading.str()},
                     {"pivot", s.pivot.str()},
                     {"fan", s.fan.str()},
                     {"turn", to_string(s.turn)}});
  return {{"target", w.target.str()}, {"steps", std::move(steps)}, {"fold_edge", to_json(w.fold_edge)}};
}

inline Walk walk_from_json(const nlohmann::json& j) {
  try {
    const auto edge = [](const nlohmann::json& e) {
      return Edge{parse_slope(e.at(0).get<std::string>()), parse_slope(e.at(1).get<std::string>())};
    };
    const auto slope = [](const nlohmann::json& s) { return parse_slope(s.get<std::string>()); };
    Walk w;
    w.target = slope(j.at("target"));
    for (const auto& s : j.at("steps")) {
      const auto t = s.at("turn").get<std::string>();
      w.steps.push_back({edge(s.at("crossed_edge")), slope(s.at("old")), slope(s.at("heading")), slope(s.at("pivot")),
                         slope(s.at("fan")), t == "L" ? Turn::left : t == "R" ? Turn::right : Turn::initial});
    }
    w.fold_edge = edge(j.at("fold_edge"));
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

}  // namespace apoly
