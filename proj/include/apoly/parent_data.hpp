#pragma once

// Triangulation data of the parent manifold, loaded from JSON.
//
// Row order of `incidence` / `nz`: edge rows first, then cusp rows. Column
// triples (a, b, c) per tetrahedron; a-edges are 01 and 23, b-edges 02 and 13,
// c-edges 03 and 12.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apoly/error.hpp"
#include "apoly/farey.hpp"
#include "apoly/rat_fun.hpp"
#include "apoly/render.hpp"

namespace apoly {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

inline constexpr std::array<const char*, 6> edge_labels{"01", "02", "03", "12", "13", "23"};

/// Position of the label in `edge_labels`; the column (0 = a, 1 = b, 2 = c) is min(i, 5 - i).
inline int edge_label_index(std::string_view label) {
  for (int i = 0; i < 6; ++i)
    if (label == edge_labels[static_cast<std::size_t>(i)]) return i;
  throw error(errc::index_out_of_range, "unknown edge label " + std::string(label));
}

struct CuspRows {
  int m0 = 4, l0 = 5, m1 = 6, l1 = 7;
};

struct ParentData {
  std::string name;
  int num_tets = 0;
  std::vector<std::string> row_names;
  int edge_row_count = 0;
  std::map<std::string, std::optional<Slope>> edge_slopes;
  IntMatrix incidence;
  IntMatrix nz;
  IntVector c_vec;
  IntVector b_vec;
  std::vector<std::array<std::string, 6>> edge_map;  // per tetrahedron, indexed like edge_labels
  std::string removed_edge;
  CuspRows cusp_rows;
  std::vector<int> outside_tets;
  std::vector<int> filled_tets;
  std::int64_t linking_number = 0;
  std::int64_t longitude_offset = 0;
  std::map<Slope, RatFun> outside_gamma_forms;

  [[nodiscard]] int row_index(const std::string& name_) const {
    for (std::size_t i = 0; i < row_names.size(); ++i)
      if (row_names[i] == name_) return static_cast<int>(i);
    throw error(errc::index_out_of_range, "unknown row " + name_);
  }

  /// Slope of the edge class at edge `label` of tetrahedron `tet`.
  [[nodiscard]] Slope edge_slope(int tet, int label) const {
    if (tet < 0 || tet >= static_cast<int>(edge_map.size()) || label < 0 || label >= 6)
      throw error(errc::index_out_of_range, "edge lookup out of range");
    const auto& cls = edge_map[static_cast<std::size_t>(tet)][static_cast<std::size_t>(label)];
    const auto it = edge_slopes.find(cls);
    if (it == edge_slopes.end() || !it->second)
      throw error(errc::index_out_of_range, "edge class " + cls + " carries no slope");
    return *it->second;
  }

  [[nodiscard]] Slope removed_slope() const {
    const auto it = edge_slopes.find(removed_edge);
    if (it == edge_slopes.end() || !it->second) throw error(errc::index_out_of_range, "removed edge has no slope");
    return *it->second;
  }
};

/// Per tetrahedron (a, b, c) -> (a - c, b - c); C_r = (2 if edge row) - sum of the row's c entries.
inline std::pair<IntMatrix, IntVector> derive_nz(const IntMatrix& incidence, int edge_rows) {
  if (incidence.empty()) throw error(errc::shape_mismatch, "empty incidence matrix");
  const std::size_t cols = incidence.front().size();
  if (cols == 0 || cols % 3 != 0) throw error(errc::shape_mismatch, "incidence needs 3k columns");
  IntMatrix nz;
  IntVector c;
  for (std::size_t r = 0; r < incidence.size(); ++r) {
    const auto& row = incidence[r];
    if (row.size() != cols) throw error(errc::shape_mismatch, "ragged incidence matrix");
    std::vector<std::int64_t> out;
    std::int64_t csum = 0;
    for (std::size_t t = 0; t < cols / 3; ++t) {
      out.push_back(row[3 * t] - row[3 * t + 2]);
      out.push_back(row[3 * t + 1] - row[3 * t + 2]);
      csum += row[3 * t + 2];
    }
    nz.push_back(std::move(out));
    c.push_back((static_cast<int>(r) < edge_rows ? 2 : 0) - csum);
  }
  return {nz, c};
}

inline ParentData parent_from_json(const nlohmann::json& j) {
  try {
    ParentData d;
    d.name = j.value("name", "");
    d.num_tets = j.at("num_tets").get<int>();
    d.row_names = j.at("row_names").get<std::vector<std::string>>();
    d.edge_row_count = j.at("edge_row_count").get<int>();
    for (const auto& [k, v] : j.at("edge_slopes").items())
      d.edge_slopes[k] = v.is_null() ? std::nullopt : std::optional<Slope>(parse_slope(v.get<std::string>()));
    d.incidence = j.at("incidence").get<IntMatrix>();
    d.nz = j.at("nz").get<IntMatrix>();
    d.c_vec = j.at("c").get<IntVector>();
    d.b_vec = j.at("b").get<IntVector>();
    for (const auto& t : j.at("edge_map")) {
      std::array<std::string, 6> row;
      for (std::size_t i = 0; i < 6; ++i) row[i] = t.at(edge_labels[i]).get<std::string>();
      d.edge_map.push_back(row);
    }
    d.removed_edge = j.at("removed_edge").get<std::string>();
    const auto& cr = j.at("cusp_rows");
    d.cusp_rows = {cr.at("m0").get<int>(), cr.at("l0").get<int>(), cr.at("m1").get<int>(), cr.at("l1").get<int>()};
    d.outside_tets = j.at("outside_tets").get<std::vector<int>>();
    d.filled_tets = j.at("filled_tets").get<std::vector<int>>();
    d.linking_number = j.at("linking_number").get<std::int64_t>();
    d.longitude_offset = j.at("longitude_offset").get<std::int64_t>();
    for (const auto& [k, v] : j.at("outside_gamma_forms").items())
      d.outside_gamma_forms[parse_slope(k)] = ratfun_from_json(v);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("parent data: ") + e.what());
  }
}

inline nlohmann::json to_json(const ParentData& d) {
  nlohmann::json slopes = nlohmann::json::object();
  for (const auto& [k, v] : d.edge_slopes) slopes[k] = v ? nlohmann::json(v->str()) : nlohmann::json(nullptr);
  nlohmann::json em = nlohmann::json::array();
  for (const auto& row : d.edge_map) {
    nlohmann::json t = nlohmann::json::object();
    for (std::size_t i = 0; i < 6; ++i) t[edge_labels[i]] = row[i];
    em.push_back(t);
  }
  nlohmann::json forms = nlohmann::json::object();
  for (const auto& [s, f] : d.outside_gamma_forms) forms[s.str()] = to_json(f);
  return {{"name", d.name},
          {"num_tets", d.num_tets},
          {"row_names", d.row_names},
          {"edge_row_count", d.edge_row_count},
          {"edge_slopes", slopes},
          {"incidence", d.incidence},
          {"nz", d.nz},
          {"c", d.c_vec},
          {"b", d.b_vec},
          {"edge_map", em},
          {"removed_edge", d.removed_edge},
          {"cusp_rows", {{"m0", d.cusp_rows.m0}, {"l0", d.cusp_rows.l0}, {"m1", d.cusp_rows.m1}, {"l1", d.cusp_rows.l1}}},
          {"outside_tets", d.outside_tets},
          {"filled_tets", d.filled_tets},
          {"linking_number", d.linking_number},
          {"longitude_offset", d.longitude_offset},
          {"outside_gamma_forms", forms}};
}

/// Parses without validating; see validate_parent.
inline ParentData read_parent(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open parent data file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, path + ": " + e.what());
  }
  return parent_from_json(j);
}

#ifndef APOLY_DEFAULT_DATA
#define APOLY_DEFAULT_DATA "data/whitehead_sister.json"
#endif

/// $APOLY_DATA if set, else the data file shipped with the source tree.
inline std::string default_parent_path() {
  if (const char* env = std::getenv("APOLY_DATA"); env != nullptr && *env != '\0') return env;
  return APOLY_DEFAULT_DATA;
}

}  // namespace apoly
