#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "apoly/cli.hpp"

using namespace apoly;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("apoly_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("walk command", "[cli]") {
  const auto r = run({"walk", "1/4"});
  REQUIRE(r.code == 0);
  CHECK(has(r.out, "turns LLRL"));
  CHECK(has(r.out, "fold: (0/1, 1/3)"));
  const auto j = nlohmann::json::parse(run({"walk", "1/4", "--json"}).out);
  std::vector<std::string> headings;
  for (const auto& s : j["steps"]) headings.push_back(s["heading"]);
  CHECK(headings == std::vector<std::string>{"2/1", "1/1", "0/1", "1/2", "1/3"});
  CHECK(j["fold_edge"] == nlohmann::json::array({"0/1", "1/3"}));

  const auto two = run({"walk", "2/1"});
  CHECK(two.code == 2);
  CHECK(has(two.err, "degenerate layered solid torus"));
  const auto zero = run({"walk", "0/0"});
  CHECK(zero.code == 2);
  CHECK(has(zero.err, "ParseError"));
  CHECK(run({"walk", "-1/3"}).code == 0);
  CHECK(run({"walk"}).code == 2);
}

TEST_CASE("equations command", "[cli]") {
  const auto r = run({"equations", "1/3", "--rep", "psl2"});
  REQUIRE(r.code == 0);
  CHECK(has(r.out, "l^(-1/2)*sqrt(m)*g(1/0)*g(4/1)"));
  CHECK(has(r.out, "g(1/0)*g(1/2) + g(1/1)^2 - g(0/1)^2 = 0"));
  CHECK(has(r.out, "g(0/1) = g(1/2)"));
  CHECK(has(run({"equations", "-1/2"}).out, "g(1/1)*g(-1/1) + g(1/0)^2 - g(0/1)^2 = 0"));
  CHECK(has(run({"equations", "1/2", "--format", "latex"}).out, "\\gamma_{1/1} = \\gamma_{0/1}"));
  const auto j = nlohmann::json::parse(run({"equations", "1/2", "--format", "json"}).out);
  CHECK(j["inside"].size() == 3);
  CHECK(j["outside"].size() == 2);
  CHECK(run({"equations", "1/0"}).code == 2);
  CHECK(run({"equations", "1/2", "--format", "html"}).code == 2);
}

TEST_CASE("apoly command", "[cli]") {
  const auto k31 = run({"apoly", "1/1", "--basis", "standard"});
  REQUIRE(k31.code == 0);
  CHECK(k31.out == std::string(reference::k31_sl2) + "\n");
  CHECK(run({"apoly", "1/1", "--basis", "standard", "--rep", "psl2"}).out.rfind("l^3 - l^(5/2)*m^10", 0) == 0);
  CHECK(run({"apoly", "10/3", "--basis", "triangulation"}).code == 0);
  CHECK(run({"apoly", "2/3", "--basis", "standard"}).code == 2);
  const auto five = run({"apoly", "5"});
  CHECK(five.code == 2);
  CHECK(has(five.err, "10/3"));

  const auto j = nlohmann::json::parse(run({"apoly", "1/2", "--basis", "standard", "--format", "json"}).out);
  CHECK(j["meta"]["stats"]["terms"] == 106);
  CHECK(j["meta"]["reconstruction_ok"] == true);

  const auto file = scratch("apoly") / "k31.json";
  const auto w = run({"apoly", "1/1", "--format", "json", "--out", file.string()});
  CHECK(w.code == 0);
  std::ifstream in(file);
  CHECK(apoly_result_from_json(nlohmann::json::parse(in)).stats.terms == 12);
}

TEST_CASE("time limit gives a partial report", "[cli]") {
  const auto r = run({"apoly", "1/6", "--max-seconds", "0.000001", "--format", "json"});
  CHECK(r.code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "TimeLimit");
  CHECK(j["lst_equations"] == 7);
}

TEST_CASE("batch command", "[cli]") {
  const auto dir = scratch("batch");
  const auto r = run({"batch", "--from", "1", "--to", "4", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (int n = 1; n <= 4; ++n) {
    std::ifstream in(dir / ("apoly_1_" + std::to_string(n) + ".json"));
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    const auto back = apoly_result_from_json(j);
    CHECK(reconstructs(back));
    auto bare = j;
    for (const auto* k : {"meta", "stripped_factors", "raw"}) bare.erase(k);
    CHECK(bare == to_json(back.polynomial));
  }
  std::ifstream s(dir / "batch_summary.json");
  CHECK(nlohmann::json::parse(s).size() == 4);

  // 1/0 fails, the rest still runs
  const auto dir2 = scratch("batch0");
  const auto r2 = run({"batch", "--from", "-1", "--to", "1", "--out", dir2.string()});
  CHECK(r2.code == 2);
  CHECK(std::filesystem::exists(dir2 / "apoly_m1_1.json"));
  CHECK(std::filesystem::exists(dir2 / "apoly_1_1.json"));
}

TEST_CASE("verify command", "[cli][slow]") {
  const auto r = run({"verify"});
  INFO(r.out);
  CHECK(r.code == 0);
  CHECK(has(r.out, "checks passed"));

  std::ifstream in(default_parent_path());
  auto j = nlohmann::json::parse(in);
  j["b"][4] = 1;
  const auto bad = scratch("verify") / "bad.json";
  std::filesystem::create_directories(bad.parent_path());
  std::ofstream(bad) << j.dump();
  const auto f = run({"verify", "--data", bad.string()});
  CHECK(f.code != 0);
  CHECK(has(f.out, "FAIL  parent data: filled-cusp zero constraint"));
  CHECK(run({"apoly", "1/1", "--data", bad.string()}).code == 3);
}
