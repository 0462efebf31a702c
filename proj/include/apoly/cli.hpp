#pragma once

// Command-line front end. Exit codes: 0 success, 2 user or slope error
// (including time limits), 3 internal verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "apoly/eliminate.hpp"
#include "apoly/farey.hpp"
#include "apoly/ptolemy.hpp"
#include "apoly/verify.hpp"

namespace apoly::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_user = 2;
inline constexpr int exit_internal = 3;

inline int exit_code(errc e) {
  switch (e) {
    case errc::parse_error:
    case errc::zero_slope:
    case errc::not_neighbors:
    case errc::degenerate_lst:
    case errc::initial_vertex:
    case errc::excluded_slope:
    case errc::basis_unavailable:
    case errc::time_limit:
      return exit_user;
    default:
      return exit_internal;
  }
}

struct Settings {
  std::string data_path;
  bool json = false;
  std::string rep = "sl2";
  std::string format = "plain";
  std::string basis = "triangulation";
  std::string out;
  double max_seconds = 300;
  std::uint64_t seed = 1;
  int trials = 20;
  int from = 1, to = 4;
  unsigned jobs = 0;
};

inline Style style_of(const Settings& s) {
  if (s.format == "json") return Style::json;
  const bool psl = s.rep == "psl2";
  if (s.format == "latex") return psl ? Style::psl_latex : Style::sl_latex;
  return psl ? Style::psl_plain : Style::sl_plain;
}

inline Basis basis_of(const Settings& s) { return s.basis == "standard" ? Basis::standard : Basis::triangulation; }

/// Excluded slopes are refused before anything else is done.
inline Slope checked_slope(const std::string& text) {
  const Slope s = parse_slope(text);
  if (const auto ex = excluded(s)) throw error(errc::excluded_slope, ex->message);
  return s;
}

inline ParentData load_data(const Settings& s) {
  return load_parent(s.data_path.empty() ? default_parent_path() : s.data_path);
}

inline std::string default_out_dir() {
  if (const char* env = std::getenv("APOLY_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "results";
}

// ---- walk ----

inline int cmd_walk(const std::string& slope, const Settings& st, std::ostream& out) {
  const Walk w = walk_to(checked_slope(slope));
  if (st.json) {
    out << to_json(w).dump(2) << '\n';
    return exit_ok;
  }
  const auto turns = w.turns();
  out << "walk to " << w.target.str() << ": " << w.size() << " tetrahedra, turns "
      << (turns.empty() ? "-" : turns) << '\n';
  const auto col = [&](const std::string& x) { out << std::left << std::setw(9) << x; };
  col("step"), col("o"), col("h"), col("p"), col("f"), col("turn");
  out << '\n';
  for (std::size_t k = 0; k < w.steps.size(); ++k) {
    const auto& s = w.steps[k];
    col(std::to_string(k + 1)), col(s.old.str()), col(s.heading.str()), col(s.pivot.str()), col(s.fan.str());
    out << to_string(s.turn) << '\n';
  }
  out << "fold: (" << w.fold_edge.first.str() << ", " << w.fold_edge.second.str() << ")\n";
  return exit_ok;
}

// ---- equations ----

inline int cmd_equations(const std::string& slope, const Settings& st, std::ostream& out) {
  const Slope s = checked_slope(slope);
  const ParentData d = load_data(st);
  const auto sys = equation_system(d, walk_to(s));
  const Style style = style_of(st);
  if (style == Style::json) {
    nlohmann::json o = nlohmann::json::array(), in = nlohmann::json::array();
    for (const auto& e : sys.outside) o.push_back(to_json(e));
    for (const auto& e : sys.inside) in.push_back(to_json(e));
    out << nlohmann::json{{"slope", s.str()},
                          {"outside", o},
                          {"inside", in},
                          {"fold", {sys.fold.a.str(), sys.fold.b.str()}},
                          {"fold_text", render(sys.fold)}}
               .dump(2)
        << '\n';
    return exit_ok;
  }
  out << "outside:\n";
  for (const auto& e : sys.outside) out << "  " << render(e, style) << '\n';
  out << "inside:\n";
  for (const auto& e : sys.inside) out << "  " << render(e, style) << '\n';
  out << "folding:\n  " << render(sys.fold, style) << '\n';
  return exit_ok;
}

// ---- apoly ----

inline nlohmann::json partial_report(const Slope& s, const error& e, double seconds, const Settings& st) {
  nlohmann::json j{{"slope", s.str()},
                   {"status", std::string(to_string(e.code()))},
                   {"message", e.what()},
                   {"elapsed_s", seconds},
                   {"max_seconds", st.max_seconds}};
  try {
    j["lst_equations"] = walk_to(s).size();
  } catch (const error&) {
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw error(errc::parse_error, "cannot write " + path);
  f << text;
}

inline int cmd_apoly(const std::string& slope, const Settings& st, std::ostream& out, std::ostream& err) {
  const Slope s = checked_slope(slope);
  const ParentData d = load_data(st);
  const auto t0 = std::chrono::steady_clock::now();
  APolyResult r;
  try {
    r = compute_apoly(d, s, {basis_of(st), st.max_seconds});
  } catch (const error& e) {
    if (e.code() != errc::time_limit) throw;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto rep = partial_report(s, e, secs, st);
    (st.format == "json" ? out : err) << rep.dump(2) << '\n';
    return exit_user;
  }
  const Style style = style_of(st);
  const std::string text =
      style == Style::json ? to_json(r, st.rep == "psl2").dump(2) + "\n" : render(r.polynomial, style) + "\n";
  if (!st.out.empty()) {
    write_file(st.out, text);
    out << "wrote " << st.out << " (" << r.stats.terms << " terms, deg L " << r.stats.deg_l << ", deg M "
        << r.stats.deg_m << ")\n";
  } else {
    out << text;
  }
  return exit_ok;
}

// ---- batch ----

struct BatchEntry {
  std::int64_t n = 0;
  int code = exit_ok;
  std::string file;
  std::string message;
  PolyStats stats;
  double ms = 0;
};

inline std::string batch_file_name(const Slope& s) {
  return "apoly_" + std::string(s.p < 0 ? "m" : "") + std::to_string(s.p < 0 ? -s.p : s.p) + "_" +
         std::to_string(s.q) + ".json";
}

inline int cmd_batch(const Settings& st, std::ostream& out, std::ostream& err) {
  if (st.from > st.to) throw error(errc::parse_error, "--from must not exceed --to");
  const ParentData d = load_data(st);
  const std::string dir = st.out.empty() ? default_out_dir() : st.out;
  std::filesystem::create_directories(dir);
  std::vector<BatchEntry> entries;
  for (std::int64_t n = st.from; n <= st.to; ++n) entries.push_back({n, exit_ok, {}, {}, {}, 0});

  std::atomic<std::size_t> next{0};
  std::mutex io;
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < entries.size();) {
      auto& e = entries[i];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        if (e.n == 0) throw error(errc::excluded_slope, "slope 1/0 is non-hyperbolic");
        const Slope s = reduce_slope(1, e.n);
        if (const auto ex = excluded(s)) throw error(errc::excluded_slope, ex->message);
        const auto r = compute_apoly(d, s, {basis_of(st), st.max_seconds});
        if (!reconstructs(r)) throw error(errc::verification_failed, "reconstruction invariant fails");
        e.file = (std::filesystem::path(dir) / batch_file_name(s)).string();
        write_file(e.file, to_json(r, st.rep == "psl2").dump(2) + "\n");
        e.stats = r.stats;
      } catch (const error& ex) {
        e.code = exit_code(ex.code());
        e.message = ex.what();
      } catch (const std::exception& ex) {
        e.code = exit_internal;
        e.message = ex.what();
      }
      e.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const std::lock_guard<std::mutex> lock(io);
      if (e.code == exit_ok)
        out << "1/" << e.n << ": " << e.stats.terms << " terms -> " << e.file << '\n';
      else
        err << "1/" << e.n << ": " << e.message << '\n';
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned jobs = std::min<unsigned>(st.jobs == 0 ? hw : st.jobs, static_cast<unsigned>(entries.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  int code = exit_ok;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& e : entries) {
    code = std::max(code, e.code);
    nlohmann::json j{{"slope", "1/" + std::to_string(e.n)}, {"exit_code", e.code}, {"ms", e.ms}};
    if (e.code == exit_ok) {
      j["file"] = e.file;
      j["stats"] = {{"terms", e.stats.terms}, {"deg_L", e.stats.deg_l}, {"deg_M", e.stats.deg_m}};
    } else {
      j["message"] = e.message;
    }
    summary.push_back(j);
  }
  write_file((std::filesystem::path(dir) / "batch_summary.json").string(), summary.dump(2) + "\n");
  return code;
}

// ---- verify ----

inline int cmd_verify(const Settings& st, std::ostream& out) {
  VerifyOptions opt;
  if (!st.data_path.empty()) opt.data_path = st.data_path;
  opt.seed = st.seed;
  opt.trials = st.trials;
  const auto rep = run_verification(opt);
  if (st.json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    std::size_t passed = 0;
    for (const auto& c : rep.checks) {
      passed += c.ok ? 1 : 0;
      out << (c.ok ? "PASS  " : "FAIL  ") << std::left << std::setw(58) << c.name << std::right << std::fixed
          << std::setprecision(1) << std::setw(10) << c.ms << " ms";
      if (!c.ok) out << "  " << c.detail;
      out << '\n';
    }
    out << passed << "/" << rep.checks.size() << " checks passed\n";
  }
  return rep.ok() ? exit_ok : exit_internal;
}

// ---- entry point ----

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"A-polynomials of Dehn fillings of the Whitehead sister link"};
  app.name("apoly");
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  std::string slope;
  app.add_option("--data", st.data_path, "parent triangulation JSON (default: $APOLY_DATA or the shipped file)");

  const auto add_slope = [&](CLI::App* c) { c->add_option("slope", slope, "filling slope p/q")->required(); };
  const auto add_rep = [&](CLI::App* c) {
    c->add_option("--rep", st.rep, "sl2 (L, M) or psl2 (l = L^2, m = M^2)")
        ->check(CLI::IsMember({"sl2", "psl2"}));
  };
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", st.format, "plain, latex or json")->check(CLI::IsMember({"plain", "latex", "json"}));
  };
  const auto add_common = [&](CLI::App* c) {
    c->add_option("--basis", st.basis, "triangulation or standard (slopes 1/n only)")
        ->check(CLI::IsMember({"triangulation", "standard"}));
    c->add_option("--max-seconds", st.max_seconds, "time limit per slope (0: none)")->check(CLI::NonNegativeNumber);
  };

  auto* walk = app.add_subcommand("walk", "Farey walk and layered solid torus steps");
  add_slope(walk);
  walk->add_flag("--json", st.json);

  auto* eqs = app.add_subcommand("equations", "Ptolemy equation system of the filling");
  add_slope(eqs);
  add_rep(eqs);
  add_format(eqs);

  auto* ap = app.add_subcommand("apoly", "A-polynomial of the filling");
  add_slope(ap);
  add_rep(ap);
  add_format(ap);
  add_common(ap);
  ap->add_option("--out", st.out, "write the result to this file");

  auto* ver = app.add_subcommand("verify", "run the check suite");
  ver->add_flag("--json", st.json);
  ver->add_option("--seed", st.seed, "seed of the numeric trials");
  ver->add_option("--trials", st.trials, "numeric trials per slope")->check(CLI::PositiveNumber);

  auto* bat = app.add_subcommand("batch", "compute 1/n for a range of n, one JSON file per slope");
  bat->add_option("--from", st.from)->required();
  bat->add_option("--to", st.to)->required();
  bat->add_option("--out", st.out, "output directory (default: $APOLY_OUT_DIR or ./results)");
  bat->add_option("--jobs", st.jobs, "worker threads (0: all cores)");
  add_rep(bat);
  add_common(bat);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.back()->help());
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_user;
  }

  try {
    if (*walk) return cmd_walk(slope, st, out);
    if (*eqs) return cmd_equations(slope, st, out);
    if (*ap) return cmd_apoly(slope, st, out, err);
    if (*ver) return cmd_verify(st, out);
    if (*bat) return cmd_batch(st, out, err);
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_user;
}

}  // namespace apoly::cli
