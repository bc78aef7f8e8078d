// Copyright 2026 The dp2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dp2/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "dp2/geometry.hpp"
#include "dp2/kernels.hpp"
#include "dp2/orbits.hpp"
#include "dp2/param_io.hpp"

namespace dp2::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !f.write(text.data(), static_cast<std::streamsize>(text.size())) || !f.flush()) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

RhsTable load_or_build_table(int level, const SearchOptions& o, std::ostream& err) {
  RhsOptions rhs;
  rhs.fold = o.fold;
  rhs.memory_budget = o.memory_budget;
  if (o.cache_rhs.empty()) return gen_rhs_table(level, rhs);

  const std::filesystem::path path = o.cache_rhs + ".d" + std::to_string(level);
  if (std::filesystem::exists(path)) {
    RhsTable t = read_rhs_cache(path);
    if (t.level() == level && t.folded() == o.fold && t.linear_filtered()) {
      err << "level " << level << ": loaded RHS cache " << path.string() << "\n";
      return t;
    }
    err << "level " << level << ": cache " << path.string() << " does not match, rebuilding\n";
  }
  RhsTable t = gen_rhs_table(level, rhs);
  write_rhs_cache(path, t);
  return t;
}

bool admissible_shape(const Param& p) {
  const int d = p.level;
  auto deg = [](PackedPoly q) { return q.degree().value_or(-1); };
  return p.x.coeff(0).is_zero() && p.w.coeff(0).is_zero() && deg(p.x) <= d - 1 && deg(p.y) <= d &&
         deg(p.z) <= d && deg(p.w) <= 2 * d - 1;
}

}  // namespace

uint64_t parse_byte_size(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty size");
  size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid size '" + text + "'");
  }
  if (text[0] == '-') throw std::invalid_argument("invalid size '" + text + "'");
  const std::string suffix = text.substr(pos);
  int shift = 0;
  if (suffix == "K" || suffix == "k") shift = 10;
  else if (suffix == "M" || suffix == "m") shift = 20;
  else if (suffix == "G" || suffix == "g") shift = 30;
  else if (!suffix.empty()) throw std::invalid_argument("invalid size suffix '" + suffix + "'");
  if (shift != 0 && v > (~0ull >> shift)) throw std::invalid_argument("size too large '" + text + "'");
  return static_cast<uint64_t>(v) << shift;
}

std::string render_search_output(const std::vector<SolutionSet>& levels, int degree, bool fold) {
  (void)fold;
  std::ostringstream out;
  out << "# dp2 search degree=" << degree
      << " filters=constant-term,linear-term,degree-bounds,level-exact,degeneracy normalized=scalar\n";
  size_t total = 0;
  for (const SolutionSet& s : levels) {
    out << "# level=" << s.level << " raw=" << s.stats.raw << " not_level_exact=" << s.stats.not_level_exact
        << " constant_map=" << s.stats.constant_map << " reducible=" << s.stats.reducible
        << " kept_raw=" << s.stats.kept_raw << " solutions=" << s.params.size() << "\n";
    total += s.params.size();
  }
  out << "# total=" << total << "\n";
  for (const SolutionSet& s : levels) {
    for (const Param& p : s.params) out << format_param(p) << "\n";
  }
  return out.str();
}

int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.degree < 1 || o.degree > kMaxLevel) {
    err << "error: --degree must be in 1.." << kMaxLevel << "\n";
    return kUsage;
  }
  // Refuse before doing any work if the largest level cannot fit.
  {
    RhsOptions rhs;
    rhs.fold = o.fold;
    rhs.memory_budget = o.memory_budget;
    const uint64_t need = estimate_rhs_bytes(o.degree, rhs);
    if (need > o.memory_budget) {
      err << "error: level " << o.degree << " needs about " << need << " bytes for the RHS table, budget is "
          << o.memory_budget << "\n";
      return kMemoryBudget;
    }
  }

  std::vector<SolutionSet> levels;
  try {
    for (int level = 1; level <= o.degree; ++level) {
      const auto t0 = Clock::now();
      const RhsTable table = load_or_build_table(level, o, err);
      const double t_table = seconds_since(t0);
      const LhsBlocks blocks(level, o.block_size);
      MatchOptions mo;
      mo.threads = o.threads;
      mo.fold_signs = o.fold;
      uint64_t last_decile = 0;
      mo.progress = [&](uint64_t done, uint64_t total) {
        const uint64_t decile = done * 10 / total;
        if (total >= 20 && decile > last_decile) {
          last_decile = decile;
          err << "level " << level << ": " << decile * 10 << "% (" << done << "/" << total << " blocks, "
              << static_cast<int>(seconds_since(t0)) << " s)\n";
        }
      };
      const auto t1 = Clock::now();
      SolutionSet s = match(table, blocks, mo);
      const SymmetryReport sym = check_symmetries(s);
      err << "level " << level << ": table " << table.entries().size() << " entries (" << table.memory_bytes()
          << " bytes, " << t_table << " s); scanned " << s.stats.lhs_scanned << " left sides, filter hits "
          << s.stats.filter_hits << ", matched " << s.stats.matched_lhs << ", raw " << s.stats.raw
          << ", solutions " << s.params.size() << " (" << seconds_since(t1) << " s)\n";
      if (!sym.all()) {
        err << "error: level " << level << " solution set is not closed under the expected symmetries\n";
        return kFailure;
      }
      levels.push_back(std::move(s));
    }
  } catch (const MemoryBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kMemoryBudget;
  } catch (const SearchAborted& e) {
    err << "error: search aborted after " << e.blocks_done() << "/" << e.blocks_total() << " blocks: " << e.what()
        << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  const std::string text = render_search_output(levels, o.degree, o.fold);
  if (o.out.empty()) {
    out << text;
    return kOk;
  }
  if (!write_file(o.out, text, err)) return kFailure;
  for (const SolutionSet& s : levels) out << "level " << s.level << ": " << s.params.size() << " solutions\n";
  return kOk;
}

int cmd_dedup(const std::string& in, const std::string& out_path, std::ostream& out, std::ostream& err) {
  ParamFile file;
  try {
    file = read_param_file(in);
  } catch (const LineError& e) {
    err << "error: " << in << ": " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  std::vector<Param> params;
  for (size_t i = 0; i < file.lines.size(); ++i) {
    const Param& p = file.lines[i].param;
    if (!verify_param(p) || (p.x.is_zero() && p.y.is_zero() && p.z.is_zero())) {
      err << "error: " << in << ": line " << file.line_numbers[i] << ": not a solution\n";
      return kDataError;
    }
    params.push_back(scalar_normalize(p));
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());

  std::vector<CurveOrbit> orbits;
  try {
    orbits = orbit_partition(params);
  } catch (const InconsistentOrbitError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  std::map<size_t, size_t> histogram;
  for (const CurveOrbit& o : orbits) ++histogram[o.size()];

  std::ostringstream text;
  text << "# dp2 dedup parametrizations=" << params.size() << " orbits=" << orbits.size() << "\n";
  for (const CurveOrbit& o : orbits) text << format_param(o.representative) << "; orbit_size=" << o.size() << "\n";
  if (out_path.empty()) {
    out << text.str();
  } else if (!write_file(out_path, text.str(), err)) {
    return kFailure;
  }
  out << "parametrizations=" << params.size() << "\n";
  out << "orbits=" << orbits.size() << "\n";
  for (const auto& [size, count] : histogram) out << "orbit_size " << size << ": " << count << "\n";
  return kOk;
}

int cmd_verify(const std::string& in, std::ostream& out, std::ostream& err) {
  ParamFile file;
  try {
    file = read_param_file(in);
  } catch (const LineError& e) {
    err << "error: " << in << ": " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  for (size_t i = 0; i < file.lines.size(); ++i) {
    const Param& p = file.lines[i].param;
    const char* reason = nullptr;
    if (p.level > kMaxLevel) reason = "level out of range";
    else if (!verify_param(p)) reason = "x^4 + w^2 != y z^3 - y^3 z";
    else if (!admissible_shape(p)) reason = "outside the admissible degree bounds";
    else if (!is_level_exact(p)) reason = "not level-exact";
    else if (degeneracy_filter(p) != Degeneracy::kKeep) reason = "degenerate";
    if (reason) {
      err << "error: " << in << ": line " << file.line_numbers[i] << ": " << reason << "\n";
      return kFailure;
    }
  }
  out << "verified " << file.lines.size() << " lines\n";
  return kOk;
}

int cmd_geometry(bool json, std::ostream& out, std::ostream& err) {
  geometry::Report rep;
  try {
    rep = geometry::build_report();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.second ? 1 : 0;

  if (json) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : rep.values) j["values"][k] = v;
    for (const auto& [k, ok] : rep.checks) j["checks"][k] = ok;
    j["bitangent_lines"] = rep.bitangent_lines;
    j["curves"] = rep.curve_lines;
    j["passed"] = passed;
    j["total"] = rep.checks.size();
    out << j.dump(2) << "\n";
  } else {
    auto value = [&](const std::string& key) {
      for (const auto& [k, v] : rep.values)
        if (k == key) return v;
      return std::string();
    };
    auto rows = [&](const std::string& key) {
      std::string v = value(key);
      std::replace(v.begin(), v.end(), ';', '\n');
      return v;
    };
    out << "== bitangents\n";
    for (const auto& l : rep.bitangent_lines) out << l << "\n";
    out << "\n== curves (curve -> Frobenius image, class)\n";
    for (const auto& l : rep.curve_lines) out << l << "\n";
    out << "\n== Picard basis\n" << value("picard_basis") << "\n";
    out << "\n== Gram matrix\n" << rows("gram") << "\n";
    out << "\n== Frobenius matrix\n" << rows("frobenius") << "\n";
    out << "\n== point counts\n";
    for (const char* f : {"F3", "F9", "F81"}) {
      out << f << ": enumerated " << value(std::string("points_") + f) << ", Weil " << value(std::string("weil_") + f)
          << "\n";
    }
    out << "\n== invariant factors of H^1\n" << value("h1") << "\n";
    out << "\n== automorphisms\n" << value("aut_order") << "\n";
    out << "\n== values\n";
    for (const auto& [k, v] : rep.values) out << k << "=" << v << "\n";
    out << "\n== checks\n";
    for (const auto& [k, ok] : rep.checks) out << "check " << k << "=" << (ok ? "pass" : "fail") << "\n";
    out << "summary=" << passed << "/" << rep.checks.size() << "\n";
  }
  return rep.all_passed() ? kOk : kFailure;
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
  bool all = true;
  auto report = [&](const std::string& name, bool ok) {
    out << "selftest " << name << ": " << (ok ? "pass" : "fail") << "\n";
    all = all && ok;
  };
  try {
    report("geometry", geometry::build_report().all_passed());

    for (int d = 1; d <= 3; ++d) {
      SearchConfig folded;
      folded.level = d;
      SearchConfig plain = folded;
      plain.fold = false;
      const SolutionSet a = search_level(folded);
      const SolutionSet b = search_level(plain);
      report("fold_equivalence_d" + std::to_string(d), a.params == b.params && a.stats.raw == b.stats.raw);
      report("no_solutions_d" + std::to_string(d), a.params.empty());
    }

    std::mt19937_64 rng(7);
    std::vector<uint64_t> rows(1000);
    for (auto& r : rows) {
      r = 0;
      for (int i = 0; i < 32; ++i) r |= static_cast<uint64_t>(rng() % 3) << (2 * i);
    }
    kernels::ProbeFilter filter(200);
    for (int i = 0; i < 200; ++i) filter.insert(rows[static_cast<size_t>(i) * 3]);
    std::vector<kernels::Candidate> ref, got;
    kernels::scalar::scan_row(rows, 0, filter.view(), ref);
    const kernels::Isa saved = kernels::active_isa();
    kernels::set_active_isa(kernels::detected_isa());
    kernels::scan_row(rows, 0, filter.view(), got);
    kernels::set_active_isa(saved);
    report(std::string("kernels_") + std::string(kernels::isa_name(kernels::detected_isa())), ref == got);

    std::map<int, int> orders;
    for (const Moebius& g : Moebius::all()) ++orders[g.order()];
    report("pgl2_orders", orders == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  out << "selftest " << (all ? "passed" : "failed") << "\n";
  return all ? kOk : kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational curves on -w^2 = x^4 + y^3 z - y z^3 over F_3", "dp2"};
  app.require_subcommand(1);

  SearchOptions so;
  so.threads = std::max(1u, std::thread::hardware_concurrency());
  std::string threads_flag, budget_flag;
  bool no_fold = false;
  auto* search = app.add_subcommand("search", "Search levels 1..d for parametrizations");
  search->add_option("--degree,-d", so.degree, "Highest level to search (1..8)")->required();
  search->add_option("--threads,-j", threads_flag, "Worker threads (default: all cores, or DP2_THREADS)");
  search->add_option("--block-size", so.block_size, "Left-hand sides per work block")
      ->check(CLI::PositiveNumber);
  search->add_option("--memory-budget", budget_flag, "Byte limit for the RHS table, e.g. 4G (or DP2_MEMORY_BUDGET)");
  search->add_option("--out,-o", so.out, "Output file (default: standard output)");
  search->add_option("--cache-rhs", so.cache_rhs, "Read/write RHS tables at <path>.d<level>");
  search->add_flag("--no-fold", no_fold, "Disable the SL(2,3) and sign folding (reference path)");

  std::string dedup_in, dedup_out;
  auto* dedup = app.add_subcommand("dedup", "Group parametrizations into PGL(2,3) orbits");
  dedup->add_option("--in,-i", dedup_in, "Solution file")->required();
  dedup->add_option("--out,-o", dedup_out, "Curve list output (default: standard output)");

  std::string verify_in;
  auto* verify = app.add_subcommand("verify", "Re-check every line of a solution file");
  verify->add_option("--in,-i", verify_in, "Solution file")->required();

  bool json = false;
  auto* geometry = app.add_subcommand("geometry", "Arithmetic invariants of the surface");
  geometry->add_flag("--json", json, "Emit JSON");

  auto* selftest = app.add_subcommand("selftest", "Quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  if (*search) {
    try {
      if (const char* env = std::getenv("DP2_THREADS"); env && threads_flag.empty()) threads_flag = env;
      if (const char* env = std::getenv("DP2_MEMORY_BUDGET"); env && budget_flag.empty()) budget_flag = env;
      if (!threads_flag.empty()) {
        size_t pos = 0;
        const unsigned long t = std::stoul(threads_flag, &pos);
        if (pos != threads_flag.size() || t == 0 || t > 1024) throw std::invalid_argument("bad thread count");
        so.threads = static_cast<unsigned>(t);
      }
      if (!budget_flag.empty()) so.memory_budget = parse_byte_size(budget_flag);
    } catch (const std::exception&) {
      err << "usage error: invalid --threads or --memory-budget value\n";
      return kUsage;
    }
    if (so.degree < 1 || so.degree > kMaxLevel) {
      err << "usage error: --degree must be in 1.." << kMaxLevel << "\n";
      return kUsage;
    }
    so.fold = !no_fold;
    return cmd_search(so, out, err);
  }
  if (*dedup) return cmd_dedup(dedup_in, dedup_out, out, err);
  if (*verify) return cmd_verify(verify_in, out, err);
  if (*geometry) return cmd_geometry(json, out, err);
  if (*selftest) return cmd_selftest(out, err);
  return kUsage;
}

}  // namespace dp2::cli
