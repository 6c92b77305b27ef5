// Copyright 2026 The IRELAND Authors
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

#include "ireland/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "ireland/clause_pool.hpp"
#include "ireland/dataset.hpp"
#include "ireland/formulations.hpp"
#include "ireland/generator.hpp"
#include "ireland/ireland.hpp"
#include "ireland/lp_format.hpp"
#include "ireland/manifest.hpp"
#include "ireland/milp.hpp"
#include "ireland/pareto.hpp"
#include "ireland/rules.hpp"

namespace ireland {
namespace {

namespace fs = std::filesystem;

// The cap grid used when neither --ub nor --ub-frac is given.
const std::vector<double> kDefaultUbFractions = {0.005, 0.01, 0.02,
                                                 0.03,  0.04, 0.05};

std::string dataset_prefix(const std::string& path) {
  if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return path.substr(0, path.size() - 4);
  }
  return path;
}

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

// Compact decimal for file names and config echoes ("0.05", "300").
std::string compact(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) ss << ",";
    if constexpr (std::is_floating_point_v<T>) {
      ss << compact(values[i]);
    } else {
      ss << values[i];
    }
  }
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

// An empty rule writes an empty file; parse_rule round-trips both forms.
void write_rule_file(const std::string& path, const DnfRule& rule) {
  std::ofstream out = open_out(path);
  const std::string text = format_rule(rule);
  if (!text.empty()) out << text << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Single-line rule form for CSV cells: clauses joined by " OR ".
std::string inline_rule(const DnfRule& rule) {
  std::string text;
  for (std::size_t i = 0; i < rule.clauses.size(); ++i) {
    if (i) text += " OR ";
    text += format_clause(rule.clauses[i]);
  }
  return text;
}

double scrubbed(double seconds, bool scrub) { return scrub ? 0.0 : seconds; }

double trace_total_seconds(const std::vector<SolveTraceRow>& trace) {
  double total = 0.0;
  for (const SolveTraceRow& row : trace) total += row.seconds;
  return total;
}

// (K, M) for a dataset: explicit flags win, then the generator sidecar,
// then `fallback` (negative fallback = the value is required).
struct KmChoice {
  int k = 0;
  int m = 0;
  std::string sidecar;  // path consulted, empty when none was
};

KmChoice resolve_km(const std::string& data_path, bool k_given, int k_flag,
                    bool m_given, int m_flag, int fallback) {
  KmChoice out{k_flag, m_flag, ""};
  if (k_given && m_given) return out;
  const std::string side = dataset_prefix(data_path) + ".rule";
  if (fs::exists(side)) {
    const SidecarInfo info = load_sidecar(side);
    if (!k_given) out.k = static_cast<int>(info.config.num_clauses);
    if (!m_given) out.m = static_cast<int>(info.config.max_clause_size);
    out.sidecar = side;
    return out;
  }
  if (fallback < 0) {
    throw std::invalid_argument("--k/--m not given and no sidecar found at " +
                                side);
  }
  if (!k_given) out.k = fallback;
  if (!m_given) out.m = fallback;
  return out;
}

// ---------------------------------------------------------------------------
// generate

struct GenArgs {
  std::vector<std::size_t> n{100};
  std::vector<std::size_t> j{10};
  std::vector<std::size_t> k{2};
  std::vector<std::size_t> m{2};
  std::vector<double> noise{0.0};
  std::vector<std::uint64_t> seeds{0};
  double density = 0.5;
  int attempts = 25;
  std::string out;
  bool scrub = false;
  std::string config_file;
};

int run_generate(const GenArgs& a) {
  // Expand and validate every combination before touching the filesystem.
  std::vector<GeneratorConfig> combos;
  for (std::size_t n : a.n) {
    for (std::size_t j : a.j) {
      for (std::size_t k : a.k) {
        for (std::size_t m : a.m) {
          for (double noise : a.noise) {
            for (std::uint64_t seed : a.seeds) {
              GeneratorConfig cfg;
              cfg.num_samples = n;
              cfg.num_features = j;
              cfg.num_clauses = k;
              cfg.max_clause_size = m;
              cfg.noise_rate = noise;
              cfg.density = a.density;
              cfg.seed = seed;
              cfg.max_attempts = a.attempts;
              cfg.validate();
              combos.push_back(cfg);
            }
          }
        }
      }
    }
  }

  const bool directory_mode = combos.size() > 1 || fs::is_directory(a.out);
  if (directory_mode) {
    if (fs::exists(a.out) && !fs::is_directory(a.out)) {
      throw std::invalid_argument("sweep output must be a directory: " + a.out);
    }
    fs::create_directories(a.out);
  }
  const std::string manifest_path =
      directory_mode ? a.out + "/generate.manifest"
                     : dataset_prefix(a.out) + ".manifest";

  RunManifest man;
  man.command = "generate";
  man.seed = a.seeds.front();
  man.record_timestamps = !a.scrub;
  man.add_config("n", join(a.n));
  man.add_config("j", join(a.j));
  man.add_config("k", join(a.k));
  man.add_config("m", join(a.m));
  man.add_config("noise", join(a.noise));
  man.add_config("seed", join(a.seeds));
  man.add_config("density", compact(a.density));
  man.add_config("attempts", std::to_string(a.attempts));
  man.add_config("out", a.out);
  man.add_config("scrub_timings", a.scrub ? "1" : "0");
  if (!a.config_file.empty()) man.add_input(a.config_file);
  man.stamp_start();
  write_manifest(man, manifest_path);

  for (const GeneratorConfig& cfg : combos) {
    std::string csv_path = a.out;
    if (directory_mode) {
      csv_path = a.out + "/n" + std::to_string(cfg.num_samples) + "_j" +
                 std::to_string(cfg.num_features) + "_k" +
                 std::to_string(cfg.num_clauses) + "_m" +
                 std::to_string(cfg.max_clause_size) + "_noise" +
                 compact(cfg.noise_rate) + "_seed" + std::to_string(cfg.seed) +
                 ".csv";
    }
    try {
      const GeneratedDataset gen = generate_synthetic(cfg);
      save_csv(gen.data, csv_path);
      save_sidecar(gen, cfg, dataset_prefix(csv_path) + ".rule");
      man.add_note("wrote " + csv_path);
    } catch (const RetentionError& e) {
      man.add_note("skip " + csv_path + ": " + e.what());
    }
  }

  man.stamp_finish();
  write_manifest(man, manifest_path);
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string data;
  std::string form = "bp1";
  int k = 0;
  int m = 0;
  bool k_given = false;
  bool m_given = false;
  double time_limit = 300.0;
  bool relax = false;
  bool split_bp4 = false;
  std::string out;
  std::string lp_out;
  bool scrub = false;
  std::string config_file;
};

int run_solve(const SolveArgs& a) {
  const std::optional<BpForm> form = parse_bp_form(a.form);
  if (!form) throw std::invalid_argument("unknown formulation: " + a.form);
  const BinaryDataset ds = load_csv(a.data);
  const KmChoice km =
      resolve_km(a.data, a.k_given, a.k, a.m_given, a.m, /*fallback=*/-1);
  const FormulationId id{*form, a.relax, !a.split_bp4};
  const std::string prefix =
      a.out.empty() ? dataset_prefix(a.data) + "_" + bp_form_name(*form)
                    : a.out;

  RunManifest man;
  man.command = "solve";
  man.record_timestamps = !a.scrub;
  man.add_config("data", a.data);
  man.add_config("formulation", bp_form_name(*form));
  man.add_config("relax", a.relax ? "1" : "0");
  man.add_config("combined_bp4", a.split_bp4 ? "0" : "1");
  man.add_config("k", std::to_string(km.k));
  man.add_config("m", std::to_string(km.m));
  man.add_config("time_limit", compact(a.time_limit));
  man.add_config("out", prefix);
  man.add_config("scrub_timings", a.scrub ? "1" : "0");
  man.add_input(a.data);
  if (!km.sidecar.empty()) man.add_input(km.sidecar);
  if (!a.config_file.empty()) man.add_input(a.config_file);
  man.stamp_start();
  write_manifest(man, prefix + ".manifest");

  MilpModel model = build(id, ds, km.k, km.m);
  if (!a.lp_out.empty()) export_lp(model, a.lp_out);
  SolveOptions opt;
  opt.time_limit_seconds = a.time_limit;
  opt.branch_priority = s_first_priorities(model);
  const SolveResult res = solve_branch_and_bound(model, opt);

  DnfRule rule;
  if (res.has_solution()) {
    try {
      rule = extract_rule(model, res.assignment);
    } catch (const std::invalid_argument& e) {
      man.add_note(std::string("rule extraction failed: ") + e.what());
    }
  } else {
    man.add_note("no incumbent within the limits");
  }
  write_rule_file(prefix + ".rule", rule);

  {
    std::ofstream csv = open_out(prefix + ".result.csv");
    csv << "dataset,formulation,relaxed,k,m,status,objective,"
           "normalized_objective,best_bound,seconds,nodes,lp_iterations\n";
    const double obj = res.has_solution()
                           ? res.objective
                           : std::numeric_limits<double>::quiet_NaN();
    csv << a.data << "," << bp_form_name(*form) << "," << (a.relax ? 1 : 0)
        << "," << km.k << "," << km.m << "," << to_string(res.status) << ","
        << format_number(obj) << ","
        << format_number(obj / static_cast<double>(ds.num_samples())) << ","
        << format_number(res.best_bound) << ","
        << format_number(scrubbed(res.runtime_seconds, a.scrub)) << ","
        << res.node_count << "," << res.lp_iterations << "\n";
    if (!csv) throw std::runtime_error("write failed: " + prefix + ".result.csv");
  }

  man.stamp_finish();
  write_manifest(man, prefix + ".manifest");
  return 0;
}

// ---------------------------------------------------------------------------
// ireland

struct IrArgs {
  std::string data;
  std::vector<std::int64_t> ub;
  std::vector<double> ub_frac;
  std::size_t subsample = 100;
  double per_solve = 120.0;
  std::vector<std::int64_t> tau{0};
  int k = 0;
  int m = 0;
  bool k_given = false;
  bool m_given = false;
  double budget = 14400.0;
  std::uint64_t seed = 0;
  int parallelism = 0;
  std::string out;
  bool scrub = false;
  std::string config_file;
};

std::vector<UpperBound> bounds_from_flags(const std::vector<std::int64_t>& ub,
                                          const std::vector<double>& ub_frac) {
  std::vector<UpperBound> out;
  if (!ub.empty()) {
    for (std::int64_t v : ub) out.push_back({static_cast<double>(v), false});
    return out;
  }
  const std::vector<double>& fractions =
      ub_frac.empty() ? kDefaultUbFractions : ub_frac;
  for (double v : fractions) out.push_back({v, true});
  return out;
}

void echo_bounds(RunManifest& man, const std::vector<std::int64_t>& ub,
                 const std::vector<double>& ub_frac) {
  if (!ub.empty()) {
    man.add_config("ub", join(ub));
  } else {
    man.add_config("ub_frac",
                   join(ub_frac.empty() ? kDefaultUbFractions : ub_frac));
  }
}

int run_ireland_cmd(const IrArgs& a) {
  const BinaryDataset ds = load_csv(a.data);
  const KmChoice km =
      resolve_km(a.data, a.k_given, a.k, a.m_given, a.m, /*fallback=*/2);

  IrelandConfig cfg;
  cfg.upper_bounds = bounds_from_flags(a.ub, a.ub_frac);
  cfg.subsample_size = a.subsample;
  cfg.per_solve_time_limit = a.per_solve;
  cfg.max_false_negatives = a.tau;
  cfg.max_clauses = km.k;
  cfg.max_clause_size = km.m;
  cfg.global_time_budget = a.budget;
  cfg.seed = a.seed;
  cfg.parallelism = a.parallelism;
  cfg.validate();

  const std::string prefix =
      a.out.empty() ? dataset_prefix(a.data) + ".ireland" : a.out;

  RunManifest man;
  man.command = "ireland";
  man.seed = a.seed;
  man.record_timestamps = !a.scrub;
  man.add_config("data", a.data);
  echo_bounds(man, a.ub, a.ub_frac);
  man.add_config("subsample", std::to_string(a.subsample));
  man.add_config("per_solve_limit", compact(a.per_solve));
  man.add_config("tau", join(a.tau));
  man.add_config("k", std::to_string(km.k));
  man.add_config("m", std::to_string(km.m));
  man.add_config("budget", compact(a.budget));
  man.add_config("seed", std::to_string(a.seed));
  man.add_config("parallelism", std::to_string(a.parallelism));
  man.add_config("out", prefix);
  man.add_config("scrub_timings", a.scrub ? "1" : "0");
  man.add_input(a.data);
  if (!km.sidecar.empty()) man.add_input(km.sidecar);
  if (!a.config_file.empty()) man.add_input(a.config_file);
  man.stamp_start();
  write_manifest(man, prefix + ".manifest");

  const IrelandResult res = run_ireland(ds, cfg);

  write_rule_file(prefix + ".rule", res.rule);
  save_pool(res.pool, prefix + ".pool");

  {
    std::ofstream csv = open_out(prefix + ".trace.csv");
    csv << "bound_index,ub,iteration,problem,objective,best_bound,seconds,"
           "pool_size,status\n";
    for (const SolveTraceRow& row : res.trace) {
      csv << row.bound_index << "," << row.ub << "," << row.iteration << ","
          << row.problem << "," << format_number(row.objective) << ","
          << format_number(row.best_bound) << ","
          << format_number(scrubbed(row.seconds, a.scrub)) << ","
          << row.pool_size << "," << to_string(row.status) << "\n";
    }
    if (!csv) throw std::runtime_error("write failed: " + prefix + ".trace.csv");
  }
  {
    std::ofstream csv = open_out(prefix + ".result.csv");
    csv << "dataset,objective,normalized_objective,clauses,rule,"
           "budget_limited,total_seconds\n";
    csv << a.data << "," << format_number(res.objective) << ","
        << format_number(res.normalized_objective) << "," << res.rule.size()
        << "," << inline_rule(res.rule) << "," << (res.budget_limited ? 1 : 0)
        << "," << format_number(scrubbed(trace_total_seconds(res.trace), a.scrub))
        << "\n";
    if (!csv) throw std::runtime_error("write failed: " + prefix + ".result.csv");
  }

  if (res.budget_limited) man.add_note("budget_limited=true");
  man.stamp_finish();
  write_manifest(man, prefix + ".manifest");
  return 0;
}

// ---------------------------------------------------------------------------
// pareto

struct ParetoArgs {
  std::string data;
  std::string pool_path;
  double epsilon = 0.02;
  int k = 2;
  double per_solve = 120.0;
  double budget = kInfinity;
  // Fresh-run knobs, used only when no --pool is given.
  std::vector<std::int64_t> ub;
  std::vector<double> ub_frac;
  std::size_t subsample = 100;
  std::vector<std::int64_t> tau{0};
  int m = 0;
  bool m_given = false;
  double ireland_budget = 14400.0;
  std::uint64_t seed = 0;
  int parallelism = 0;
  std::string out;
  bool scrub = false;
  std::string config_file;
};

int run_pareto(const ParetoArgs& a) {
  CurveConfig cc;
  cc.epsilon_gap = a.epsilon;
  cc.max_clauses = a.k;
  cc.per_solve_time_limit = a.per_solve;
  cc.time_budget = a.budget;
  cc.validate();

  const BinaryDataset ds = load_csv(a.data);
  const std::string prefix =
      a.out.empty() ? dataset_prefix(a.data) + ".pareto" : a.out;
  const bool fresh = a.pool_path.empty();

  IrelandConfig icfg;
  KmChoice km;
  if (fresh) {
    km = resolve_km(a.data, /*k_given=*/true, a.k, a.m_given, a.m,
                    /*fallback=*/2);
    icfg.upper_bounds = bounds_from_flags(a.ub, a.ub_frac);
    icfg.subsample_size = a.subsample;
    icfg.per_solve_time_limit = a.per_solve;
    icfg.max_false_negatives = a.tau;
    icfg.max_clauses = a.k;
    icfg.max_clause_size = km.m;
    icfg.global_time_budget = a.ireland_budget;
    icfg.seed = a.seed;
    icfg.parallelism = a.parallelism;
    icfg.validate();
  }

  RunManifest man;
  man.command = "pareto";
  man.seed = a.seed;
  man.record_timestamps = !a.scrub;
  man.add_config("data", a.data);
  man.add_config("pool", fresh ? "(fresh run)" : a.pool_path);
  man.add_config("epsilon_gap", compact(a.epsilon));
  man.add_config("k", std::to_string(a.k));
  man.add_config("per_solve_limit", compact(a.per_solve));
  man.add_config("budget", compact(a.budget));
  if (fresh) {
    echo_bounds(man, a.ub, a.ub_frac);
    man.add_config("subsample", std::to_string(a.subsample));
    man.add_config("tau", join(a.tau));
    man.add_config("m", std::to_string(km.m));
    man.add_config("ireland_budget", compact(a.ireland_budget));
    man.add_config("seed", std::to_string(a.seed));
    man.add_config("parallelism", std::to_string(a.parallelism));
  }
  man.add_config("out", prefix);
  man.add_config("scrub_timings", a.scrub ? "1" : "0");
  man.add_input(a.data);
  if (!fresh) man.add_input(a.pool_path);
  if (fresh && !km.sidecar.empty()) man.add_input(km.sidecar);
  if (!a.config_file.empty()) man.add_input(a.config_file);
  man.stamp_start();
  write_manifest(man, prefix + ".manifest");

  ClausePool pool;
  if (!fresh) {
    pool = load_pool(a.pool_path, ds);
  } else {
    IrelandResult ir = run_ireland(ds, icfg);
    pool = std::move(ir.pool);
    save_pool(pool, prefix + ".pool");
    man.add_note("pool built by a fresh run: " + std::to_string(pool.size()) +
                 " clauses");
  }

  const TradeOffCurve curve = trade_off_curve(pool, ds, cc);
  {
    std::ofstream csv = open_out(prefix + ".curve.csv");
    csv << "sensitivity,specificity,rule,seconds\n";
    for (const ParetoPoint& pt : curve.points) {
      csv << format_number(pt.sensitivity) << ","
          << format_number(pt.specificity) << "," << inline_rule(pt.rule)
          << "," << format_number(scrubbed(pt.seconds, a.scrub)) << "\n";
    }
    if (!csv) throw std::runtime_error("write failed: " + prefix + ".curve.csv");
  }

  if (!curve.complete) man.add_note("curve incomplete: a time limit was hit");
  man.stamp_finish();
  write_manifest(man, prefix + ".manifest");
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string corpus;
  std::vector<std::string> methods{"bp1", "ireland"};
  double time_limit = 300.0;
  double budget = 14400.0;
  int k = 2;
  int m = 2;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> ub;
  std::vector<double> ub_frac;
  std::size_t subsample = 100;
  std::vector<std::int64_t> tau{0};
  double per_solve = 120.0;
  int parallelism = 0;
  std::string out = "bench";
  bool scrub = false;
  std::string config_file;
};

struct BenchRow {
  std::string status;
  double normalized = 1.0;
  double seconds = 0.0;
};

BenchRow bench_bp(const BenchArgs& a, const BinaryDataset& ds, BpForm form) {
  MilpModel model = build({form, false, true}, ds, a.k, a.m);
  SolveOptions opt;
  opt.time_limit_seconds = a.time_limit;
  opt.branch_priority = s_first_priorities(model);
  const SolveResult res = solve_branch_and_bound(model, opt);
  // A run that yields no usable solution gets the worst objective and its
  // whole budget as runtime; this keeps aborted rows comparable.
  if (!res.has_solution() || res.status == SolveStatus::kMemoryAbort) {
    return {"aborted", 1.0, a.time_limit};
  }
  return {to_string(res.status),
          res.objective / static_cast<double>(ds.num_samples()),
          scrubbed(res.runtime_seconds, a.scrub)};
}

BenchRow bench_ireland(const BenchArgs& a, const BinaryDataset& ds,
                       const IrelandConfig& cfg) {
  const IrelandResult res = run_ireland(ds, cfg);
  bool aborted = true;
  for (auto it = res.trace.rbegin(); it != res.trace.rend(); ++it) {
    if (it->problem == "mp-final") {
      aborted = std::isnan(it->objective);
      break;
    }
  }
  if (aborted) return {"aborted", 1.0, a.budget};
  return {res.budget_limited ? "budget-limited" : "completed",
          res.normalized_objective,
          scrubbed(trace_total_seconds(res.trace), a.scrub)};
}

int run_bench(const BenchArgs& a) {
  struct Method {
    std::string name;
    bool is_ireland = false;
    BpForm form = BpForm::kBp1;
  };
  std::vector<Method> methods;
  bool any_ireland = false;
  for (const std::string& name : a.methods) {
    if (name == "ireland") {
      methods.push_back({name, true, BpForm::kBp1});
      any_ireland = true;
    } else if (const std::optional<BpForm> f = parse_bp_form(name)) {
      methods.push_back({name, false, *f});
    } else {
      throw std::invalid_argument("unknown method: " + name);
    }
  }
  if (methods.empty()) throw std::invalid_argument("no methods given");

  IrelandConfig icfg;
  if (any_ireland) {
    icfg.upper_bounds = bounds_from_flags(a.ub, a.ub_frac);
    icfg.subsample_size = a.subsample;
    icfg.per_solve_time_limit = a.per_solve;
    icfg.max_false_negatives = a.tau;
    icfg.max_clauses = a.k;
    icfg.max_clause_size = a.m;
    icfg.global_time_budget = a.budget;
    icfg.seed = a.seed;
    icfg.parallelism = a.parallelism;
    icfg.validate();
  }

  if (!fs::is_directory(a.corpus)) {
    throw std::invalid_argument("corpus is not a directory: " + a.corpus);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(a.corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::invalid_argument("no .csv datasets in " + a.corpus);
  }

  RunManifest man;
  man.command = "bench";
  man.seed = a.seed;
  man.record_timestamps = !a.scrub;
  man.add_config("corpus", a.corpus);
  man.add_config("methods", join(a.methods));
  man.add_config("time_limit", compact(a.time_limit));
  man.add_config("budget", compact(a.budget));
  man.add_config("k", std::to_string(a.k));
  man.add_config("m", std::to_string(a.m));
  if (any_ireland) {
    echo_bounds(man, a.ub, a.ub_frac);
    man.add_config("subsample", std::to_string(a.subsample));
    man.add_config("tau", join(a.tau));
    man.add_config("per_solve_limit", compact(a.per_solve));
    man.add_config("parallelism", std::to_string(a.parallelism));
  }
  man.add_config("seed", std::to_string(a.seed));
  man.add_config("out", a.out);
  man.add_config("scrub_timings", a.scrub ? "1" : "0");
  for (const std::string& file : files) man.add_input(file);
  if (!a.config_file.empty()) man.add_input(a.config_file);
  man.stamp_start();
  write_manifest(man, a.out + ".manifest");

  std::ofstream csv = open_out(a.out + ".csv");
  csv << "dataset,method,status,normalized_objective,seconds\n";
  for (const std::string& file : files) {
    std::optional<BinaryDataset> ds;
    std::string load_error;
    try {
      ds.emplace(load_csv(file));
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const Method& method : methods) {
      BenchRow row{"error", 1.0, 0.0};
      if (ds) {
        try {
          row = method.is_ireland ? bench_ireland(a, *ds, icfg)
                                  : bench_bp(a, *ds, method.form);
        } catch (const std::exception& e) {
          man.add_note("error " + basename_of(file) + " " + method.name +
                       ": " + e.what());
        }
      } else {
        man.add_note("error " + basename_of(file) + " " + method.name + ": " +
                     load_error);
      }
      csv << basename_of(file) << "," << method.name << "," << row.status
          << "," << format_number(row.normalized) << ","
          << format_number(row.seconds) << "\n";
    }
  }
  if (!csv) throw std::runtime_error("write failed: " + a.out + ".csv");
  csv.close();

  man.stamp_finish();
  write_manifest(man, a.out + ".manifest");
  return 0;
}

std::string config_path_of(const CLI::App* sub) {
  const CLI::Option* opt = sub->get_config_ptr();
  if (opt != nullptr && opt->count() > 0) return opt->as<std::string>();
  return "";
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// CLI11 processes a set_config file only on the root command, never when
// the option sits on a subcommand, so the file is expanded here into
// ordinary `--key=value` arguments before parsing.  Keys already present
// on the command line are skipped; that is what gives explicit flags
// priority over the file.
std::vector<std::string> expand_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  const std::vector<std::string> given = args;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trimmed(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';' ||
        entry[0] == '[') {
      continue;
    }
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line without '=': " + entry);
    }
    const std::string key = trimmed(entry.substr(0, eq));
    std::string value = trimmed(entry.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config line without a key: " + entry);
    }
    if (value.size() >= 2 &&
        (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    const std::string flag = "--" + key;
    bool present = false;
    for (const std::string& a : given) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    }
    if (!present) args.push_back(flag + "=" + value);
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{
      "Learns small OR-of-AND classification rules from binary data: exact "
      "mixed-integer formulations (bp1..bp6), an iterative clause-generation "
      "heuristic, and sensitivity/specificity trade-off curves."};
  app.name("ireland");
  app.require_subcommand(1);

  GenArgs ga;
  CLI::App* gen = app.add_subcommand(
      "generate", "Generate synthetic datasets from planted rules");
  gen->add_option("--n", ga.n, "Sample counts N; lists sweep")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--j", ga.j, "Feature counts J; lists sweep")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--k", ga.k, "Hidden-rule clause counts; lists sweep")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--m", ga.m, "Hidden-clause size caps; lists sweep")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--noise", ga.noise, "Label flip rates in [0, 0.5); lists sweep")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--seed", ga.seeds, "Seeds; one dataset per seed")
      ->delimiter(',')
      ->capture_default_str();
  gen->add_option("--density", ga.density, "P(X=1) per feature cell")
      ->capture_default_str();
  gen->add_option("--attempts", ga.attempts,
                  "Draws allowed before a combination is dropped")
      ->capture_default_str();
  gen->add_option("--out", ga.out,
                  "Output CSV path, or a directory when sweeping")
      ->required();
  gen->add_flag("--scrub-timings", ga.scrub,
                "Omit wall-clock values so reruns are byte-identical");
  gen->set_config("--config", "", "Key=value config file; flags override");

  SolveArgs sa;
  CLI::App* so =
      app.add_subcommand("solve", "Solve one exact formulation on one dataset");
  so->add_option("--data", sa.data, "Dataset CSV")->required();
  so->add_option("--form", sa.form, "Formulation, bp1..bp6")
      ->capture_default_str();
  CLI::Option* so_k =
      so->add_option("--k", sa.k, "Clause budget K (default: the sidecar's)");
  CLI::Option* so_m =
      so->add_option("--m", sa.m, "Clause size cap M (default: the sidecar's)");
  so->add_option("--time-limit", sa.time_limit, "Solve limit, seconds")
      ->capture_default_str();
  so->add_flag("--relax", sa.relax,
               "Declare implied-integral variables continuous");
  so->add_flag("--split-bp4", sa.split_bp4,
               "Keep bp4's control clause variables instead of combined rows");
  so->add_option("--out", sa.out, "Output prefix (default: <data>_<form>)");
  so->add_option("--write-lp", sa.lp_out, "Also export the model in LP format");
  so->add_flag("--scrub-timings", sa.scrub,
               "Omit wall-clock values so reruns are byte-identical");
  so->set_config("--config", "", "Key=value config file; flags override");

  IrArgs ia;
  CLI::App* ir =
      app.add_subcommand("ireland", "Run the iterative clause-generation heuristic");
  ir->add_option("--data", ia.data, "Dataset CSV")->required();
  CLI::Option* ir_ub = ir->add_option(
      "--ub", ia.ub, "False-positive caps, absolute control counts");
  ir_ub->delimiter(',');
  CLI::Option* ir_ubf = ir->add_option(
      "--ub-frac", ia.ub_frac,
      "False-positive caps as control fractions "
      "(default 0.005,0.01,0.02,0.03,0.04,0.05)");
  ir_ubf->delimiter(',');
  ir_ub->excludes(ir_ubf);
  ir->add_option("--subsample", ia.subsample, "Case subset size per sub problem")
      ->capture_default_str();
  ir->add_option("--per-solve-limit", ia.per_solve, "Per-MILP limit, seconds")
      ->capture_default_str();
  ir->add_option("--tau", ia.tau, "Allowed misses per cap; one value broadcasts")
      ->delimiter(',')
      ->capture_default_str();
  CLI::Option* ir_k = ir->add_option(
      "--k", ia.k, "Clause budget K (default: the sidecar's, else 2)");
  CLI::Option* ir_m = ir->add_option(
      "--m", ia.m, "Clause size cap M (default: the sidecar's, else 2)");
  ir->add_option("--budget", ia.budget, "Whole-run limit, seconds")
      ->capture_default_str();
  ir->add_option("--seed", ia.seed, "Subsampling seed")->capture_default_str();
  ir->add_option("--parallelism", ia.parallelism,
                 "Interleaved cap routines; 0 = one per cap")
      ->capture_default_str();
  ir->add_option("--out", ia.out, "Output prefix (default: <data>.ireland)");
  ir->add_flag("--scrub-timings", ia.scrub,
               "Omit wall-clock values so reruns are byte-identical");
  ir->set_config("--config", "", "Key=value config file; flags override");

  ParetoArgs pa;
  CLI::App* pt = app.add_subcommand(
      "pareto", "Trace a sensitivity/specificity trade-off curve");
  pt->add_option("--data", pa.data, "Dataset CSV")->required();
  pt->add_option("--pool", pa.pool_path,
                 "Clause pool file (default: build one with a fresh run)");
  pt->add_option("--epsilon", pa.epsilon,
                 "Adjacent-point gap worth refining; 1 keeps only extremes")
      ->capture_default_str();
  pt->add_option("--k", pa.k, "Clauses per selected rule")
      ->capture_default_str();
  pt->add_option("--per-solve-limit", pa.per_solve, "Per-MILP limit, seconds")
      ->capture_default_str();
  pt->add_option("--budget", pa.budget,
                 "Whole-curve limit, seconds (default unlimited)");
  CLI::Option* pt_ub = pt->add_option(
      "--ub", pa.ub, "Fresh run: absolute false-positive caps");
  pt_ub->delimiter(',');
  CLI::Option* pt_ubf = pt->add_option(
      "--ub-frac", pa.ub_frac,
      "Fresh run: fractional caps (default 0.005,0.01,0.02,0.03,0.04,0.05)");
  pt_ubf->delimiter(',');
  pt_ub->excludes(pt_ubf);
  pt->add_option("--subsample", pa.subsample, "Fresh run: case subset size")
      ->capture_default_str();
  pt->add_option("--tau", pa.tau, "Fresh run: allowed misses per cap")
      ->delimiter(',')
      ->capture_default_str();
  CLI::Option* pt_m = pt->add_option(
      "--m", pa.m, "Fresh run: clause size cap (default: sidecar's, else 2)");
  pt->add_option("--ireland-budget", pa.ireland_budget,
                 "Fresh run: whole-run limit, seconds")
      ->capture_default_str();
  pt->add_option("--seed", pa.seed, "Fresh run: subsampling seed")
      ->capture_default_str();
  pt->add_option("--parallelism", pa.parallelism,
                 "Fresh run: interleaved cap routines; 0 = one per cap")
      ->capture_default_str();
  pt->add_option("--out", pa.out, "Output prefix (default: <data>.pareto)");
  pt->add_flag("--scrub-timings", pa.scrub,
               "Omit wall-clock values so reruns are byte-identical");
  pt->set_config("--config", "", "Key=value config file; flags override");

  BenchArgs ba;
  CLI::App* be = app.add_subcommand(
      "bench", "Compare methods across every dataset in a directory");
  be->add_option("--corpus", ba.corpus, "Directory of dataset CSVs")
      ->required();
  be->add_option("--methods", ba.methods,
                 "Methods to run: bp1..bp6 and/or ireland")
      ->delimiter(',')
      ->capture_default_str();
  be->add_option("--time-limit", ba.time_limit, "Per-formulation limit, seconds")
      ->capture_default_str();
  be->add_option("--budget", ba.budget, "Per-heuristic-run limit, seconds")
      ->capture_default_str();
  be->add_option("--k", ba.k, "Clause budget K")->capture_default_str();
  be->add_option("--m", ba.m, "Clause size cap M")->capture_default_str();
  be->add_option("--seed", ba.seed, "Subsampling seed")->capture_default_str();
  CLI::Option* be_ub = be->add_option(
      "--ub", ba.ub, "Heuristic: absolute false-positive caps");
  be_ub->delimiter(',');
  CLI::Option* be_ubf = be->add_option(
      "--ub-frac", ba.ub_frac,
      "Heuristic: fractional caps (default 0.005,0.01,0.02,0.03,0.04,0.05)");
  be_ubf->delimiter(',');
  be_ub->excludes(be_ubf);
  be->add_option("--subsample", ba.subsample, "Heuristic: case subset size")
      ->capture_default_str();
  be->add_option("--tau", ba.tau, "Heuristic: allowed misses per cap")
      ->delimiter(',')
      ->capture_default_str();
  be->add_option("--per-solve-limit", ba.per_solve,
                 "Heuristic: per-MILP limit, seconds")
      ->capture_default_str();
  be->add_option("--parallelism", ba.parallelism,
                 "Heuristic: interleaved cap routines; 0 = one per cap")
      ->capture_default_str();
  be->add_option("--out", ba.out, "Output prefix")->capture_default_str();
  be->add_flag("--scrub-timings", ba.scrub,
               "Omit wall-clock values so reruns are byte-identical");
  be->set_config("--config", "", "Key=value config file; flags override");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config_file(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::vector<std::string> argv_storage;
    argv_storage.reserve(expanded.size() + 1);
    argv_storage.push_back("ireland");
    argv_storage.insert(argv_storage.end(), expanded.begin(), expanded.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const std::string& s : argv_storage) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      ga.config_file = config_path_of(gen);
      return run_generate(ga);
    }
    if (so->parsed()) {
      sa.k_given = so_k->count() > 0;
      sa.m_given = so_m->count() > 0;
      sa.config_file = config_path_of(so);
      return run_solve(sa);
    }
    if (ir->parsed()) {
      ia.k_given = ir_k->count() > 0;
      ia.m_given = ir_m->count() > 0;
      ia.config_file = config_path_of(ir);
      return run_ireland_cmd(ia);
    }
    if (pt->parsed()) {
      pa.m_given = pt_m->count() > 0;
      pa.config_file = config_path_of(pt);
      return run_pareto(pa);
    }
    if (be->parsed()) {
      ba.config_file = config_path_of(be);
      return run_bench(ba);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return 1;
}

}  // namespace ireland
