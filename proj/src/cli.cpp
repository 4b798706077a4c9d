// SPDX-License-Identifier: Apache-2.0
#include "fhegen/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhegen/runner.hpp"

namespace fhegen {

namespace {

struct CommonFlags {
  std::string config_path;
  std::string format = "json";
  std::string out_path;
  unsigned jobs = 0;
  uint64_t seed = 42;
  unsigned repeat = 1;
};

Config load_config(const CommonFlags& flags) {
  if (!flags.config_path.empty()) return Config::from_file(flags.config_path);
  if (const char* env = std::getenv("FHEGEN_CONFIG"))
    return Config::from_file(env);
  return Config{};
}

std::vector<Method> methods_from_flag(const std::string& m) {
  if (m == "all")
    return {Method::BitwiseTfhe, Method::SchemeSwitching,
            Method::EncodingSwitching};
  return {method_from_name(m)};
}

std::vector<WorkloadKind> workloads_from_flag(const std::string& w) {
  if (w == "all") return {WorkloadKind::W1, WorkloadKind::W2, WorkloadKind::W3};
  return {workload_from_name(w)};
}

unsigned resolve_jobs(unsigned flag) {
  if (flag) return flag;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

int emit_rows(std::vector<ReportRow> rows, const CommonFlags& flags,
              std::ostream& out, std::ostream& err) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return a.scenario < b.scenario;
                   });
  const std::string body =
      emit_report(rows, report_format_from_name(flags.format));
  if (!flags.out_path.empty()) {
    std::ofstream f(flags.out_path, std::ios::binary);
    if (!f) throw ParseError("cannot open output file: " + flags.out_path);
    f << body;
  } else {
    out << body;
  }
  int rc = 0;
  for (const ReportRow& r : rows) {
    if (!r.oracle_pass) {
      err << "scenario failed oracle check: " << r.scenario << "\n";
      rc = 1;
    } else if (!r.depth_ok) {
      err << "scenario exceeded predicted depth: " << r.scenario << "\n";
      rc = 1;
    }
  }
  return rc;
}

// Graph file: one "u v w" edge per line, node count from the largest index.
Graph load_graph(const std::string& path, uint64_t inf) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open graph file: " + path);
  std::vector<std::array<uint64_t, 3>> edges;
  size_t n = 0;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    long long u, v;
    long long w;
    if (!(is >> u >> v >> w) || u < 0 || v < 0 || w < 0)
      throw ParseError("graph file line " + std::to_string(lineno) +
                       ": expected 'u v w' with non-negative entries");
    edges.push_back({static_cast<uint64_t>(u), static_cast<uint64_t>(v),
                     static_cast<uint64_t>(w)});
    n = std::max({n, static_cast<size_t>(u) + 1, static_cast<size_t>(v) + 1});
  }
  Graph g;
  g.n = n;
  g.w.assign(n, std::vector<uint64_t>(n, inf));
  for (size_t i = 0; i < n; ++i) g.w[i][i] = 0;
  for (const auto& e : edges) g.w[e[0]][e[1]] = e[2];
  return g;
}

// Tree file: "depth <d>", "features <k>", then level-order threshold,
// feature-index and label lines.
DecisionTree load_tree(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open tree file: " + path);
  std::string word;
  unsigned depth = 0;
  size_t features = 0;
  if (!(f >> word >> depth) || word != "depth")
    throw ParseError("tree file: expected 'depth <d>'");
  if (!(f >> word >> features) || word != "features")
    throw ParseError("tree file: expected 'features <k>'");
  DecisionTree t;
  t.depth = depth;
  for (unsigned level = 0; level < depth; ++level) {
    const size_t width = size_t{1} << level;
    std::vector<uint64_t> thr(width);
    for (auto& v : thr)
      if (!(f >> v)) throw ParseError("tree file: missing threshold values");
    t.thresholds.push_back(std::move(thr));
  }
  for (unsigned level = 0; level < depth; ++level) {
    const size_t width = size_t{1} << level;
    std::vector<size_t> fe(width);
    for (auto& v : fe) {
      if (!(f >> v)) throw ParseError("tree file: missing feature indices");
      if (v >= features)
        throw ParseError("tree file: feature index out of range");
    }
    t.features.push_back(std::move(fe));
  }
  t.labels.resize(size_t{1} << depth);
  for (auto& v : t.labels)
    if (!(f >> v)) throw ParseError("tree file: missing leaf labels");
  return t;
}

std::vector<uint64_t> load_numbers(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open input file: " + path);
  std::vector<uint64_t> out;
  long long v;
  while (f >> v) {
    if (v < 0) throw ParseError("input values must be non-negative");
    out.push_back(static_cast<uint64_t>(v));
  }
  return out;
}

Table load_csv_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open table file: " + path);
  Table t;
  std::string line;
  if (!std::getline(f, line))
    throw ParseError("table file is missing its header row");
  std::istringstream hdr(line);
  std::string cell;
  while (std::getline(hdr, cell, ',')) t.names.push_back(cell);
  t.cols.assign(t.names.size(), {});
  size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    size_t col = 0;
    while (std::getline(is, cell, ',')) {
      if (col >= t.names.size())
        throw ParseError("table line " + std::to_string(lineno) +
                         ": too many cells");
      t.cols[col].push_back(std::strtoull(cell.c_str(), nullptr, 10));
      ++col;
    }
    if (col != t.names.size())
      throw ParseError("table line " + std::to_string(lineno) +
                       ": too few cells");
    ++t.rows;
  }
  return t;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"desk-scale emulator and cost workbench for general "
               "computation under homomorphic encryption"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  CommonFlags flags;
  app.add_option("--config", flags.config_path,
                 "key-value config file (FHEGEN_CONFIG names a default)");
  app.add_option("--format", flags.format, "json | csv | markdown")
      ->default_val("json");
  app.add_option("--out", flags.out_path, "write the report to a file");
  app.add_option("--jobs", flags.jobs, "worker threads (default: hardware)");
  app.add_option("--seed", flags.seed, "base RNG seed")->default_val(42);
  app.add_option("--repeat", flags.repeat,
                 "instances per scenario (seed advances by one each)")
      ->default_val(1);

  // bench ------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run the mixed-operation workloads");
  std::string bench_workload = "all", bench_method = "all";
  std::vector<unsigned> bench_bits{6, 8, 12, 16};
  uint64_t bench_slots = 64;
  bench->add_option("--workload", bench_workload, "w1 | w2 | w3 | all");
  bench->add_option("--method", bench_method,
                    "tfhe | scheme | encoding | all");
  bench->add_option("--bits", bench_bits, "input bit widths")
      ->delimiter(',');
  bench->add_option("--slots", bench_slots,
                    "SIMD lanes for the word-wise methods");

  // app ---------------------------------------------------------------------
  auto* appcmd = app.add_subcommand("app", "run an end-to-end application");
  appcmd->require_subcommand(1);
  std::string app_method = "encoding";
  unsigned app_bits = 0;  // 0 = per-app default
  std::string app_input;

  auto add_app_common = [&](CLI::App* sub) {
    sub->add_option("--method", app_method, "tfhe | scheme | encoding");
    sub->add_option("--bits", app_bits, "input bit width");
    sub->add_option("--input", app_input, "instance file instead of random");
  };

  auto* floyd = appcmd->add_subcommand("floyd", "all-pairs shortest paths");
  uint64_t floyd_nodes = 8;
  floyd->add_option("--nodes", floyd_nodes, "graph size");
  add_app_common(floyd);

  auto* tree = appcmd->add_subcommand("tree", "decision tree inference");
  unsigned tree_depth = 4;
  uint64_t tree_features = 8;
  tree->add_option("--depth", tree_depth, "tree depth");
  tree->add_option("--features", tree_features, "feature vector length");
  add_app_common(tree);

  auto* sortc = appcmd->add_subcommand("sort", "direct sorting");
  uint64_t sort_len = 8;
  bool sort_ascending = false;
  sortc->add_option("--len", sort_len, "array length");
  sortc->add_flag("--ascending", sort_ascending, "reverse the output order");
  add_app_common(sortc);

  auto* db = appcmd->add_subcommand("db", "filtered selection query");
  uint64_t db_rows = 128;
  db->add_option("--rows", db_rows, "table rows");
  add_app_common(db);

  // advise -------------------------------------------------------------------
  auto* advise_cmd = app.add_subcommand("advise", "method selection guide");
  std::string adv_ops, adv_simd, adv_exact;
  advise_cmd->add_option("--ops", adv_ops, "linear | nonlinear | mixed")
      ->required();
  advise_cmd->add_option("--simd", adv_simd, "yes | no")->required();
  advise_cmd->add_option("--exact", adv_exact, "yes | no")->required();

  // report -------------------------------------------------------------------
  auto* report_cmd =
      app.add_subcommand("report", "re-render a json-lines report");
  std::string report_in;
  report_cmd->add_option("--in", report_in, "json-lines report file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help lands here
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    const Config cfg = load_config(flags);
    const RunOptions opts = options_from_config(cfg);
    const unsigned jobs = resolve_jobs(flags.jobs);

    // [context] keys act as defaults wherever the flag was not given.
    const std::string cfg_method = cfg.get_string("context.method", "");
    const unsigned cfg_bits = static_cast<unsigned>(cfg.get_u64(
        "context.b", cfg.get_u64("context.bits", 0)));
    const uint64_t cfg_slots = cfg.get_u64("context.slot_count", 0);

    if (bench->parsed()) {
      if (!bench->count("--method") && !cfg_method.empty())
        bench_method = cfg_method;
      if (!bench->count("--bits") && cfg_bits) bench_bits = {cfg_bits};
      if (!bench->count("--slots") && cfg_slots) bench_slots = cfg_slots;
      for (Method method : methods_from_flag(bench_method))
        for (unsigned bits : bench_bits) {
          if (is_word_wise(method) && !cfg.get("context.p") &&
              bits != 6 && bits != 8 && bits != 12 && bits != 16)
            throw ParseError("word-wise methods run at 6, 8, 12 or 16 bits "
                             "(got " + std::to_string(bits) + ")");
          if (method == Method::BitwiseTfhe && !is_supported_bit_width(bits))
            throw ParseError("the bit-wise method runs at 6, 8, 12, 16, 24 "
                             "or 32 bits (got " + std::to_string(bits) + ")");
        }
      std::vector<std::function<ReportRow()>> jobs_list;
      for (WorkloadKind kind : workloads_from_flag(bench_workload))
        for (Method method : methods_from_flag(bench_method))
          for (unsigned bits : bench_bits)
            for (unsigned rep = 0; rep < flags.repeat; ++rep) {
              const uint64_t seed = flags.seed + rep;
              jobs_list.push_back([=, &cfg, &opts]() {
                return run_bench_scenario(kind, method, bits, bench_slots,
                                          seed, opts, cfg);
              });
            }
      return emit_rows(run_scenarios(std::move(jobs_list), jobs), flags, out,
                       err);
    }

    if (appcmd->parsed()) {
      CLI::App* active = appcmd->get_subcommands().front();
      if (!active->count("--method") && !cfg_method.empty())
        app_method = cfg_method;
      if (!active->count("--bits") && cfg_bits) app_bits = cfg_bits;
      const Method method = method_from_name(app_method);
      std::vector<std::function<ReportRow()>> jobs_list;
      for (unsigned rep = 0; rep < flags.repeat; ++rep) {
        const uint64_t seed = flags.seed + rep;
        if (floyd->parsed()) {
          const unsigned bits = app_bits ? app_bits : 8;
          Graph fixed;
          const bool has_fixed = !app_input.empty();
          if (has_fixed) {
            EvalContext probe = make_context(method, bits, 1);
            fixed = load_graph(app_input, graph_infinity(probe));
          }
          const size_t nodes = has_fixed ? fixed.n : floyd_nodes;
          jobs_list.push_back([=, &cfg, &opts]() {
            return run_floyd_scenario(method, bits, nodes, seed, opts, cfg,
                                      has_fixed ? &fixed : nullptr);
          });
        } else if (tree->parsed()) {
          const unsigned bits = app_bits ? app_bits : 16;
          DecisionTree fixed;
          const bool has_fixed = !app_input.empty();
          if (has_fixed) fixed = load_tree(app_input);
          const unsigned depth = has_fixed ? fixed.depth : tree_depth;
          jobs_list.push_back([=, &cfg, &opts]() {
            return run_tree_scenario(method, bits, depth, tree_features, seed,
                                     opts, cfg, has_fixed ? &fixed : nullptr);
          });
        } else if (sortc->parsed()) {
          const unsigned bits = app_bits ? app_bits : 8;
          std::vector<uint64_t> fixed;
          const bool has_fixed = !app_input.empty();
          if (has_fixed) fixed = load_numbers(app_input);
          const size_t len = has_fixed ? fixed.size() : sort_len;
          jobs_list.push_back([=, &cfg, &opts]() {
            return run_sort_scenario(method, bits, len, seed, opts, cfg,
                                     sort_ascending,
                                     has_fixed ? &fixed : nullptr);
          });
        } else if (db->parsed()) {
          const unsigned bits = app_bits ? app_bits : 16;
          Table fixed;
          const bool has_fixed = !app_input.empty();
          if (has_fixed) fixed = load_csv_table(app_input);
          const size_t rows = has_fixed ? fixed.rows : db_rows;
          jobs_list.push_back([=, &cfg, &opts]() {
            return run_db_scenario(method, bits, rows, seed, opts, cfg,
                                   has_fixed ? &fixed : nullptr);
          });
        }
      }
      return emit_rows(run_scenarios(std::move(jobs_list), jobs), flags, out,
                       err);
    }

    if (advise_cmd->parsed()) {
      auto yesno = [](const std::string& s, const char* what) {
        if (s == "yes") return true;
        if (s == "no") return false;
        throw ParseError(std::string(what) + " must be yes or no, got " + s);
      };
      AdvisorQuery q;
      q.op_mix = op_mix_from_name(adv_ops);
      q.simd_useful = yesno(adv_simd, "--simd");
      q.exact_required = yesno(adv_exact, "--exact");
      const Advice a = advise(q);
      if (report_format_from_name(flags.format) == ReportFormat::JsonLines) {
        nlohmann::ordered_json j;
        j["op_mix"] = op_mix_name(q.op_mix);
        j["simd"] = q.simd_useful;
        j["exact"] = q.exact_required;
        j["recommendation"] = a.recommendation;
        j["notes"] = a.notes;
        out << j.dump() << '\n';
      } else {
        out << "recommendation: " << a.recommendation << '\n'
            << "notes: " << a.notes << '\n';
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      std::ifstream f(report_in);
      if (!f) throw ParseError("cannot open report file: " + report_in);
      std::ostringstream buf;
      buf << f.rdbuf();
      std::vector<ReportRow> rows = parse_report(buf.str());
      const std::string body =
          emit_report(rows, report_format_from_name(flags.format));
      if (!flags.out_path.empty()) {
        std::ofstream of(flags.out_path, std::ios::binary);
        if (!of) throw ParseError("cannot open output file: " + flags.out_path);
        of << body;
      } else {
        out << body;
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace fhegen
