// SPDX-License-Identifier: Apache-2.0
#include "fhegen/runner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "fhegen/costmodel.hpp"

namespace fhegen {

namespace {

std::string scenario_id(const std::string& kind, const std::string& name,
                        Method method, unsigned bits, const std::string& size_key,
                        uint64_t size, uint64_t seed) {
  std::ostringstream os;
  os << kind << '-' << name << '-' << method_name(method) << "-b" << bits << '-'
     << size_key << size << "-seed" << seed;
  return os.str();
}

void finish_row(ReportRow& row, const CostLedger& ledger,
                const ScenarioPrediction& pred_in, const Calibration& cal) {
  row.ledger = ledger;
  ScenarioPrediction pred = pred_in;
  pred.scenario = row.scenario;
  row.pred_nonscalar_mults = pred.nonscalar_mults;
  row.pred_gate_bootstraps = pred.gate_bootstraps;
  row.pred_switch_units = pred.switch_units;
  row.pred_max_depth = pred.max_depth;
  const ReconcileRow rec = reconcile(pred, row.scenario, ledger);
  row.ratio_nonscalar = rec.ratio_nonscalar;
  row.ratio_gates = rec.ratio_gates;
  row.ratio_switches = rec.ratio_switch_units;
  row.depth_ok = rec.depth_ok;
  row.mult_warn = rec.mult_warn;
  row.estimated_ms = estimated_ms(ledger, cal);
  const bool simd = is_word_wise(method_from_name(row.method));
  row.amortized_ms = simd && row.slot_count > 0
                         ? row.estimated_ms / static_cast<double>(row.slot_count)
                         : row.estimated_ms;
}

}  // namespace

ReportRow run_bench_scenario(WorkloadKind kind, Method method, unsigned bits,
                             size_t slots, uint64_t seed,
                             const RunOptions& opts, const Config& cfg) {
  ReportRow row;
  row.kind = "bench";
  row.name = workload_name(kind);
  row.method = method_name(method);
  row.bits = bits;
  row.seed = seed;
  if (method == Method::BitwiseTfhe) slots = 1;
  row.slot_count = slots;
  row.size = slots;
  row.scenario = scenario_id("bench", row.name, method, bits, "s", slots, seed);
  try {
    WorkloadSpec spec;
    spec.kind = kind;
    spec.method = method;
    spec.bits = bits;
    spec.slot_count = slots;
    spec.seed = seed;
    spec.cal = opts.cal;
    spec.p_override = cfg.get_u64("context.p", 0);
    spec.r_override = cfg.get_u64("context.r", 0);
    spec.depth_budget = opts.budget_for(
        method, static_cast<unsigned>(
                    cfg.get_u64("context.depth_budget",
                                default_depth_budget(bits, opts.bits_per_level))));
    WorkloadResult res = run_workload(spec);
    row.oracle_pass = res.oracle_ok && res.range_clean;
    finish_row(row, res.ledger, res.predicted, opts.cal);
  } catch (const Error&) {
    row.oracle_pass = false;
    finish_row(row, CostLedger{}, ScenarioPrediction{}, opts.cal);
  }
  return row;
}

ReportRow run_floyd_scenario(Method method, unsigned bits, size_t nodes,
                             uint64_t seed, const RunOptions& opts,
                             const Config& cfg, const Graph* fixed) {
  ReportRow row;
  row.kind = "app";
  row.name = "floyd";
  row.method = method_name(method);
  row.bits = bits;
  row.seed = seed;
  row.size = nodes;
  row.slot_count = is_word_wise(method) ? nodes : 1;
  row.scenario = scenario_id("app", "floyd", method, bits, "n", nodes, seed);
  try {
    const unsigned budget =
        opts.budget_for(method, floyd_depth_budget(method, bits, nodes));
    EvalContext ctx = context_from_options(
        opts, cfg, method, bits, is_word_wise(method) ? nodes : 1, budget);
    Rng rng = Rng(seed);
    Graph g = fixed ? *fixed : random_graph(rng, nodes, graph_infinity(ctx));
    EncGraph eg = encrypt_graph(ctx, g);
    floyd_warshall_enc(ctx, eg);
    FloydResult enc = decrypt_graph(ctx, eg);
    FloydResult plain = floyd_warshall_plain(g, eg.inf);
    row.oracle_pass = enc.dist == plain.dist && enc.pred == plain.pred;
    finish_row(row, ctx.ledger, predict_floyd(method, bits, nodes), opts.cal);
  } catch (const Error&) {
    row.oracle_pass = false;
    finish_row(row, CostLedger{}, ScenarioPrediction{}, opts.cal);
  }
  return row;
}

ReportRow run_tree_scenario(Method method, unsigned bits, unsigned tree_depth,
                            size_t n_features, uint64_t seed,
                            const RunOptions& opts, const Config& cfg,
                            const DecisionTree* fixed) {
  ReportRow row;
  row.kind = "app";
  row.name = "tree";
  row.method = method_name(method);
  row.bits = bits;
  row.seed = seed;
  row.size = tree_depth;
  row.scenario =
      scenario_id("app", "tree", method, bits, "d", tree_depth, seed);
  try {
    Rng rng = Rng(seed);
    const uint64_t value_top = uint64_t{1} << bits;
    DecisionTree tree = fixed ? *fixed
                              : random_tree(rng, tree_depth, n_features,
                                            value_top, value_top);
    const size_t slots =
        is_word_wise(method) ? pdte_slot_count(tree, n_features) : 1;
    row.slot_count = slots;
    const unsigned budget =
        opts.budget_for(method, pdte_depth_budget(method, bits, tree_depth));
    EvalContext ctx =
        context_from_options(opts, cfg, method, bits, slots, budget);
    std::vector<uint64_t> feats(n_features);
    for (auto& f : feats) f = rng.below(value_top);
    PdteOutput out = pdte_infer(ctx, tree, feats);
    const uint64_t expected = tree_infer_plain(tree, feats);
    uint64_t hot = 0;
    for (uint64_t v : out.indicators) hot += v;
    row.oracle_pass = out.label == expected && hot == 1;
    finish_row(row, ctx.ledger,
               predict_pdte(method, bits, tree.depth, n_features), opts.cal);
  } catch (const Error&) {
    row.oracle_pass = false;
    finish_row(row, CostLedger{}, ScenarioPrediction{}, opts.cal);
  }
  return row;
}

ReportRow run_sort_scenario(Method method, unsigned bits, size_t length,
                            uint64_t seed, const RunOptions& opts,
                            const Config& cfg, bool ascending,
                            const std::vector<uint64_t>* fixed) {
  ReportRow row;
  row.kind = "app";
  row.name = "sort";
  row.method = method_name(method);
  row.bits = bits;
  row.seed = seed;
  row.size = length;
  row.slot_count = 1;
  row.scenario = scenario_id("app", "sort", method, bits, "m", length, seed);
  try {
    Rng rng = Rng(seed);
    std::vector<uint64_t> xs;
    if (fixed) {
      xs = *fixed;
    } else {
      xs.resize(length);
      for (auto& v : xs) v = rng.below(uint64_t{1} << bits);
    }
    const unsigned budget =
        opts.budget_for(method, sort_depth_budget(method, bits));
    EvalContext ctx = context_from_options(opts, cfg, method, bits, 1, budget);
    SortOutput out = direct_sort(ctx, xs, ascending);
    std::vector<uint64_t> expected = xs;
    std::sort(expected.begin(), expected.end());
    if (!ascending) std::reverse(expected.begin(), expected.end());
    std::vector<bool> seen(xs.size(), false);
    bool bijection = true;
    for (uint64_t s : out.sigma) {
      if (s >= xs.size() || seen[s]) { bijection = false; break; }
      seen[s] = true;
    }
    row.oracle_pass = out.sorted == expected && bijection;
    finish_row(row, ctx.ledger, predict_sort(method, bits, xs.size()),
               opts.cal);
  } catch (const Error&) {
    row.oracle_pass = false;
    finish_row(row, CostLedger{}, ScenarioPrediction{}, opts.cal);
  }
  return row;
}

ReportRow run_db_scenario(Method method, unsigned bits, size_t rows,
                          uint64_t seed, const RunOptions& opts,
                          const Config& cfg, const Table* fixed) {
  ReportRow row;
  row.kind = "app";
  row.name = "db";
  row.method = method_name(method);
  row.bits = bits;
  row.seed = seed;
  row.scenario = scenario_id("app", "db", method, bits, "rows", rows, seed);
  try {
    Rng rng = Rng(seed);
    Table t = fixed ? *fixed : random_salary_table(rng, rows);
    row.size = t.rows;
    row.slot_count = is_word_wise(method) ? t.rows : 1;
    const Predicate query = salary_hours_query();
    // The table invariant requires the predicate arithmetic to stay inside
    // the modulus, so the plaintext space widens past the requested bits
    // when the query needs the headroom.
    bits = db_effective_bits(method, bits, db_value_ceiling(t, query));
    row.bits = bits;
    row.scenario = scenario_id("app", "db", method, bits, "rows", rows, seed);
    const unsigned budget =
        opts.budget_for(method, db_depth_budget(method, bits, query));
    EvalContext ctx = context_from_options(
        opts, cfg, method, bits, is_word_wise(method) ? t.rows : 1, budget);
    EncTable enc = encrypt_table(ctx, t, (uint64_t{1} << bits) - 1);
    EncVec mask = db_filter(ctx, enc, query);
    EncVec ids = db_select_ids(ctx, enc, "id", mask);
    std::vector<uint64_t> got_mask = enc_decode(ctx, mask);
    got_mask.resize(t.rows);
    std::vector<uint64_t> got_ids = enc_decode(ctx, ids);
    got_ids.resize(t.rows);
    const std::vector<uint64_t> want_mask = db_filter_plain(t, query);
    std::vector<uint64_t> want_ids(t.rows);
    for (size_t i = 0; i < t.rows; ++i)
      want_ids[i] = want_mask[i] ? t.column("id")[i] : 0;
    row.oracle_pass = got_mask == want_mask && got_ids == want_ids;
    finish_row(row, ctx.ledger, predict_db(method, bits, t.rows, query),
               opts.cal);
  } catch (const Error&) {
    row.oracle_pass = false;
    finish_row(row, CostLedger{}, ScenarioPrediction{}, opts.cal);
  }
  return row;
}

std::vector<ReportRow> run_scenarios(
    std::vector<std::function<ReportRow()>> jobs, unsigned njobs) {
  std::vector<ReportRow> rows(jobs.size());
  if (jobs.empty()) return rows;
  njobs = std::max(1u, std::min<unsigned>(njobs, jobs.size()));
  if (njobs == 1) {
    for (size_t i = 0; i < jobs.size(); ++i) rows[i] = jobs[i]();
    return rows;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(njobs);
  for (unsigned w = 0; w < njobs; ++w) {
    workers.emplace_back([&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        rows[i] = jobs[i]();
      }
    });
  }
  for (auto& t : workers) t.join();
  return rows;
}

}  // namespace fhegen
