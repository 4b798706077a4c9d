// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_APPS_HPP
#define FHEGEN_APPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fhegen/compare.hpp"
#include "fhegen/costmodel.hpp"
#include "fhegen/emulator.hpp"
#include "fhegen/rng.hpp"

namespace fhegen {

// ---------------------------------------------------------------------------
// All-pairs shortest paths.

struct Graph {
  size_t n = 0;
  std::vector<std::vector<uint64_t>> w;  // w[i][j]; `inf` marks a missing edge
};

struct FloydResult {
  std::vector<std::vector<uint64_t>> dist;
  std::vector<std::vector<uint64_t>> pred;
};

// Missing-edge sentinel for a context: floor((modulus - 1) / 2), so that a
// sum of two distances never wraps the plaintext space.
uint64_t graph_infinity(const EvalContext& ctx);

// Reference relaxation sweep; the predecessor entry for (i, j) starts at j
// and picks up the intermediate row's entry whenever a strictly shorter
// path appears (the encrypted sweep uses the identical update order).
FloydResult floyd_warshall_plain(const Graph& g, uint64_t inf);

struct EncGraph {
  size_t n = 0;
  uint64_t inf = 0;
  std::vector<EncVec> dist;  // one row per ciphertext
  std::vector<EncVec> pred;
};

// Validates weights against the sentinel and row-batches the matrix.
EncGraph encrypt_graph(EvalContext& ctx, const Graph& g);
// In-place SIMD relaxation: one broadcast, one comparison and two masked
// row selects per (k, i), so exactly n^2 ledger comparisons and 2n^2
// ciphertext-ciphertext products beyond the comparisons.
void floyd_warshall_enc(EvalContext& ctx, EncGraph& g);
FloydResult decrypt_graph(EvalContext& ctx, const EncGraph& g);

// Random instance with path sums that stay clear of the sentinel.
Graph random_graph(Rng& rng, size_t n, uint64_t inf, double edge_percent = 60);

// Depth headroom needed by an n-node sweep under the context's method.
unsigned floyd_depth_budget(Method method, unsigned bits, size_t n);
ScenarioPrediction predict_floyd(Method method, unsigned bits, size_t n);

// ---------------------------------------------------------------------------
// Decision tree inference.

struct DecisionTree {
  unsigned depth = 0;
  std::vector<std::vector<uint64_t>> thresholds;  // level i holds 2^i values
  std::vector<std::vector<size_t>> features;      // feature index per node
  std::vector<uint64_t> labels;                   // 2^depth leaves
};

// Walks the tree: left when feature < threshold.
uint64_t tree_infer_plain(const DecisionTree& t,
                          const std::vector<uint64_t>& feats);

DecisionTree random_tree(Rng& rng, unsigned depth, size_t n_features,
                         uint64_t value_top, uint64_t label_top);

struct PdteOutput {
  uint64_t label = 0;
  std::vector<uint64_t> indicators;  // one 0/1 flag per leaf
};

// Oblivious traversal: layer-batched threshold comparisons, per-leaf path
// bits folded through the complement-sum zero test, label picked by the
// one-hot leaf indicator. Word-wise paths need p > depth for the zero test.
PdteOutput pdte_infer(EvalContext& ctx, const DecisionTree& t,
                      const std::vector<uint64_t>& feats);

size_t pdte_slot_count(const DecisionTree& t, size_t n_features = 0);
unsigned pdte_depth_budget(Method method, unsigned bits, unsigned tree_depth);
ScenarioPrediction predict_pdte(Method method, unsigned bits,
                                unsigned tree_depth, size_t n_features);

// ---------------------------------------------------------------------------
// Direct sorting.

struct SortOutput {
  std::vector<uint64_t> sorted;
  std::vector<uint64_t> sigma;  // rank of each input element
};

// Rank-and-place sort on one-slot ciphertexts: a strict less-than matrix
// (m(m-1)/2 comparisons), row sums as ranks, and a one-hot placement pass
// (m^2 equality tests). Descending by construction; `ascending` reverses
// the output lanes afterwards.
SortOutput direct_sort(EvalContext& ctx, const std::vector<uint64_t>& xs,
                       bool ascending = false);

unsigned sort_depth_budget(Method method, unsigned bits);
ScenarioPrediction predict_sort(Method method, unsigned bits, size_t m);

// ---------------------------------------------------------------------------
// Database filtering.

struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<uint64_t>> cols;
  size_t rows = 0;

  const std::vector<uint64_t>& column(const std::string& name) const;
};

struct EncTable {
  std::vector<std::string> names;
  std::vector<EncVec> cols;
  size_t rows = 0;

  const EncVec& column(const std::string& name) const;
};

struct Predicate {
  enum class Kind { Column, Constant, Add, Mul, Between, Lt, Le, Gt, Ge, And, Or };
  Kind kind = Kind::Constant;
  std::string column;
  uint64_t value = 0;  // Constant payload or comparison bound
  uint64_t lo = 0, hi = 0;
  std::vector<Predicate> kids;
};

Predicate pred_column(std::string name);
Predicate pred_const(uint64_t v);
Predicate pred_add(Predicate a, Predicate b);
Predicate pred_mul(Predicate a, Predicate b);
Predicate pred_between(Predicate expr, uint64_t lo, uint64_t hi);
Predicate pred_cmp(Predicate::Kind kind, Predicate expr, uint64_t bound);
Predicate pred_and(Predicate a, Predicate b);
Predicate pred_or(Predicate a, Predicate b);

// Row mask of the predicate over plaintext columns.
std::vector<uint64_t> db_filter_plain(const Table& t, const Predicate& p);

EncTable encrypt_table(EvalContext& ctx, const Table& t, uint64_t value_bound);
// Encrypted 0/1 row mask: BETWEEN compiles to [x >= lo] * [x <= hi], AND to
// a mask product, OR to m1 + m2 - m1*m2.
EncVec db_filter(EvalContext& ctx, const EncTable& t, const Predicate& p);
// id column masked lane-wise; non-matching rows decode to zero.
EncVec db_select_ids(EvalContext& ctx, const EncTable& t,
                     const std::string& id_column, const EncVec& mask);

// The running example: two BETWEEN predicates over a product and a sum.
Predicate salary_hours_query();
Table random_salary_table(Rng& rng, size_t rows);

unsigned db_depth_budget(Method method, unsigned bits, const Predicate& p);
ScenarioPrediction predict_db(Method method, unsigned bits, size_t rows,
                              const Predicate& p);

// Largest value the predicate arithmetic can reach over this table,
// including the range bounds themselves.
uint64_t db_value_ceiling(const Table& t, const Predicate& p);

// Smallest scheduled bit width (at least `requested`) whose plaintext
// space holds `ceiling` without wrapping; table invariants require the
// predicate arithmetic to stay inside the modulus.
unsigned db_effective_bits(Method method, unsigned requested,
                           uint64_t ceiling);

}  // namespace fhegen

#endif  // FHEGEN_APPS_HPP
