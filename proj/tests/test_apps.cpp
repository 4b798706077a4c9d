// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fhegen/apps.hpp"

using namespace fhegen;

namespace {

// Cross-algorithm oracle: Dijkstra from one source.
std::vector<uint64_t> dijkstra_from(const Graph& g, size_t src, uint64_t inf) {
  const size_t n = g.n;
  std::vector<uint64_t> dist(n, inf);
  std::vector<bool> done(n, false);
  dist[src] = 0;
  for (size_t round = 0; round < n; ++round) {
    size_t best = n;
    for (size_t v = 0; v < n; ++v)
      if (!done[v] && (best == n || dist[v] < dist[best])) best = v;
    if (best == n || dist[best] == inf) break;
    done[best] = true;
    for (size_t v = 0; v < n; ++v) {
      if (g.w[best][v] == inf || dist[best] + g.w[best][v] >= inf) continue;
      dist[v] = std::min(dist[v], dist[best] + g.w[best][v]);
    }
  }
  return dist;
}

uint64_t measure_cmp_mults(Method method, unsigned bits, size_t slots) {
  EvalContext probe = make_context(method, bits, slots, 10000);
  std::vector<uint64_t> v(slots, 1);
  EncVec a = enc_encode(probe, v);
  EncVec b = enc_encode(probe, v);
  compare_lt(probe, a, b);
  return probe.ledger.nonscalar_mults;
}

}  // namespace

TEST_CASE("relaxation sweep on the three-node pinned example") {
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 4, 1000);
  const uint64_t inf = graph_infinity(ctx);
  Graph g;
  g.n = 4;
  g.w.assign(4, std::vector<uint64_t>(4, inf));
  for (size_t i = 0; i < 4; ++i) g.w[i][i] = 0;
  g.w[0][1] = 4;
  g.w[1][2] = 1;
  g.w[0][2] = 10;
  EncGraph eg = encrypt_graph(ctx, g);
  floyd_warshall_enc(ctx, eg);
  FloydResult enc = decrypt_graph(ctx, eg);
  CHECK(enc.dist[0][2] == 5);
  FloydResult plain = floyd_warshall_plain(g, inf);
  CHECK(enc.dist == plain.dist);
  CHECK(enc.pred == plain.pred);
}

TEST_CASE("edgeless graphs keep the sentinel off the diagonal") {
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 4, 1000);
  const uint64_t inf = graph_infinity(ctx);
  Graph g;
  g.n = 4;
  g.w.assign(4, std::vector<uint64_t>(4, inf));
  for (size_t i = 0; i < 4; ++i) g.w[i][i] = 0;
  EncGraph eg = encrypt_graph(ctx, g);
  floyd_warshall_enc(ctx, eg);
  FloydResult enc = decrypt_graph(ctx, eg);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      CHECK(enc.dist[i][j] == (i == j ? 0 : inf));
}

TEST_CASE("encrypted distances agree with a per-source Dijkstra oracle") {
  Rng rng(17);
  for (size_t n : {4ull, 8ull}) {
    for (int trial = 0; trial < 5; ++trial) {
      EvalContext ctx = make_context(Method::EncodingSwitching, 8, n, 2000);
      const uint64_t inf = graph_infinity(ctx);
      Graph g = random_graph(rng, n, inf);
      EncGraph eg = encrypt_graph(ctx, g);
      floyd_warshall_enc(ctx, eg);
      FloydResult enc = decrypt_graph(ctx, eg);
      for (size_t src = 0; src < n; ++src)
        REQUIRE(enc.dist[src] == dijkstra_from(g, src, inf));
    }
  }
}

TEST_CASE("relaxation ledger: n^2 comparisons and exactly 2n^2 masked products") {
  const size_t n = 4;
  const unsigned bits = 8;
  Rng rng(23);
  EvalContext ctx = make_context(Method::EncodingSwitching, bits, n, 2000);
  Graph g = random_graph(rng, n, graph_infinity(ctx));
  EncGraph eg = encrypt_graph(ctx, g);
  floyd_warshall_enc(ctx, eg);
  CHECK(ctx.ledger.comparisons == n * n);
  const uint64_t per_cmp = measure_cmp_mults(Method::EncodingSwitching, bits, n);
  CHECK(ctx.ledger.nonscalar_mults == n * n * per_cmp + 2 * n * n);
}

TEST_CASE("bit-wise relaxation grows cubically while slot batching stays quadratic") {
  Rng rng(29);
  auto gates_for = [&](size_t n) {
    EvalContext ctx = make_context(Method::BitwiseTfhe, 8, 1, 1);
    Graph g = random_graph(rng, n, graph_infinity(ctx));
    EncGraph eg = encrypt_graph(ctx, g);
    floyd_warshall_enc(ctx, eg);
    return ctx.ledger.gate_bootstraps;
  };
  auto cmps_for = [&](size_t n) {
    EvalContext ctx = make_context(
        Method::EncodingSwitching, 8, n,
        floyd_depth_budget(Method::EncodingSwitching, 8, n));
    Graph g = random_graph(rng, n, graph_infinity(ctx));
    EncGraph eg = encrypt_graph(ctx, g);
    floyd_warshall_enc(ctx, eg);
    return ctx.ledger.comparisons;
  };
  // Doubling the node count scales gate bootstraps by ~8 and slot-batched
  // comparisons by exactly 4.
  const double gate_ratio = double(gates_for(8)) / double(gates_for(4));
  CHECK(gate_ratio > 6.0);
  CHECK(gate_ratio < 10.0);
  CHECK(cmps_for(8) == 4 * cmps_for(4));
}

TEST_CASE("exhausting the leveled budget reports the failing iteration") {
  Rng rng(3);
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 8, 9);
  Graph g = random_graph(rng, 8, graph_infinity(ctx));
  EncGraph eg = encrypt_graph(ctx, g);
  try {
    floyd_warshall_enc(ctx, eg);
    FAIL("expected the leveled budget to run out");
  } catch (const DepthExceeded& e) {
    CHECK(std::string(e.what()).find("k=") != std::string::npos);
  }
}

TEST_CASE("selected ids aggregate to the matching sum") {
  Table t;
  t.names = {"id", "x"};
  t.cols = {{10, 20, 30, 40}, {1, 9, 2, 8}};
  t.rows = 4;
  const Predicate q = pred_cmp(Predicate::Kind::Ge, pred_column("x"), 5);
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 4, 64);
  EncTable enc = encrypt_table(ctx, t, 255);
  EncVec ids = db_select_ids(ctx, enc, "id", db_filter(ctx, enc, q));
  WordCipher total = ct_total_sum(ctx, ids.wc);
  CHECK(decode(total)[0] == 60);  // 20 + 40
}

TEST_CASE("oversized weights are rejected before encryption") {
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 2, 100);
  Graph g;
  g.n = 2;
  g.w = {{0, graph_infinity(ctx) + 1}, {0, 0}};
  CHECK_THROWS_AS(encrypt_graph(ctx, g), RangeViolation);
}

TEST_CASE("tree traversal on the pinned depth-two example") {
  DecisionTree t;
  t.depth = 2;
  t.thresholds = {{5}, {3, 7}};
  t.features = {{0}, {0, 0}};
  t.labels = {10, 20, 30, 40};
  CHECK(tree_infer_plain(t, {4}) == 20);  // left at 5, right at 3

  for (Method m : {Method::EncodingSwitching, Method::SchemeSwitching,
                   Method::BitwiseTfhe}) {
    EvalContext ctx = make_context(m, 8, is_word_wise(m) ? 4 : 1, 100);
    PdteOutput out = pdte_infer(ctx, t, {4});
    CHECK(out.label == 20);
    CHECK(out.indicators == std::vector<uint64_t>{0, 1, 0, 0});
  }
}

TEST_CASE("all-zero thresholds route everything to the rightmost leaf") {
  DecisionTree t;
  t.depth = 3;
  t.thresholds = {{0}, {0, 0}, {0, 0, 0, 0}};
  t.features = {{0}, {0, 1}, {1, 0, 1, 0}};
  t.labels = {1, 2, 3, 4, 5, 6, 7, 8};
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 8, 100);
  PdteOutput out = pdte_infer(ctx, t, {9, 13});
  CHECK(out.label == 8);
}

TEST_CASE("random trees match the plaintext walk with a one-hot indicator") {
  Rng rng(41);
  for (unsigned depth : {2u, 4u, 6u}) {
    for (Method m : {Method::EncodingSwitching, Method::SchemeSwitching,
                     Method::BitwiseTfhe}) {
      for (int trial = 0; trial < 40; ++trial) {
        const unsigned bits = 16;
        const uint64_t top = uint64_t{1} << bits;
        DecisionTree t = random_tree(rng, depth, 6, top, top);
        const size_t slots = is_word_wise(m) ? pdte_slot_count(t, 6) : 1;
        EvalContext ctx = make_context(m, bits, slots,
                                       pdte_depth_budget(m, bits, depth));
        std::vector<uint64_t> feats(6);
        for (auto& f : feats) f = rng.below(top);
        PdteOutput out = pdte_infer(ctx, t, feats);
        REQUIRE(out.label == tree_infer_plain(t, feats));
        REQUIRE(std::accumulate(out.indicators.begin(), out.indicators.end(),
                                uint64_t{0}) == 1);
      }
    }
  }
}

TEST_CASE("word-wise traversal needs the digit base above the tree depth") {
  Rng rng(1);
  DecisionTree t = random_tree(rng, 6, 4, 256, 256);
  // p = 5 at 8-bit inputs cannot host a depth-6 complement sum.
  EvalContext ctx = make_context(Method::EncodingSwitching, 8,
                                 pdte_slot_count(t), 100);
  std::vector<uint64_t> feats(4, 1);
  CHECK_THROWS_AS(pdte_infer(ctx, t, feats), InvalidModulus);
}

TEST_CASE("rank-and-place sorting on pinned arrays") {
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 1, 100);
  CHECK(direct_sort(ctx, {3, 1, 2}).sorted == std::vector<uint64_t>{3, 2, 1});
  CHECK(direct_sort(ctx, {9}).sorted == std::vector<uint64_t>{9});
  SortOutput ties = direct_sort(ctx, {2, 2, 1});
  CHECK(ties.sorted == std::vector<uint64_t>{2, 2, 1});
  std::vector<uint64_t> sigma_sorted = ties.sigma;
  std::sort(sigma_sorted.begin(), sigma_sorted.end());
  CHECK(sigma_sorted == std::vector<uint64_t>{0, 1, 2});
  CHECK(direct_sort(ctx, {3, 1, 2}, true).sorted ==
        std::vector<uint64_t>{1, 2, 3});
}

TEST_CASE("sorting ledger counts pair comparisons and placement equalities") {
  for (Method m : {Method::EncodingSwitching, Method::BitwiseTfhe}) {
    EvalContext ctx = make_context(m, 8, 1, 100);
    const size_t len = 5;
    direct_sort(ctx, {7, 3, 9, 3, 1});
    CHECK(ctx.ledger.comparisons == len * (len - 1) / 2);
    CHECK(ctx.ledger.equalities == len * len);
  }
}

TEST_CASE("sorting handles duplicates across methods") {
  Rng rng(53);
  for (Method m : {Method::EncodingSwitching, Method::SchemeSwitching,
                   Method::BitwiseTfhe}) {
    for (int trial = 0; trial < 30; ++trial) {
      const size_t len = 1 + rng.below(10);
      std::vector<uint64_t> xs(len);
      for (auto& v : xs) v = rng.below(4);  // force ties
      EvalContext ctx = make_context(m, 8, 1, 100);
      SortOutput out = direct_sort(ctx, xs);
      std::vector<uint64_t> want = xs;
      std::sort(want.rbegin(), want.rend());
      REQUIRE(out.sorted == want);
      std::vector<uint64_t> sigma = out.sigma;
      std::sort(sigma.begin(), sigma.end());
      for (size_t i = 0; i < len; ++i) REQUIRE(sigma[i] == i);
    }
  }
}

TEST_CASE("toy table isolates the single matching row") {
  Table t;
  t.names = {"id", "salary", "work_hours", "bonus"};
  t.cols = {{7, 8, 9, 10},
            {50, 55, 90, 100},
            {60, 100, 62, 100},
            {700, 695, 800, 650}};
  t.rows = 4;
  const Predicate q = salary_hours_query();
  CHECK(db_filter_plain(t, q) == std::vector<uint64_t>{0, 1, 0, 0});

  for (Method m : {Method::EncodingSwitching, Method::SchemeSwitching,
                   Method::BitwiseTfhe}) {
    EvalContext ctx =
        make_context(m, 16, is_word_wise(m) ? 4 : 1,
                     db_depth_budget(m, 16, q));
    EncTable enc = encrypt_table(ctx, t, (1ull << 16) - 1);
    EncVec mask = db_filter(ctx, enc, q);
    auto bits = enc_decode(ctx, mask);
    bits.resize(4);
    REQUIRE(bits == std::vector<uint64_t>{0, 1, 0, 0});
    auto ids = enc_decode(ctx, db_select_ids(ctx, enc, "id", mask));
    ids.resize(4);
    REQUIRE(ids == std::vector<uint64_t>{0, 8, 0, 0});
  }
}

TEST_CASE("tautological predicates select everything") {
  Table t;
  t.names = {"id", "x"};
  t.cols = {{1, 2, 3}, {5, 0, 9}};
  t.rows = 3;
  const Predicate q = pred_cmp(Predicate::Kind::Ge, pred_column("x"), 0);
  EvalContext ctx = make_context(Method::EncodingSwitching, 8, 3, 64);
  EncTable enc = encrypt_table(ctx, t, 255);
  auto mask = enc_decode(ctx, db_filter(ctx, enc, q));
  CHECK(mask == std::vector<uint64_t>{1, 1, 1});
}

TEST_CASE("random tables match the plaintext filter and masks are idempotent") {
  Rng rng(61);
  for (size_t rows : {16ull, 64ull}) {
    Table t = random_salary_table(rng, rows);
    const Predicate q = salary_hours_query();
    EvalContext ctx = make_context(Method::EncodingSwitching, 16, rows,
                                   db_depth_budget(Method::EncodingSwitching, 16, q) + 2);
    EncTable enc = encrypt_table(ctx, t, (1ull << 16) - 1);
    EncVec mask = db_filter(ctx, enc, q);
    auto bits = enc_decode(ctx, mask);
    bits.resize(rows);
    REQUIRE(bits == db_filter_plain(t, q));
    EncVec sq = enc_mul(ctx, mask, mask);
    REQUIRE(enc_decode(ctx, sq) == enc_decode(ctx, mask));
  }
}

TEST_CASE("disjunction masks follow inclusion-exclusion") {
  Table t;
  t.names = {"x"};
  t.cols = {{1, 5, 9, 12}};
  t.rows = 4;
  const Predicate q = pred_or(pred_cmp(Predicate::Kind::Lt, pred_column("x"), 4),
                              pred_cmp(Predicate::Kind::Gt, pred_column("x"), 8));
  CHECK(db_filter_plain(t, q) == std::vector<uint64_t>{1, 0, 1, 1});
  for (Method m : {Method::EncodingSwitching, Method::BitwiseTfhe}) {
    EvalContext ctx = make_context(m, 8, is_word_wise(m) ? 4 : 1, 64);
    EncTable enc = encrypt_table(ctx, t, 255);
    auto bits = enc_decode(ctx, db_filter(ctx, enc, q));
    bits.resize(4);
    REQUIRE(bits == std::vector<uint64_t>{1, 0, 1, 1});
  }
}
