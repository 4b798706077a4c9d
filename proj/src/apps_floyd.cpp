// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "fhegen/apps.hpp"

namespace fhegen {

uint64_t graph_infinity(const EvalContext& ctx) {
  const uint64_t modulus =
      is_word_wise(ctx.method()) ? ctx.pr : (uint64_t{1} << ctx.bits);
  return (modulus - 1) / 2;
}

FloydResult floyd_warshall_plain(const Graph& g, uint64_t inf) {
  const size_t n = g.n;
  FloydResult out;
  out.dist = g.w;
  out.pred.assign(n, std::vector<uint64_t>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.pred[i][j] = j;

  for (size_t k = 0; k < n; ++k) {
    const std::vector<uint64_t> row_k = out.dist[k];
    const std::vector<uint64_t> pred_k = out.pred[k];
    for (size_t i = 0; i < n; ++i) {
      const uint64_t via = out.dist[i][k];
      for (size_t j = 0; j < n; ++j) {
        const uint64_t cand = via + row_k[j];
        if (cand < out.dist[i][j]) {
          out.dist[i][j] = cand;
          out.pred[i][j] = pred_k[j];
        }
      }
    }
  }
  return out;
}

EncGraph encrypt_graph(EvalContext& ctx, const Graph& g) {
  EncGraph out;
  out.n = g.n;
  out.inf = graph_infinity(ctx);
  if (is_word_wise(ctx.method()) && ctx.slot_count != g.n)
    throw ContextMismatch("encrypt_graph: context must provide one slot per node");
  std::vector<uint64_t> index(g.n);
  for (size_t j = 0; j < g.n; ++j) index[j] = j;
  for (size_t i = 0; i < g.n; ++i) {
    for (uint64_t wv : g.w[i])
      if (wv > out.inf)
        throw RangeViolation("encrypt_graph: weight exceeds the distance sentinel");
    out.dist.push_back(enc_encode(ctx, g.w[i], out.inf));
    out.pred.push_back(enc_encode(ctx, index, g.n - 1));
  }
  return out;
}

void floyd_warshall_enc(EvalContext& ctx, EncGraph& g) {
  const size_t n = g.n;
  for (size_t k = 0; k < n; ++k) {
    // Row k is immutable during its own iteration (relaxing through k never
    // shortens row k), so the handles can simply be captured.
    const EncVec row_k = g.dist[k];
    const EncVec pred_k = g.pred[k];
    try {
      for (size_t i = 0; i < n; ++i) {
        EncVec via = enc_broadcast(ctx, g.dist[i], k);
        EncVec cand = enc_add(ctx, via, row_k);
        CmpResult shorter = compare_lt(ctx, cand, g.dist[i]);
        g.dist[i] = enc_select(ctx, shorter.mask, cand, g.dist[i]);
        g.pred[i] = enc_select(ctx, shorter.mask, pred_k, g.pred[i]);
      }
    } catch (const DepthExceeded& e) {
      throw DepthExceeded(std::string(e.what()) +
                          " (relaxation iteration k=" + std::to_string(k) + ")");
    }
  }
}

FloydResult decrypt_graph(EvalContext& ctx, const EncGraph& g) {
  FloydResult out;
  for (const EncVec& row : g.dist) {
    auto v = enc_decode(ctx, row);
    v.resize(g.n);
    out.dist.push_back(std::move(v));
  }
  for (const EncVec& row : g.pred) {
    auto v = enc_decode(ctx, row);
    v.resize(g.n);
    out.pred.push_back(std::move(v));
  }
  return out;
}

Graph random_graph(Rng& rng, size_t n, uint64_t inf, double edge_percent) {
  // Any explored path sums at most n-1 finite weights plus one sentinel,
  // so weights capped at inf/(2n) keep every candidate strictly below inf.
  const uint64_t max_w = std::max<uint64_t>(1, inf / (2 * n));
  Graph g;
  g.n = n;
  g.w.assign(n, std::vector<uint64_t>(n, inf));
  const uint64_t threshold = static_cast<uint64_t>(edge_percent * 100.0);
  for (size_t i = 0; i < n; ++i) {
    g.w[i][i] = 0;
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.below(10000) < threshold) g.w[i][j] = rng.range(1, max_w);
    }
  }
  return g;
}

unsigned floyd_depth_budget(Method method, unsigned bits, size_t n) {
  if (method == Method::BitwiseTfhe) return 1;
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  // Every iteration stacks one comparison and one masked select onto the
  // running rows.
  return static_cast<unsigned>(n * (unit.cmp_depth + 1) + 4);
}

ScenarioPrediction predict_floyd(Method method, unsigned bits, size_t n) {
  ScenarioPrediction pred;
  const uint64_t steps = static_cast<uint64_t>(n) * n;
  if (method == Method::BitwiseTfhe) {
    const Predicted unit = predict(CostRow::BitwiseTfhe, bits);
    pred.gate_bootstraps =
        steps * n * (unit.add_gates + unit.cmp_gates + 2 * unit.select_gates);
    pred.max_depth = 0;
    return pred;
  }
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  pred.nonscalar_mults = steps * (unit.cmp_nonscalar_mults + 2);
  pred.switch_units = steps * n * unit.cmp_switch_units;
  pred.max_depth = static_cast<uint64_t>(n) * (unit.cmp_depth + 1);
  return pred;
}

}  // namespace fhegen
