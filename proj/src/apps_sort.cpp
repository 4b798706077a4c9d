// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "fhegen/apps.hpp"

namespace fhegen {

namespace {

// Widens a single mask bit to the context width so it can enter the rank
// adders; the upper bits are trivial zeros but the adders stay uniform.
BitCipher widen_mask_bit(EvalContext& ctx, const EncVec& mask) {
  BitCipher out = bit_encode(ctx, 0);
  out.bits[0] = mask.lanes[0].bits[0];
  return out;
}

}  // namespace

SortOutput direct_sort(EvalContext& ctx, const std::vector<uint64_t>& xs,
                       bool ascending) {
  const size_t m = xs.size();
  if (m == 0) throw ContextMismatch("direct_sort: empty input");
  if (is_word_wise(ctx.method()) && ctx.slot_count != 1)
    throw ContextMismatch("direct_sort: element ciphers carry a single slot");
  const uint64_t capacity =
      is_word_wise(ctx.method()) ? ctx.pr : (uint64_t{1} << ctx.bits);
  if (capacity <= m)
    throw RangeViolation("direct_sort: ranks need headroom in the plaintext space");

  std::vector<EncVec> x;
  x.reserve(m);
  for (uint64_t v : xs) x.push_back(enc_encode(ctx, {v}));

  // Strict upper triangle of the less-than matrix; the lower triangle is
  // the complement of the transpose, so no further comparisons are needed.
  std::vector<std::vector<EncVec>> lt(m, std::vector<EncVec>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      lt[i][j] = compare_lt(ctx, x[i], x[j]).mask;

  // Rank of element i: how many elements sort above it. Ties break by
  // index through the asymmetric matrix, which keeps the ranks a
  // permutation even with duplicates.
  std::vector<EncVec> sigma(m);
  for (size_t i = 0; i < m; ++i) {
    if (ctx.method() == Method::BitwiseTfhe) {
      BitCipher acc = bit_encode(ctx, 0);
      for (size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        EncVec bit = j > i ? lt[i][j] : mask_not(ctx, lt[j][i]);
        acc = bit_add(ctx, acc, widen_mask_bit(ctx, bit));
      }
      sigma[i].word = false;
      sigma[i].lanes.push_back(std::move(acc));
    } else {
      WordCipher acc = encode(ctx, {0}, 0);
      for (size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        EncVec bit = j > i ? lt[i][j] : mask_not(ctx, lt[j][i]);
        acc = ct_add(ctx, acc, bit.wc);
      }
      sigma[i].word = true;
      sigma[i].wc = std::move(acc);
    }
  }

  // One-hot placement: position k receives the element whose rank is k.
  std::vector<EncVec> placed(m);
  for (size_t k = 0; k < m; ++k) {
    EncVec acc;
    bool have = false;
    for (size_t j = 0; j < m; ++j) {
      CmpResult hit = compare_eq_plain(ctx, sigma[j], {k});
      EncVec term = apply_mask(ctx, hit, x[j]);
      if (!have) {
        acc = std::move(term);
        have = true;
      } else if (acc.word) {
        acc.wc = ct_add(ctx, acc.wc, term.wc);
      } else {
        // Exactly one term is live; an OR fold per bit merges them.
        for (size_t bitIdx = 0; bitIdx < acc.lanes[0].width(); ++bitIdx)
          acc.lanes[0].bits[bitIdx] =
              bit_gate(ctx, GateOp::Or, acc.lanes[0].bits[bitIdx],
                       term.lanes[0].bits[bitIdx]);
      }
    }
    placed[k] = std::move(acc);
  }

  SortOutput out;
  out.sorted.reserve(m);
  out.sigma.reserve(m);
  for (size_t k = 0; k < m; ++k)
    out.sorted.push_back(enc_decode(ctx, placed[k])[0]);
  for (size_t i = 0; i < m; ++i)
    out.sigma.push_back(enc_decode(ctx, sigma[i])[0]);
  if (ascending) std::reverse(out.sorted.begin(), out.sorted.end());
  return out;
}

unsigned sort_depth_budget(Method method, unsigned bits) {
  if (method == Method::BitwiseTfhe) return 1;
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  return static_cast<unsigned>(unit.cmp_depth + unit.eq_depth + 4);
}

ScenarioPrediction predict_sort(Method method, unsigned bits, size_t m) {
  ScenarioPrediction pred;
  const uint64_t pairs = static_cast<uint64_t>(m) * (m - 1) / 2;
  const uint64_t cells = static_cast<uint64_t>(m) * m;
  if (method == Method::BitwiseTfhe) {
    const Predicted unit = predict(CostRow::BitwiseTfhe, bits);
    pred.gate_bootstraps = pairs * unit.cmp_gates +
                           static_cast<uint64_t>(m) * (m - 1) * unit.add_gates +
                           cells * unit.eq_gates +
                           cells * unit.select_gates +
                           static_cast<uint64_t>(m) * (m - 1) * bits;
    pred.max_depth = 0;
    return pred;
  }
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  pred.nonscalar_mults = pairs * unit.cmp_nonscalar_mults +
                         cells * unit.eq_nonscalar_mults + cells;
  pred.switch_units = (pairs + cells) * unit.cmp_switch_units;
  pred.max_depth = unit.cmp_depth + unit.eq_depth + 1;
  return pred;
}

}  // namespace fhegen
