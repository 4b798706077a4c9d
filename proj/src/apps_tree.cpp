// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <bit>
#include <map>

#include "fhegen/apps.hpp"

namespace fhegen {

uint64_t tree_infer_plain(const DecisionTree& t,
                          const std::vector<uint64_t>& feats) {
  size_t node = 0;  // index within the current level
  size_t leaf = 0;
  for (unsigned level = 0; level < t.depth; ++level) {
    const bool left = feats[t.features[level][node]] < t.thresholds[level][node];
    leaf = leaf * 2 + (left ? 0 : 1);
    node = leaf;
  }
  return t.labels[leaf];
}

DecisionTree random_tree(Rng& rng, unsigned depth, size_t n_features,
                         uint64_t value_top, uint64_t label_top) {
  DecisionTree t;
  t.depth = depth;
  for (unsigned level = 0; level < depth; ++level) {
    const size_t width = size_t{1} << level;
    std::vector<uint64_t> thr(width);
    std::vector<size_t> feat(width);
    for (size_t i = 0; i < width; ++i) {
      thr[i] = rng.below(value_top);
      feat[i] = rng.below(n_features);
    }
    t.thresholds.push_back(std::move(thr));
    t.features.push_back(std::move(feat));
  }
  const size_t leaves = size_t{1} << depth;
  t.labels.resize(leaves);
  for (size_t i = 0; i < leaves; ++i) t.labels[i] = rng.below(label_top);
  return t;
}

size_t pdte_slot_count(const DecisionTree& t, size_t n_features) {
  size_t features = std::max<size_t>(1, n_features);
  for (const auto& level : t.features)
    for (size_t f : level) features = std::max(features, f + 1);
  return std::max(size_t{1} << t.depth, std::bit_ceil(features));
}

namespace {

// Pulls feats[src[leaf]] into slot `leaf` for every leaf, grouping leaves
// that share a rotation offset: one rotation, one plaintext mask and one
// addition per distinct offset.
WordCipher gather_slots(EvalContext& ctx, const WordCipher& feats,
                        const std::vector<size_t>& src) {
  const size_t n = feats.slots.size();
  std::map<size_t, std::vector<uint64_t>> groups;  // shift -> mask
  for (size_t leaf = 0; leaf < src.size(); ++leaf) {
    const size_t shift = (src[leaf] + n - leaf) % n;
    auto& mask = groups.try_emplace(shift, std::vector<uint64_t>(n, 0))
                     .first->second;
    mask[leaf] = 1;
  }
  WordCipher acc;
  bool first = true;
  for (const auto& [shift, mask] : groups) {
    WordCipher part = shift == 0 ? feats : ct_rotate(ctx, feats, shift);
    part = ct_mul_plain(ctx, part, mask);
    acc = first ? part : ct_add(ctx, acc, part);
    first = false;
  }
  return acc;
}

PdteOutput pdte_word(EvalContext& ctx, const DecisionTree& t,
                     const std::vector<uint64_t>& feats) {
  if (ctx.p <= t.depth)
    throw InvalidModulus(
        "pdte_infer: the zero test needs the digit base above the tree depth");
  const unsigned d = t.depth;
  const size_t leaves = size_t{1} << d;
  if (ctx.slot_count < pdte_slot_count(t, feats.size()))
    throw ContextMismatch("pdte_infer: context has too few slots for the tree");

  EncVec fvec = enc_encode(ctx, feats);
  WordCipher acc = encode(ctx, std::vector<uint64_t>(ctx.slot_count, 0), 0);

  for (unsigned level = 0; level < d; ++level) {
    std::vector<size_t> src(leaves);
    std::vector<uint64_t> thr(ctx.slot_count, 0);
    std::vector<uint64_t> flip(ctx.slot_count, 0);
    for (size_t leaf = 0; leaf < leaves; ++leaf) {
      const size_t node = leaf >> (d - level);
      src[leaf] = t.features[level][node];
      thr[leaf] = t.thresholds[level][node];
      // Miss bit 1 - w = c XOR [leaf goes left], with c the went-left
      // comparison result.
      flip[leaf] = ((leaf >> (d - 1 - level)) & 1) ? 0 : 1;
    }
    WordCipher layer = gather_slots(ctx, fvec.wc, src);
    EncVec layer_vec;
    layer_vec.word = true;
    layer_vec.wc = std::move(layer);
    CmpResult went_left = compare_lt_plain(ctx, layer_vec, thr);
    EncVec miss = mask_xor_plain(ctx, went_left.mask, flip);
    acc = ct_add(ctx, acc, miss.wc);
  }

  EncVec acc_vec;
  acc_vec.word = true;
  acc_vec.wc = std::move(acc);
  CmpResult indicator = compare_eq_zero(ctx, acc_vec);

  std::vector<uint64_t> labels(ctx.slot_count, 0);
  for (size_t leaf = 0; leaf < leaves; ++leaf) labels[leaf] = t.labels[leaf];
  WordCipher labeled = ct_mul_plain(ctx, indicator.mask.wc, labels);
  WordCipher total = ct_total_sum(ctx, labeled);

  PdteOutput out;
  out.label = decode(total)[0];
  out.indicators = decode(indicator.mask.wc);
  out.indicators.resize(leaves);
  return out;
}

PdteOutput pdte_bits(EvalContext& ctx, const DecisionTree& t,
                     const std::vector<uint64_t>& feats) {
  const unsigned d = t.depth;
  const size_t leaves = size_t{1} << d;
  std::vector<BitCipher> fct;
  fct.reserve(feats.size());
  for (uint64_t f : feats) fct.push_back(bit_encode(ctx, f));

  // One facade comparison per layer; lanes are the layer's nodes, each
  // reading its own feature ciphertext handle.
  std::vector<std::vector<uint8_t>> went_left(d);
  for (unsigned level = 0; level < d; ++level) {
    const size_t width = size_t{1} << level;
    EncVec lanes;
    lanes.word = false;
    std::vector<uint64_t> thr(width);
    for (size_t nodeIdx = 0; nodeIdx < width; ++nodeIdx) {
      lanes.lanes.push_back(fct[t.features[level][nodeIdx]]);
      thr[nodeIdx] = t.thresholds[level][nodeIdx];
    }
    CmpResult c = compare_lt_plain(ctx, lanes, thr);
    went_left[level].resize(width);
    for (size_t nodeIdx = 0; nodeIdx < width; ++nodeIdx)
      went_left[level][nodeIdx] = c.mask.lanes[nodeIdx].bits[0];
  }

  // Gate bootstrapping refreshes every gate, so the plain path product
  // c_1 * ... * c_d runs as a flat AND chain per leaf.
  std::vector<uint8_t> indicator(leaves);
  for (size_t leaf = 0; leaf < leaves; ++leaf) {
    uint8_t ind = 1;
    bool have = false;
    for (unsigned level = 0; level < d; ++level) {
      const size_t node = leaf >> (d - level);
      uint8_t c = went_left[level][node];
      if ((leaf >> (d - 1 - level)) & 1) c = bit_gate(ctx, GateOp::Not, c);
      ind = have ? bit_gate(ctx, GateOp::And, ind, c) : c;
      have = true;
    }
    indicator[leaf] = ind;
  }

  // Exactly one indicator is hot; the label bits are merged obliviously
  // across all leaves (plaintext label bits gate each contribution freely).
  BitCipher out_bits = bit_encode(ctx, 0);
  for (size_t bitIdx = 0; bitIdx < out_bits.width(); ++bitIdx) {
    uint8_t accBit = 0;
    bool have = false;
    for (size_t leaf = 0; leaf < leaves; ++leaf) {
      const uint8_t term =
          ((t.labels[leaf] >> bitIdx) & 1) ? indicator[leaf] : 0;
      accBit = have ? bit_gate(ctx, GateOp::Or, accBit, term) : term;
      have = true;
    }
    out_bits.bits[bitIdx] = accBit;
  }

  PdteOutput out;
  out.label = bit_decode(out_bits);
  out.indicators.assign(indicator.begin(), indicator.end());
  return out;
}

}  // namespace

PdteOutput pdte_infer(EvalContext& ctx, const DecisionTree& t,
                      const std::vector<uint64_t>& feats) {
  if (t.depth == 0) throw ContextMismatch("pdte_infer: tree has no levels");
  if (is_word_wise(ctx.method())) return pdte_word(ctx, t, feats);
  return pdte_bits(ctx, t, feats);
}

unsigned pdte_depth_budget(Method method, unsigned bits, unsigned tree_depth) {
  if (method == Method::BitwiseTfhe) return 1;
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  (void)tree_depth;  // the complement sum keeps the level cost flat
  return static_cast<unsigned>(unit.cmp_depth + unit.eq_depth + 4);
}

ScenarioPrediction predict_pdte(Method method, unsigned bits,
                                unsigned tree_depth, size_t n_features) {
  ScenarioPrediction pred;
  const uint64_t leaves = uint64_t{1} << tree_depth;
  if (method == Method::BitwiseTfhe) {
    const Predicted unit = predict(CostRow::BitwiseTfhe, bits);
    pred.gate_bootstraps = (leaves - 1) * unit.cmp_gates +
                           leaves * tree_depth + bits * leaves;
    pred.max_depth = 0;
    return pred;
  }
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  pred.nonscalar_mults =
      tree_depth * unit.cmp_nonscalar_mults + unit.eq_nonscalar_mults;
  const uint64_t slots =
      std::max<uint64_t>(leaves, std::bit_ceil(std::max<size_t>(1, n_features)));
  pred.switch_units = (tree_depth + 1) * slots * unit.cmp_switch_units;
  pred.max_depth = unit.cmp_depth + unit.eq_depth + 1;
  return pred;
}

}  // namespace fhegen
