// SPDX-License-Identifier: Apache-2.0
#include "fhegen/workloads.hpp"

#include "fhegen/compare.hpp"
#include "fhegen/rng.hpp"

namespace fhegen {

const char* workload_name(WorkloadKind k) {
  switch (k) {
    case WorkloadKind::W1: return "w1";
    case WorkloadKind::W2: return "w2";
    case WorkloadKind::W3: return "w3";
  }
  return "?";
}

WorkloadKind workload_from_name(const std::string& name) {
  if (name == "w1") return WorkloadKind::W1;
  if (name == "w2") return WorkloadKind::W2;
  if (name == "w3") return WorkloadKind::W3;
  throw UnsupportedMethod("unknown workload: " + name);
}

namespace {

ScenarioPrediction predict_workload(const WorkloadSpec& spec,
                                    const EvalContext& ctx, size_t lanes) {
  const Predicted unit =
      predict(cost_row_for(spec.method), spec.bits, ctx.p, ctx.r);
  ScenarioPrediction pred;
  const bool leading_mul = spec.kind != WorkloadKind::W2;
  const bool trailing_mul = spec.kind != WorkloadKind::W1;
  if (spec.method == Method::BitwiseTfhe) {
    pred.gate_bootstraps = lanes * unit.cmp_gates;
    if (leading_mul) pred.gate_bootstraps += lanes * unit.mul_gates;
    if (trailing_mul) pred.gate_bootstraps += lanes * unit.select_gates;
    pred.max_depth = 0;
  } else {
    pred.nonscalar_mults = unit.cmp_nonscalar_mults;
    if (leading_mul) ++pred.nonscalar_mults;
    if (trailing_mul) ++pred.nonscalar_mults;
    pred.switch_units = lanes * unit.cmp_switch_units;
    pred.max_depth = unit.cmp_depth + (leading_mul ? 1 : 0) +
                     (trailing_mul ? 1 : 0);
  }
  return pred;
}

}  // namespace

WorkloadResult run_workload(const WorkloadSpec& spec) {
  EvalContext ctx =
      make_context(spec.method, spec.bits, spec.slot_count, spec.depth_budget,
                   spec.cal, spec.p_override, spec.r_override);
  const size_t lanes = ctx.slot_count;  // 1 under the bit-wise method
  Rng rng(spec.seed);

  // Factors of the leading product stay below 2^(b/2) so the product fits
  // the b-bit budget without wrapping; everything else ranges over 2^b.
  const uint64_t half_top = uint64_t{1} << (spec.bits / 2);
  const uint64_t full_top = uint64_t{1} << spec.bits;

  std::vector<uint64_t> va(lanes), vb(lanes), vc(lanes), vd(lanes);
  for (size_t i = 0; i < lanes; ++i) {
    va[i] = rng.below(spec.kind == WorkloadKind::W2 ? full_top : half_top);
    vb[i] = rng.below(spec.kind == WorkloadKind::W2 ? full_top : half_top);
    vc[i] = rng.below(full_top);
    vd[i] = rng.below(full_top);
  }

  WorkloadResult result;
  result.spec = spec;
  result.lanes = lanes;
  result.expected.resize(lanes);
  for (size_t i = 0; i < lanes; ++i) {
    switch (spec.kind) {
      case WorkloadKind::W1:
        result.expected[i] = va[i] * vb[i] < vc[i] ? 1 : 0;
        break;
      case WorkloadKind::W2:
        result.expected[i] = (va[i] < vb[i] ? 1 : 0) * vc[i];
        break;
      case WorkloadKind::W3:
        result.expected[i] = (va[i] * vb[i] < vc[i] ? 1 : 0) * vd[i];
        break;
    }
  }

  const uint64_t half_bound = half_top - 1;
  const uint64_t full_bound = full_top - 1;
  EncVec ea = enc_encode(
      ctx, va, spec.kind == WorkloadKind::W2 ? full_bound : half_bound);
  EncVec eb = enc_encode(
      ctx, vb, spec.kind == WorkloadKind::W2 ? full_bound : half_bound);
  EncVec ec = enc_encode(ctx, vc, full_bound);
  EncVec ed = enc_encode(ctx, vd, full_bound);

  EncVec out;
  switch (spec.kind) {
    case WorkloadKind::W1: {
      CmpResult m = compare_lt(ctx, enc_mul(ctx, ea, eb), ec);
      out = m.mask;
      break;
    }
    case WorkloadKind::W2: {
      CmpResult m = compare_lt(ctx, ea, eb);
      out = apply_mask(ctx, m, ec);
      break;
    }
    case WorkloadKind::W3: {
      CmpResult m = compare_lt(ctx, enc_mul(ctx, ea, eb), ec);
      out = apply_mask(ctx, m, ed);
      break;
    }
  }

  result.outputs = enc_decode(ctx, out);
  result.outputs.resize(lanes);
  result.oracle_ok = result.outputs == result.expected;
  result.range_clean = !ctx.range_overflow;
  result.ledger = ctx.ledger;
  result.predicted = predict_workload(spec, ctx, lanes);
  return result;
}

AmortizedCost amortize(const WorkloadResult& result, size_t slot_count) {
  if (slot_count == 0)
    throw ContextMismatch("amortize: slot count must be positive");
  const double div =
      result.spec.method == Method::BitwiseTfhe ? 1.0
                                                : static_cast<double>(slot_count);
  const CostLedger& l = result.ledger;
  AmortizedCost a;
  a.nonscalar_mults = static_cast<double>(l.nonscalar_mults) / div;
  a.scalar_mults = static_cast<double>(l.scalar_mults) / div;
  a.additions = static_cast<double>(l.additions) / div;
  a.rotations = static_cast<double>(l.rotations) / div;
  a.comparisons = static_cast<double>(l.comparisons) / div;
  a.equalities = static_cast<double>(l.equalities) / div;
  a.gate_bootstraps = static_cast<double>(l.gate_bootstraps) / div;
  a.switches = static_cast<double>(l.switches) / div;
  a.switch_cost_units = static_cast<double>(l.switch_cost_units) / div;
  a.estimated_ms = estimated_ms(l, result.spec.cal) / div;
  return a;
}

}  // namespace fhegen
