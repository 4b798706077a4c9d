// SPDX-License-Identifier: Apache-2.0
#include "fhegen/costmodel.hpp"

#include <cmath>

#include "fhegen/compare.hpp"

namespace fhegen {

namespace {

uint64_t ceil_u(double v) { return static_cast<uint64_t>(std::ceil(v - 1e-9)); }

uint64_t ceil_log2(uint64_t v) {
  uint64_t lg = 0;
  while ((uint64_t{1} << lg) < v) ++lg;
  return lg;
}

// Product budget of one Paterson-Stockmeyer evaluation of degree `deg`.
uint64_t ps_mult_bound(uint64_t deg) {
  const uint64_t n = deg + 1;
  return 2 * ceil_u(std::sqrt(static_cast<double>(n))) + ceil_log2(n);
}

}  // namespace

CostRow cost_row_for(Method m) {
  switch (m) {
    case Method::BitwiseTfhe: return CostRow::BitwiseTfhe;
    case Method::SchemeSwitching: return CostRow::SchemeSwitching;
    case Method::EncodingSwitching: return CostRow::EncodingSwitching;
  }
  throw UnsupportedMethod("cost_row_for: unknown method");
}

Predicted predict(CostRow row, unsigned bits, uint64_t p, uint64_t r) {
  if (bits < 1 || bits > 32)
    throw UnsupportedMethod("predict: bit width outside [1, 32]");
  Predicted out;
  switch (row) {
    case CostRow::BitwiseTfhe: {
      // Unit-constant view of the bit-wise rows: comparisons and equality
      // linear in b, a full adder costs five gates per bit, products are
      // quadratic.
      out.cmp_gates = bits;
      out.eq_gates = bits;
      out.add_gates = 5ull * bits;
      out.mul_gates = static_cast<uint64_t>(bits) * bits;
      out.select_gates = bits;
      out.cmp_depth = 0;  // gate bootstrapping refreshes every gate
      out.eq_depth = 0;
      out.mul_depth = 0;
      return out;
    }
    case CostRow::SchemeSwitching: {
      out.cmp_switch_units = uint64_t{1} << bits;
      out.cmp_depth = 0;  // the round trip returns a refreshed ciphertext
      out.eq_depth = 0;
      out.mul_depth = 1;
      return out;
    }
    case CostRow::EncodingSwitching: {
      if (p < 3 || r < 1)
        throw UnsupportedMethod("predict: encoding row needs p >= 3, r >= 1");
      const double digits = static_cast<double>(bits) /
                            std::log2(static_cast<double>(p));
      out.cmp_depth = ceil_u(std::log2(digits) +
                             std::log2(static_cast<double>(p - 1)) + 4.0);
      const uint64_t ps = ps_mult_bound(p - 1);
      const uint64_t digit_lt = 3 * ps + 2;  // half-split less-than
      const uint64_t digit_eq = 2 * ceil_log2(p - 1);
      out.cmp_nonscalar_mults = 2 * reduce_cost_mults(p, r) +
                                lift_cost_mults(p, r) +
                                r * (digit_lt + digit_eq) + 2 * r;
      out.eq_depth = ceil_log2(p - 1) + ceil_log2(r) + 1;
      out.eq_nonscalar_mults = reduce_cost_mults(p, r) + lift_cost_mults(p, r) +
                               r * digit_eq + r;
      out.mul_depth = 1;
      return out;
    }
    case CostRow::Xcmp: {
      out.cmp_nonscalar_mults = 1;
      out.cmp_depth = 1;
      return out;
    }
  }
  throw UnsupportedMethod("predict: unknown row");
}

ReconcileRow reconcile(const ScenarioPrediction& predicted,
                       const std::string& scenario,
                       const CostLedger& measured) {
  if (predicted.scenario != scenario)
    throw ScenarioMismatch("reconcile: prediction belongs to scenario '" +
                           predicted.scenario + "', ledger to '" + scenario +
                           "'");
  auto ratio = [](uint64_t m, uint64_t p) -> double {
    if (m == 0) return 0.0;
    if (p == 0) return -1.0;  // unpredicted activity
    return static_cast<double>(m) / static_cast<double>(p);
  };
  ReconcileRow row;
  row.scenario = scenario;
  row.ratio_nonscalar = ratio(measured.nonscalar_mults, predicted.nonscalar_mults);
  row.ratio_gates = ratio(measured.gate_bootstraps, predicted.gate_bootstraps);
  row.ratio_switch_units =
      ratio(measured.switch_cost_units, predicted.switch_units);
  row.depth_ok = measured.max_depth <= predicted.max_depth;
  for (double rt : {row.ratio_nonscalar, row.ratio_gates, row.ratio_switch_units})
    if (rt > 4.0 || rt < 0.0) row.mult_warn = true;
  return row;
}

OpMix op_mix_from_name(const std::string& name) {
  if (name == "linear" || name == "linear-only") return OpMix::LinearOnly;
  if (name == "nonlinear" || name == "nonlinear-only")
    return OpMix::NonlinearOnly;
  if (name == "mixed") return OpMix::Mixed;
  throw UnsupportedMethod("unknown operation mix: " + name);
}

const char* op_mix_name(OpMix mix) {
  switch (mix) {
    case OpMix::LinearOnly: return "linear-only";
    case OpMix::NonlinearOnly: return "nonlinear-only";
    case OpMix::Mixed: return "mixed";
  }
  return "?";
}

Advice advise(const AdvisorQuery& q) {
  switch (q.op_mix) {
    case OpMix::LinearOnly:
      return {"word-wise BGV/BFV/CKKS",
              "slot-packed arithmetic covers a linear-only workload outright"};
    case OpMix::NonlinearOnly:
      if (!q.simd_useful)
        return {"bit-wise TFHE",
                "gate bootstrapping evaluates comparators without batching "
                "pressure"};
      return {"word-wise non-linear family (interpolation, digit "
              "decomposition, XCMP, functional bootstrapping)",
              "slot parallelism amortizes the polynomial comparison circuits"};
    case OpMix::Mixed:
      if (!q.simd_useful)
        return {"bit-wise TFHE",
                "without batching the word-wise detour does not pay for "
                "itself"};
      if (!q.exact_required)
        return {"CKKS polynomial approximation",
                "noise-tolerant workloads trade exactness for the cheapest "
                "mixed pipeline"};
      return {"encoding switching or scheme switching",
              "encoding switching preferred at 8-bit inputs and above"};
  }
  throw UnsupportedMethod("advise: unknown operation mix");
}

}  // namespace fhegen
