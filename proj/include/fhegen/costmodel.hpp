// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_COSTMODEL_HPP
#define FHEGEN_COSTMODEL_HPP

#include <cstdint>
#include <string>

#include "fhegen/emulator.hpp"

namespace fhegen {

// Complexity rows for the methods the emulator meters, plus the
// degree-encoded comparison whose constant depth is worth predicting on its
// own. Asymptotic entries are concretized with unit constants; the
// reconciliation bands absorb the slack.
enum class CostRow { BitwiseTfhe, SchemeSwitching, EncodingSwitching, Xcmp };

CostRow cost_row_for(Method m);

// Per-operation predictions for one parameter point.
struct Predicted {
  // comparison (the non-linear unit)
  uint64_t cmp_nonscalar_mults = 0;  // word-wise methods
  uint64_t cmp_depth = 0;            // levels, ceil of the depth formula
  uint64_t cmp_gates = 0;            // bit-wise method
  uint64_t cmp_switch_units = 0;     // scheme switching, per lane
  uint64_t eq_nonscalar_mults = 0;
  uint64_t eq_depth = 0;
  uint64_t eq_gates = 0;
  // linear units
  uint64_t mul_depth = 1;
  uint64_t mul_gates = 0;   // bit-wise product
  uint64_t add_gates = 0;   // bit-wise sum
  uint64_t select_gates = 0;  // bit-wise masked select per lane
};

// Evaluates the complexity formulas at (bits, p, r); p and r are ignored
// for the bit-wise row. Throws UnsupportedMethod for parameters outside a
// row's domain.
Predicted predict(CostRow row, unsigned bits, uint64_t p = 0, uint64_t r = 0);

// Scenario-level totals, assembled by each runner from the per-operation
// predictions and its own operation plan.
struct ScenarioPrediction {
  std::string scenario;
  uint64_t nonscalar_mults = 0;
  uint64_t gate_bootstraps = 0;
  uint64_t switch_units = 0;
  uint64_t max_depth = 0;
};

struct ReconcileRow {
  std::string scenario;
  double ratio_nonscalar = 0;  // measured / predicted, 0 when measured is 0
  double ratio_gates = 0;
  double ratio_switch_units = 0;
  bool depth_ok = true;   // measured depth within the predicted bound
  bool mult_warn = false;  // some measured count exceeds 4x its prediction
};

// Per-counter measured/predicted ratios. Depth overruns are hard failures
// for the caller; count overruns past 4x only warn. Throws ScenarioMismatch
// when the keys differ.
ReconcileRow reconcile(const ScenarioPrediction& predicted,
                       const std::string& scenario, const CostLedger& measured);

// ---------------------------------------------------------------------------
// Method selection.

enum class OpMix { LinearOnly, NonlinearOnly, Mixed };

OpMix op_mix_from_name(const std::string& name);
const char* op_mix_name(OpMix mix);

struct AdvisorQuery {
  OpMix op_mix;
  bool simd_useful;
  bool exact_required;
};

struct Advice {
  std::string recommendation;
  std::string notes;
};

// Total decision table over the 12 query cells.
Advice advise(const AdvisorQuery& q);

}  // namespace fhegen

#endif  // FHEGEN_COSTMODEL_HPP
