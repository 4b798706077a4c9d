// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_WORKLOADS_HPP
#define FHEGEN_WORKLOADS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fhegen/costmodel.hpp"
#include "fhegen/emulator.hpp"

namespace fhegen {

// The three mixed-operation units:
//   W1  Compare(A*B, C)        non-linear after linear
//   W2  Compare(A, B) * C      linear after non-linear
//   W3  Compare(A*B, C) * D    linear, non-linear, linear
enum class WorkloadKind { W1, W2, W3 };

const char* workload_name(WorkloadKind k);
WorkloadKind workload_from_name(const std::string& name);

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::W1;
  Method method = Method::EncodingSwitching;
  unsigned bits = 8;
  size_t slot_count = 1;  // lanes; the bit-wise method always runs one
  uint64_t seed = 0;
  unsigned depth_budget = 0;  // 0 selects the published table default
  uint64_t p_override = 0;    // word-wise plaintext base, 0 = schedule
  uint64_t r_override = 0;
  Calibration cal;
};

struct WorkloadResult {
  WorkloadSpec spec;
  size_t lanes = 0;
  std::vector<uint64_t> outputs;
  std::vector<uint64_t> expected;
  bool oracle_ok = false;
  bool range_clean = false;  // no range-meter diagnostics fired
  CostLedger ledger;
  ScenarioPrediction predicted;  // scenario field left empty for the runner
};

// Draws wrap-free inputs from the seed, evaluates the workload on emulated
// ciphertexts, and checks every lane against the integer oracle.
WorkloadResult run_workload(const WorkloadSpec& spec);

// Per-lane view of a ledger: every counter and the modeled time divided by
// the slot count for the SIMD-capable methods, untouched for the bit-wise
// method (it processed exactly one lane per ciphertext anyway).
struct AmortizedCost {
  double nonscalar_mults = 0;
  double scalar_mults = 0;
  double additions = 0;
  double rotations = 0;
  double comparisons = 0;
  double equalities = 0;
  double gate_bootstraps = 0;
  double switches = 0;
  double switch_cost_units = 0;
  double estimated_ms = 0;
};

AmortizedCost amortize(const WorkloadResult& result, size_t slot_count);

}  // namespace fhegen

#endif  // FHEGEN_WORKLOADS_HPP
