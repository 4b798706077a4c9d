// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_REPORT_HPP
#define FHEGEN_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fhegen/emulator.hpp"

namespace fhegen {

// One scenario outcome. Field order is the report schema; emitters must
// not reorder.
struct ReportRow {
  std::string scenario;
  std::string kind;    // bench | app
  std::string name;    // w1 | w2 | w3 | floyd | tree | sort | db
  std::string method;  // tfhe | scheme | encoding
  unsigned bits = 0;
  uint64_t slot_count = 0;
  uint64_t size = 0;  // lanes, nodes, tree depth, array length or row count
  uint64_t seed = 0;
  bool oracle_pass = false;
  CostLedger ledger;
  uint64_t pred_nonscalar_mults = 0;
  uint64_t pred_gate_bootstraps = 0;
  uint64_t pred_switch_units = 0;
  uint64_t pred_max_depth = 0;
  double ratio_nonscalar = 0;
  double ratio_gates = 0;
  double ratio_switches = 0;
  bool depth_ok = true;
  bool mult_warn = false;
  double estimated_ms = 0;   // model-estimated, from the calibration constants
  double amortized_ms = 0;   // per lane for SIMD methods, total otherwise
};

enum class ReportFormat { JsonLines, Csv, Markdown };

ReportFormat report_format_from_name(const std::string& name);

// Serializes rows in the fixed schema order. Numbers render without locale
// formatting; markdown groups rows into per-workload cost tables.
std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat fmt);

// Inverse of the json-lines emitter.
std::vector<ReportRow> parse_report(const std::string& json_lines);

}  // namespace fhegen

#endif  // FHEGEN_REPORT_HPP
