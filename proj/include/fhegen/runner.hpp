// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_RUNNER_HPP
#define FHEGEN_RUNNER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fhegen/apps.hpp"
#include "fhegen/config.hpp"
#include "fhegen/report.hpp"
#include "fhegen/workloads.hpp"

namespace fhegen {

// Every runner executes the emulated computation AND its plaintext oracle;
// there is no unverified mode. Scenario failures (oracle mismatch, depth
// exhaustion) surface as oracle_pass = false on the row.

ReportRow run_bench_scenario(WorkloadKind kind, Method method, unsigned bits,
                             size_t slots, uint64_t seed,
                             const RunOptions& opts, const Config& cfg);

ReportRow run_floyd_scenario(Method method, unsigned bits, size_t nodes,
                             uint64_t seed, const RunOptions& opts,
                             const Config& cfg,
                             const Graph* fixed = nullptr);

ReportRow run_tree_scenario(Method method, unsigned bits, unsigned tree_depth,
                            size_t n_features, uint64_t seed,
                            const RunOptions& opts, const Config& cfg,
                            const DecisionTree* fixed = nullptr);

ReportRow run_sort_scenario(Method method, unsigned bits, size_t length,
                            uint64_t seed, const RunOptions& opts,
                            const Config& cfg, bool ascending = false,
                            const std::vector<uint64_t>* fixed = nullptr);

ReportRow run_db_scenario(Method method, unsigned bits, size_t rows,
                          uint64_t seed, const RunOptions& opts,
                          const Config& cfg, const Table* fixed = nullptr);

// Executes jobs across a small worker pool, preserving index order.
std::vector<ReportRow> run_scenarios(
    std::vector<std::function<ReportRow()>> jobs, unsigned njobs);

}  // namespace fhegen

#endif  // FHEGEN_RUNNER_HPP
