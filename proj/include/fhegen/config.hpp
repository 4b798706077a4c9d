// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_CONFIG_HPP
#define FHEGEN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fhegen/emulator.hpp"

namespace fhegen {

// Sectioned key-value configuration:
//
//   [calibration]
//   gate_bootstrap_ms = 15.0
//   switch_unit_seconds = 0.66
//
//   [profile.encoding]
//   depth_budget = 12
//
// Lookup keys are "section.key". The FHEGEN_CONFIG environment variable
// names a default file; an explicit --config flag wins over it.
class Config {
 public:
  static Config from_string(const std::string& text);
  static Config from_file(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::string get_string(const std::string& key, std::string fallback) const;

  bool empty() const { return values_.empty(); }

 private:
  std::map<std::string, std::string> values_;
};

// Run-wide knobs resolved from a config.
struct RunOptions {
  Calibration cal;
  unsigned bits_per_level = 30;
  std::map<Method, unsigned> depth_budget_override;  // per method, 0 = none

  unsigned budget_for(Method m, unsigned fallback) const {
    auto it = depth_budget_override.find(m);
    return it != depth_budget_override.end() ? it->second : fallback;
  }
};

// Validates the generator identity and plucks the recognized keys.
RunOptions options_from_config(const Config& cfg);

// Context construction honoring config overrides (p, r, slot_count and
// depth budget from the [context] section when present).
EvalContext context_from_options(const RunOptions& opts, const Config& cfg,
                                 Method method, unsigned bits,
                                 size_t slot_count, unsigned depth_budget);

}  // namespace fhegen

#endif  // FHEGEN_CONFIG_HPP
