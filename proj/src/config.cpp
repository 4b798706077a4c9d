// SPDX-License-Identifier: Apache-2.0
#include "fhegen/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fhegen/rng.hpp"

namespace fhegen {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config line " + std::to_string(lineno) +
                         ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return from_string(os.str());
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  uint64_t out = 0;
  auto res = std::from_chars(v->data(), v->data() + v->size(), out);
  if (res.ec != std::errc() || res.ptr != v->data() + v->size())
    throw ParseError("config key '" + key + "' is not an integer: " + *v);
  return out;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  double out = 0;
  auto res = std::from_chars(v->data(), v->data() + v->size(), out);
  if (res.ec != std::errc() || res.ptr != v->data() + v->size())
    throw ParseError("config key '" + key + "' is not a number: " + *v);
  return out;
}

std::string Config::get_string(const std::string& key,
                               std::string fallback) const {
  auto v = get(key);
  return v ? *v : std::move(fallback);
}

RunOptions options_from_config(const Config& cfg) {
  RunOptions opts;
  const std::string rng_algo =
      cfg.get_string("rng.algorithm", Rng::kAlgorithm);
  if (rng_algo != Rng::kAlgorithm)
    throw ParseError("config names an unsupported generator: " + rng_algo +
                     " (only " + std::string(Rng::kAlgorithm) + " is pinned)");
  opts.cal.gate_bootstrap_ms =
      cfg.get_double("calibration.gate_bootstrap_ms", 15.0);
  opts.cal.switch_unit_seconds =
      cfg.get_double("calibration.switch_unit_seconds", 0.66);
  opts.bits_per_level =
      static_cast<unsigned>(cfg.get_u64("calibration.bits_per_level", 30));
  const std::pair<Method, const char*> sections[] = {
      {Method::BitwiseTfhe, "profile.tfhe.depth_budget"},
      {Method::SchemeSwitching, "profile.scheme.depth_budget"},
      {Method::EncodingSwitching, "profile.encoding.depth_budget"},
  };
  for (auto [method, key] : sections) {
    const uint64_t v = cfg.get_u64(key, 0);
    if (v) opts.depth_budget_override[method] = static_cast<unsigned>(v);
  }
  return opts;
}

EvalContext context_from_options(const RunOptions& opts, const Config& cfg,
                                 Method method, unsigned bits,
                                 size_t slot_count, unsigned depth_budget) {
  const uint64_t p = cfg.get_u64("context.p", 0);
  const uint64_t r = cfg.get_u64("context.r", 0);
  unsigned budget = depth_budget;
  if (!budget)
    budget = opts.budget_for(
        method, static_cast<unsigned>(cfg.get_u64(
                    "context.depth_budget",
                    default_depth_budget(bits, opts.bits_per_level))));
  return make_context(method, bits, slot_count, budget, opts.cal, p, r);
}

}  // namespace fhegen
