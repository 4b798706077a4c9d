// SPDX-License-Identifier: Apache-2.0
#include "fhegen/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

namespace fhegen {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ordered_json row_to_json(const ReportRow& r) {
  ordered_json j;
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["name"] = r.name;
  j["method"] = r.method;
  j["bits"] = r.bits;
  j["slots"] = r.slot_count;
  j["size"] = r.size;
  j["seed"] = r.seed;
  j["oracle_pass"] = r.oracle_pass;
  j["nonscalar_mults"] = r.ledger.nonscalar_mults;
  j["scalar_mults"] = r.ledger.scalar_mults;
  j["additions"] = r.ledger.additions;
  j["rotations"] = r.ledger.rotations;
  j["comparisons"] = r.ledger.comparisons;
  j["equalities"] = r.ledger.equalities;
  j["gate_bootstraps"] = r.ledger.gate_bootstraps;
  j["switches"] = r.ledger.switches;
  j["switch_cost_units"] = r.ledger.switch_cost_units;
  j["max_depth"] = r.ledger.max_depth;
  j["pred_nonscalar_mults"] = r.pred_nonscalar_mults;
  j["pred_gate_bootstraps"] = r.pred_gate_bootstraps;
  j["pred_switch_units"] = r.pred_switch_units;
  j["pred_max_depth"] = r.pred_max_depth;
  j["ratio_nonscalar"] = r.ratio_nonscalar;
  j["ratio_gates"] = r.ratio_gates;
  j["ratio_switches"] = r.ratio_switches;
  j["depth_ok"] = r.depth_ok;
  j["mult_warn"] = r.mult_warn;
  j["estimated_ms"] = r.estimated_ms;
  j["amortized_ms"] = r.amortized_ms;
  return j;
}

const char* const kCsvHeader =
    "scenario,kind,name,method,bits,slots,size,seed,oracle_pass,"
    "nonscalar_mults,scalar_mults,additions,rotations,comparisons,equalities,"
    "gate_bootstraps,switches,switch_cost_units,max_depth,"
    "pred_nonscalar_mults,pred_gate_bootstraps,pred_switch_units,"
    "pred_max_depth,ratio_nonscalar,ratio_gates,ratio_switches,depth_ok,"
    "mult_warn,estimated_ms,amortized_ms";

std::string row_to_csv(const ReportRow& r) {
  std::ostringstream os;
  os << r.scenario << ',' << r.kind << ',' << r.name << ',' << r.method << ','
     << r.bits << ',' << r.slot_count << ',' << r.size << ',' << r.seed << ','
     << (r.oracle_pass ? 1 : 0) << ',' << r.ledger.nonscalar_mults << ','
     << r.ledger.scalar_mults << ',' << r.ledger.additions << ','
     << r.ledger.rotations << ',' << r.ledger.comparisons << ','
     << r.ledger.equalities << ',' << r.ledger.gate_bootstraps << ','
     << r.ledger.switches << ',' << r.ledger.switch_cost_units << ','
     << r.ledger.max_depth << ',' << r.pred_nonscalar_mults << ','
     << r.pred_gate_bootstraps << ',' << r.pred_switch_units << ','
     << r.pred_max_depth << ',' << fmt_double(r.ratio_nonscalar) << ','
     << fmt_double(r.ratio_gates) << ',' << fmt_double(r.ratio_switches) << ','
     << (r.depth_ok ? 1 : 0) << ',' << (r.mult_warn ? 1 : 0) << ','
     << fmt_double(r.estimated_ms) << ',' << fmt_double(r.amortized_ms);
  return os.str();
}

std::string markdown_tables(const std::vector<ReportRow>& rows) {
  std::map<std::string, std::vector<const ReportRow*>> groups;
  for (const ReportRow& r : rows) groups[r.kind + ":" + r.name].push_back(&r);
  std::ostringstream os;
  for (auto& [key, group] : groups) {
    bool bits_vary = false, size_vary = false;
    for (const ReportRow* r : group) {
      if (r->bits != group.front()->bits) bits_vary = true;
      if (r->size != group.front()->size) size_vary = true;
    }
    const char* axis = size_vary && !bits_vary ? "cost vs size" : "cost vs bits";
    os << "### " << group.front()->name << " (" << group.front()->kind << ", "
       << axis << ")\n\n";
    os << "| method | bits | slots | size | comparisons | equalities | "
          "nonscalar_mults | gate_bootstraps | switches | max_depth | "
          "estimated_ms | amortized_ms | oracle |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    std::vector<const ReportRow*> ordered = group;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ReportRow* a, const ReportRow* b) {
                       if (a->method != b->method) return a->method < b->method;
                       if (a->bits != b->bits) return a->bits < b->bits;
                       if (a->size != b->size) return a->size < b->size;
                       return a->scenario < b->scenario;
                     });
    for (const ReportRow* r : ordered) {
      os << "| " << r->method << " | " << r->bits << " | " << r->slot_count
         << " | " << r->size << " | " << r->ledger.comparisons << " | "
         << r->ledger.equalities << " | " << r->ledger.nonscalar_mults << " | "
         << r->ledger.gate_bootstraps << " | " << r->ledger.switches << " | "
         << r->ledger.max_depth << " | " << fmt_double(r->estimated_ms)
         << " | " << fmt_double(r->amortized_ms) << " | "
         << (r->oracle_pass ? "pass" : "FAIL") << " |\n";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "json" || name == "json-lines" || name == "jsonl")
    return ReportFormat::JsonLines;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw UnknownFormat("unknown report format: " + name);
}

std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case ReportFormat::JsonLines:
      for (const ReportRow& r : rows) os << row_to_json(r).dump() << '\n';
      return os.str();
    case ReportFormat::Csv:
      os << kCsvHeader << '\n';
      for (const ReportRow& r : rows) os << row_to_csv(r) << '\n';
      return os.str();
    case ReportFormat::Markdown:
      return markdown_tables(rows);
  }
  throw UnknownFormat("emit_report: unknown format");
}

std::vector<ReportRow> parse_report(const std::string& json_lines) {
  std::vector<ReportRow> rows;
  std::istringstream is(json_lines);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("report line is not valid JSON: ") + e.what());
    }
    ReportRow r;
    r.scenario = j.at("scenario").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.bits = j.at("bits").get<unsigned>();
    r.slot_count = j.at("slots").get<uint64_t>();
    r.size = j.at("size").get<uint64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    r.oracle_pass = j.at("oracle_pass").get<bool>();
    r.ledger.nonscalar_mults = j.at("nonscalar_mults").get<uint64_t>();
    r.ledger.scalar_mults = j.at("scalar_mults").get<uint64_t>();
    r.ledger.additions = j.at("additions").get<uint64_t>();
    r.ledger.rotations = j.at("rotations").get<uint64_t>();
    r.ledger.comparisons = j.at("comparisons").get<uint64_t>();
    r.ledger.equalities = j.at("equalities").get<uint64_t>();
    r.ledger.gate_bootstraps = j.at("gate_bootstraps").get<uint64_t>();
    r.ledger.switches = j.at("switches").get<uint64_t>();
    r.ledger.switch_cost_units = j.at("switch_cost_units").get<uint64_t>();
    r.ledger.max_depth = j.at("max_depth").get<unsigned>();
    r.pred_nonscalar_mults = j.at("pred_nonscalar_mults").get<uint64_t>();
    r.pred_gate_bootstraps = j.at("pred_gate_bootstraps").get<uint64_t>();
    r.pred_switch_units = j.at("pred_switch_units").get<uint64_t>();
    r.pred_max_depth = j.at("pred_max_depth").get<uint64_t>();
    r.ratio_nonscalar = j.at("ratio_nonscalar").get<double>();
    r.ratio_gates = j.at("ratio_gates").get<double>();
    r.ratio_switches = j.at("ratio_switches").get<double>();
    r.depth_ok = j.at("depth_ok").get<bool>();
    r.mult_warn = j.at("mult_warn").get<bool>();
    r.estimated_ms = j.at("estimated_ms").get<double>();
    r.amortized_ms = j.at("amortized_ms").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace fhegen
