// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fhegen/config.hpp"
#include "fhegen/report.hpp"

using namespace fhegen;

namespace {

ReportRow sample_row() {
  ReportRow r;
  r.scenario = "bench-w1-encoding-b8-s4-seed1";
  r.kind = "bench";
  r.name = "w1";
  r.method = "encoding";
  r.bits = 8;
  r.slot_count = 4;
  r.size = 4;
  r.seed = 1;
  r.oracle_pass = true;
  r.ledger.nonscalar_mults = 133;
  r.ledger.scalar_mults = 43;
  r.ledger.additions = 57;
  r.ledger.comparisons = 1;
  r.ledger.max_depth = 7;
  r.pred_nonscalar_mults = 218;
  r.pred_max_depth = 9;
  r.ratio_nonscalar = 133.0 / 218.0;
  r.estimated_ms = 0.0;
  r.amortized_ms = 0.125;
  return r;
}

}  // namespace

TEST_CASE("empty csv reports carry only the header") {
  const std::string body = emit_report({}, ReportFormat::Csv);
  CHECK(body.find("scenario,kind,name,method,bits") == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 1);
}

TEST_CASE("a single row serializes every ledger field") {
  const std::string csv = emit_report({sample_row()}, ReportFormat::Csv);
  CHECK(csv.find("bench-w1-encoding-b8-s4-seed1,bench,w1,encoding,8,4,4,1,1,"
                 "133,43,57,0,1,0,0,0,0,7,218,0,0,9,") != std::string::npos);
}

TEST_CASE("json lines round-trip to the same rows") {
  std::vector<ReportRow> rows = {sample_row(), sample_row()};
  rows[1].scenario = "bench-w1-encoding-b8-s4-seed2";
  rows[1].seed = 2;
  rows[1].amortized_ms = 0.333333333333;
  const std::string body = emit_report(rows, ReportFormat::JsonLines);
  const std::vector<ReportRow> parsed = parse_report(body);
  REQUIRE(parsed.size() == 2);
  CHECK(emit_report(parsed, ReportFormat::JsonLines) == body);
  CHECK(parsed[0].ledger.nonscalar_mults == 133);
  CHECK(parsed[1].seed == 2);
  CHECK(parsed[1].amortized_ms == doctest::Approx(0.333333333333));
}

TEST_CASE("markdown groups rows into cost tables") {
  std::vector<ReportRow> rows = {sample_row(), sample_row()};
  rows[1].bits = 16;
  rows[1].scenario = "bench-w1-encoding-b16-s4-seed1";
  const std::string md = emit_report(rows, ReportFormat::Markdown);
  CHECK(md.find("### w1 (bench, cost vs bits)") != std::string::npos);
  CHECK(md.find("| encoding | 8 |") != std::string::npos);
  CHECK(md.find("| encoding | 16 |") != std::string::npos);
}

TEST_CASE("unknown formats are rejected") {
  CHECK_THROWS_AS(report_format_from_name("yaml"), UnknownFormat);
}

TEST_CASE("malformed report lines are rejected") {
  CHECK_THROWS_AS(parse_report("not json\n"), ParseError);
}

TEST_CASE("config parses sections, comments and typed values") {
  const Config cfg = Config::from_string(
      "# comment\n"
      "[calibration]\n"
      "gate_bootstrap_ms = 12.5\n"
      "switch_unit_seconds = 0.7\n"
      "\n"
      "[profile.encoding]\n"
      "depth_budget = 14\n"
      "[rng]\n"
      "algorithm = xoshiro256starstar\n");
  CHECK(cfg.get_double("calibration.gate_bootstrap_ms", 0) ==
        doctest::Approx(12.5));
  CHECK(cfg.get_u64("profile.encoding.depth_budget", 0) == 14);
  CHECK(!cfg.get("profile.tfhe.depth_budget"));
  const RunOptions opts = options_from_config(cfg);
  CHECK(opts.cal.gate_bootstrap_ms == doctest::Approx(12.5));
  CHECK(opts.budget_for(Method::EncodingSwitching, 10) == 14);
  CHECK(opts.budget_for(Method::BitwiseTfhe, 10) == 10);
}

TEST_CASE("config rejects malformed lines and foreign generators") {
  CHECK_THROWS_AS(Config::from_string("[oops\n"), ParseError);
  CHECK_THROWS_AS(Config::from_string("novalue\n"), ParseError);
  CHECK_THROWS_AS(Config::from_string("[calibration]\ngate_bootstrap_ms = abc\n")
                      .get_double("calibration.gate_bootstrap_ms", 0),
                  ParseError);
  const Config bad = Config::from_string("[rng]\nalgorithm = mt19937\n");
  CHECK_THROWS_AS(options_from_config(bad), ParseError);
}
