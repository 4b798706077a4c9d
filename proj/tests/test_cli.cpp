// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "fhegen/cli.hpp"
#include "fhegen/report.hpp"

using namespace fhegen;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("fhegen");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bench emits one verified row per scenario") {
  CliRun run = cli({"bench", "--workload", "w1", "--method", "encoding",
                    "--bits", "8", "--slots", "100"});
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
  CHECK(rows[0].slot_count == 100);
  CHECK(rows[0].ledger.comparisons == 1);
}

TEST_CASE("zero repeats produce an empty report and a clean exit") {
  CliRun run = cli({"bench", "--workload", "w1", "--method", "encoding",
                    "--bits", "8", "--repeat", "0"});
  CHECK(run.code == 0);
  CHECK(run.out.empty());
}

TEST_CASE("identical seeds reproduce byte-identical reports") {
  const std::vector<std::string> args = {
      "bench", "--workload", "all", "--method", "all",
      "--bits", "6,8",      "--slots", "16",    "--seed", "7",
      "--repeat", "2"};
  CliRun first = cli(args);
  CliRun second = cli(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  // Thread fan-out must not change the bytes either.
  std::vector<std::string> serial = args;
  serial.push_back("--jobs");
  serial.push_back("1");
  CliRun third = cli(serial);
  CHECK(first.out == third.out);
}

TEST_CASE("the bit-wise relaxation sweep still counts n^2 comparisons") {
  CliRun run = cli({"app", "floyd", "--nodes", "16", "--method", "tfhe",
                    "--bits", "8"});
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
  CHECK(rows[0].ledger.comparisons == 256);
}

TEST_CASE("singleton sorts pass trivially") {
  CliRun run = cli({"app", "sort", "--len", "1", "--method", "encoding"});
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
}

TEST_CASE("database scenario verifies end to end") {
  CliRun run = cli({"app", "db", "--rows", "64", "--method", "encoding",
                    "--bits", "16"});
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
}

TEST_CASE("advisor answers match the decision table") {
  CliRun linear = cli({"advise", "--ops", "linear", "--simd", "no", "--exact",
                       "yes", "--format", "markdown"});
  CHECK(linear.code == 0);
  CHECK(linear.out.find("word-wise BGV/BFV/CKKS") != std::string::npos);

  CliRun mixed = cli({"advise", "--ops", "mixed", "--simd", "yes", "--exact",
                      "yes"});
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find("encoding switching or scheme switching") !=
        std::string::npos);

  CliRun sorting = cli({"advise", "--ops", "mixed", "--simd", "no", "--exact",
                        "yes", "--format", "markdown"});
  CHECK(sorting.out.find("bit-wise TFHE") != std::string::npos);
}

TEST_CASE("report subcommand re-renders json lines") {
  CliRun bench = cli({"bench", "--workload", "w2", "--method", "tfhe",
                      "--bits", "8", "--out", "/tmp/fhegen_cli_test.jsonl"});
  CHECK(bench.code == 0);
  CliRun conv = cli({"report", "--in", "/tmp/fhegen_cli_test.jsonl",
                     "--format", "csv"});
  CHECK(conv.code == 0);
  CHECK(conv.out.find("scenario,kind,name") == 0);
  CHECK(conv.out.find("bench-w2-tfhe-b8-s1-seed42") != std::string::npos);
}

TEST_CASE("usage errors exit with code two") {
  CHECK(cli({"bench", "--method", "quantum"}).code == 2);
  CHECK(cli({"bench", "--method", "encoding", "--bits", "24"}).code == 2);
  CHECK(cli({"bench", "--method", "tfhe", "--bits", "7"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"advise", "--ops", "mixed", "--simd", "maybe", "--exact",
             "yes"}).code == 2);
  CHECK(cli({"report", "--in", "/nonexistent/path.jsonl"}).code == 2);
  CHECK(cli({"bench", "--config", "/nonexistent/fhegen.conf"}).code == 2);
}

TEST_CASE("instance files feed the application runners") {
  {
    std::ofstream f("/tmp/fhegen_graph.txt");
    f << "0 1 4\n1 2 1\n0 2 10\n";
  }
  CliRun floyd = cli({"app", "floyd", "--input", "/tmp/fhegen_graph.txt",
                      "--method", "encoding", "--bits", "8"});
  CHECK(floyd.code == 0);
  auto rows = parse_report(floyd.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
  CHECK(rows[0].size == 3);

  {
    std::ofstream f("/tmp/fhegen_tree.txt");
    f << "depth 2\nfeatures 1\n5\n3 7\n0\n0 0\n10 20 30 40\n";
  }
  CliRun tree = cli({"app", "tree", "--input", "/tmp/fhegen_tree.txt",
                     "--method", "encoding", "--bits", "16", "--features",
                     "1"});
  CHECK(tree.code == 0);
  rows = parse_report(tree.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);

  {
    std::ofstream f("/tmp/fhegen_sort.txt");
    f << "5\n3\n9\n3\n";
  }
  CliRun sorted = cli({"app", "sort", "--input", "/tmp/fhegen_sort.txt",
                       "--method", "encoding"});
  CHECK(sorted.code == 0);
  rows = parse_report(sorted.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
  CHECK(rows[0].size == 4);

  {
    std::ofstream f("/tmp/fhegen_table.csv");
    f << "id,salary,work_hours,bonus\n7,50,60,700\n8,55,100,695\n"
         "9,90,62,800\n10,100,100,650\n";
  }
  CliRun db = cli({"app", "db", "--input", "/tmp/fhegen_table.csv",
                   "--method", "encoding", "--bits", "16"});
  CHECK(db.code == 0);
  rows = parse_report(db.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_pass);
  CHECK(rows[0].size == 4);
}

TEST_CASE("malformed instance files exit with a usage error") {
  {
    std::ofstream f("/tmp/fhegen_bad_graph.txt");
    f << "0 x 4\n";
  }
  CHECK(cli({"app", "floyd", "--input", "/tmp/fhegen_bad_graph.txt"}).code == 2);
}

TEST_CASE("the config environment variable names a default file") {
  const char* path = "/tmp/fhegen_env.conf";
  {
    std::ofstream f(path);
    f << "[context]\nmethod = tfhe\nb = 6\n";
  }
  setenv("FHEGEN_CONFIG", path, 1);
  CliRun run = cli({"bench", "--workload", "w2"});
  unsetenv("FHEGEN_CONFIG");
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].method == "tfhe");
  CHECK(rows[0].bits == 6);
}

TEST_CASE("config calibration flows into the modeled times") {
  const char* path = "/tmp/fhegen_cli_test.conf";
  {
    std::ofstream f(path);
    f << "[calibration]\ngate_bootstrap_ms = 10.0\n";
  }
  CliRun run = cli({"bench", "--workload", "w2", "--method", "tfhe", "--bits",
                    "8", "--config", path});
  CHECK(run.code == 0);
  const auto rows = parse_report(run.out);
  REQUIRE(rows.size() == 1);
  // w2 bit-wise: comparator plus mask fan-out gates, at 10 ms each
  CHECK(rows[0].estimated_ms ==
        doctest::Approx(10.0 * double(rows[0].ledger.gate_bootstraps)));
}
