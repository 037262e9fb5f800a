#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plaus/cli.hpp"
#include "testutil.hpp"

using namespace plaus;
namespace tu = plaus::testutil;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  RunResult result;
  result.exit_code = cli::run(std::move(args), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string corpus(const char* name) { return tu::repo_path(std::string("cases/") + name); }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

void check_schema(const std::string& dumped) {
  const json schema = json::parse(tu::read_file(tu::repo_path("schemas/report.schema.json")));
  const json value = json::parse(dumped);
  std::string error;
  const bool ok = tu::schema_check(value, schema, schema, error);
  CHECK_MESSAGE(ok, error);
}

}  // namespace

TEST_CASE("evaluate: conjunction meets preponderance claim by claim") {
  const RunResult result = run_cli({"evaluate", corpus("conjunction.case"), "--format", "json"});
  CHECK(result.exit_code == 0);
  CHECK(result.err.empty());
  check_schema(result.out);

  const json report = json::parse(result.out);
  CHECK(report["kind"] == "evaluation");
  CHECK(report["claims"].size() == 2);
  for (const auto& claim : report["claims"]) {
    CHECK(claim["finding"] == "met");
    CHECK(claim["posterior"]["odds"].get<double>() == doctest::Approx(7.0 / 3.0).epsilon(1e-9));
    CHECK(claim["posterior"]["probability"].get<double>() == doctest::Approx(0.7).epsilon(1e-9));
  }
  CHECK(report["combined"]["odds"].get<double>() == doctest::Approx(49.0 / 9.0).epsilon(1e-9));
  CHECK(report["naive_joint_probability"].get<double>() == doctest::Approx(0.49).epsilon(1e-9));
}

TEST_CASE("evaluate: text report and standard-not-met exit code") {
  const RunResult result = run_cli({"evaluate", corpus("colonel.case")});
  CHECK(result.exit_code == 1);  // odds 15 miss beyond_reasonable_doubt at 99
  CHECK(result.out.find("claim identity") != std::string::npos);
  CHECK(result.out.find("not_met") != std::string::npos);
  CHECK(result.out.find("occam factor") != std::string::npos);

  const RunResult relaxed =
      run_cli({"evaluate", corpus("colonel.case"), "--standard", "preponderance"});
  CHECK(relaxed.exit_code == 0);

  const RunResult threshold =
      run_cli({"evaluate", corpus("colonel.case"), "--threshold", "10"});
  CHECK(threshold.exit_code == 0);
}

TEST_CASE("evaluate: malformed input diagnoses to stderr with exit 2") {
  const std::string path = temp_file("plaus_malformed.case", "case \"broken\"\nclaim c1 {\n");
  const RunResult result = run_cli({"evaluate", path});
  CHECK(result.exit_code == 2);
  CHECK(result.out.empty());
  CHECK(result.err.find(path + ":") != std::string::npos);
  CHECK(result.err.find("error[") != std::string::npos);

  const RunResult missing = run_cli({"evaluate", "/nonexistent/never.case"});
  CHECK(missing.exit_code == 2);
}

TEST_CASE("usage errors exit 2 with help text") {
  const RunResult unknown = run_cli({"frobnicate"});
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);

  const RunResult bad_flag = run_cli({"evaluate", corpus("colonel.case"), "--wat"});
  CHECK(bad_flag.exit_code == 2);

  const RunResult nothing = run_cli({});
  CHECK(nothing.exit_code == 2);
}

TEST_CASE("check: corpus coherence and the witnesses world binding") {
  const RunResult colonel =
      run_cli({"check", corpus("colonel.case"), "--trials", "100", "--seed", "7"});
  CHECK(colonel.exit_code == 0);
  CHECK(colonel.out.find("all checks passed") != std::string::npos);

  const RunResult witnesses =
      run_cli({"check", corpus("witnesses.case"), "--world", corpus("witnesses.world"),
               "--bind", "g_testimony=W1,W2", "--format", "json"});
  CHECK(witnesses.exit_code == 0);
  check_schema(witnesses.out);
  const json report = json::parse(witnesses.out);
  CHECK(report["kind"] == "coherence");
  CHECK(report["all_passed"] == true);

  // a knowingly wrong binding must fail with exit 1
  const RunResult wrong =
      run_cli({"check", corpus("witnesses.case"), "--world", corpus("witnesses.world"),
               "--bind", "g_testimony=W1"});
  CHECK(wrong.exit_code == 1);
}

TEST_CASE("sweep: coverage rows and domain errors") {
  const RunResult result =
      run_cli({"sweep", corpus("missing-body.case"), "--target", "murder.g_guilt.coverage",
               "--values", "1,0.5", "--format", "json"});
  CHECK(result.exit_code == 0);
  check_schema(result.out);
  const json report = json::parse(result.out);
  CHECK(report["kind"] == "sweep");
  REQUIRE(report["rows"].size() == 2);
  CHECK(report["rows"][0]["claims"][0]["posterior"]["odds"].get<double>() ==
        doctest::Approx(9.0).epsilon(1e-9));
  CHECK(report["rows"][1]["claims"][0]["posterior"]["odds"].get<double>() ==
        doctest::Approx(3.0).epsilon(1e-9));

  const RunResult range = run_cli({"sweep", corpus("missing-body.case"), "--target",
                                   "murder.g_guilt.coverage", "--range", "0.1:1:10"});
  CHECK(range.exit_code == 0);

  const RunResult domain = run_cli({"sweep", corpus("missing-body.case"), "--target",
                                    "murder.g_guilt.coverage", "--values", "2"});
  CHECK(domain.exit_code == 2);
  CHECK(domain.err.find("DOMAIN") != std::string::npos);

  const RunResult unknown = run_cli({"sweep", corpus("missing-body.case"), "--target",
                                     "murder.nope.lr", "--values", "1"});
  CHECK(unknown.exit_code == 2);

  const RunResult both = run_cli({"sweep", corpus("missing-body.case"), "--target",
                                  "murder.g_guilt.coverage"});
  CHECK(both.exit_code == 2);
}

TEST_CASE("fmt: canonical form is a fixpoint") {
  const RunResult once = run_cli({"fmt", corpus("missing-body.case")});
  CHECK(once.exit_code == 0);
  const std::string path = temp_file("plaus_fmt_roundtrip.case", once.out);
  const RunResult twice = run_cli({"fmt", path});
  CHECK(twice.exit_code == 0);
  CHECK(twice.out == once.out);
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"evaluate", corpus("conjunction.case"), "--format", "json"},
        std::vector<std::string>{"evaluate", corpus("witnesses.case")},
        std::vector<std::string>{"check", corpus("colonel.case"), "--trials", "50", "--seed",
                                 "3", "--format", "json"},
        std::vector<std::string>{"sweep", corpus("missing-body.case"), "--target",
                                 "murder.g_guilt.coverage", "--range", "0.1:1:7"}}) {
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("every corpus case emits schema-conforming JSON") {
  for (const char* name :
       {"conjunction.case", "colonel.case", "missing-body.case", "witnesses.case"}) {
    const RunResult result = run_cli({"evaluate", corpus(name), "--format", "json"});
    CHECK_MESSAGE(result.exit_code != 2, name << ": " << result.err);
    check_schema(result.out);
  }
}

TEST_CASE("PLAUS_CONFIG overrides thresholds and the verbal scale") {
  const std::string config_path = temp_file(
      "plaus_test.conf", "threshold preponderance 20\nscale moderate_support 7\n");
  setenv("PLAUS_CONFIG", config_path.c_str(), 1);

  // conjunction's per-claim odds of 2.33 now miss the raised threshold
  const RunResult strict = run_cli({"evaluate", corpus("conjunction.case")});
  CHECK(strict.exit_code == 1);

  // a label resolves through the overridden scale
  const std::string labelled = temp_file("plaus_label.case",
                                         "case \"l\"\nclaim c1 {\n  for h1 \"a\"\n"
                                         "  against h2 \"b\"\n  group g1 {\n"
                                         "    evidence e1 \"x\"\n    lr label \"moderate_support\"\n"
                                         "  }\n}\n");
  const RunResult scaled = run_cli({"evaluate", labelled, "--format", "json"});
  const json report = json::parse(scaled.out);
  CHECK(report["claims"][0]["groups"][0]["lr"].get<double>() == 7.0);

  const std::string broken = temp_file("plaus_broken.conf", "threshold preponderance zero\n");
  setenv("PLAUS_CONFIG", broken.c_str(), 1);
  const RunResult bad = run_cli({"evaluate", corpus("conjunction.case")});
  CHECK(bad.exit_code == 2);

  unsetenv("PLAUS_CONFIG");
}
