#include "monoball/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace monoball;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "monoball_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string data(const std::string& name) { return std::string(MONOBALL_DATA_DIR) + "/" + name; }

Run run(const std::string& args, const std::string& env = {}) {
  const auto err = scratch("stderr.txt");
  const std::string cmd = env + (env.empty() ? "" : " ") + MONOBALL_CLI + std::string(" ") + args + " 2>" + err.string();
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

Json report_of(const fs::path& p) { return Json::parse(slurp(p)); }

bool python_schema_available() {
  return std::system("python3 -c 'import jsonschema, referencing' >/dev/null 2>&1") == 0;
}

int validate(const std::string& schema, const fs::path& report) {
  const std::string cmd = std::string("python3 ") + MONOBALL_SOURCE_DIR + "/tests/validate_schema.py " + MONOBALL_SOURCE_DIR +
                          "/schemas " + schema + " " + report.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, MonomialQuaternion) {
  const auto out = scratch("q8.json");
  const auto r = run("monomial --group " + data("q8.json") + " --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("monomial: pass", 0), 0u) << r.out;
  const auto j = report_of(out);
  EXPECT_TRUE(j["report"]["monomial"].get<bool>());
  std::size_t two_dim = 0;
  for (const auto& c : j["report"]["certificates"])
    if (c["dim"] == 2) {
      ++two_dim;
      EXPECT_TRUE(c["found"].get<bool>());
      EXPECT_EQ(c["subgroup"]["order"], 4);
      EXPECT_LT(c["residual"].get<double>(), 1e-8);
    }
  EXPECT_EQ(two_dim, 1u);
}

TEST(Cli, FreimanHeisenberg) {
  const auto out = scratch("heis3.json");
  const auto r = run("freiman --group " + data("heis3.json") + " --set " + data("gen.json") + " --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = report_of(out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j["report"]["containment"]["diff_in_ball"].get<bool>());
  EXPECT_EQ(j["tool"], "monoball");
  EXPECT_EQ(j["seed"], 1);
  if (!python_schema_available()) GTEST_SKIP() << "python jsonschema not available";
  EXPECT_EQ(validate("pipeline.schema.json", out), 0);
}

TEST(Cli, GrowthMatchesIntervalSizes) {
  const auto out = scratch("growth.json");
  const auto r = run("growth --group " + data("c100.json") + " --set " + data("pm1.json") + " --nmax 60 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto sizes = report_of(out)["report"]["sizes"];
  ASSERT_EQ(sizes.size(), 60u);
  // {0,+-1}^n in Z/100 is the interval [-n, n]
  for (std::size_t n = 1; n <= 60; ++n) EXPECT_EQ(sizes[n - 1].get<std::size_t>(), std::min<std::size_t>(2 * n + 1, 100)) << n;
  if (!python_schema_available()) GTEST_SKIP() << "python jsonschema not available";
  EXPECT_EQ(validate("growth.schema.json", out), 0);
}

TEST(Cli, GrowthSingleRowCsv) {
  const auto r = run("growth --group " + data("c100.json") + " --set " + data("pm1.json") + " --nmax 1 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "n,size\n1,3\n");
}

TEST(Cli, InlineJsonArguments) {
  const auto r = run("growth --group '{\"type\":\"cyclic\",\"n\":7}' --set '[0,1,6]' --nmax 4 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "n,size\n1,3\n2,5\n3,7\n4,7\n");
}

TEST(Cli, Deterministic) {
  const auto a = scratch("det_a.json"), b = scratch("det_b.json"), c = scratch("det_c.json");
  const std::string args = "freiman --group " + data("c4xd8.json") + " --set " + data("gen.json") + " --out ";
  ASSERT_EQ(run(args + a.string()).code, 0);
  ASSERT_EQ(run(args + b.string()).code, 0);
  ASSERT_EQ(run(args + c.string(), "MONOBALL_THREADS=1").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
}

TEST(Cli, ChartableSchemaAndCsv) {
  const auto out = scratch("chartable.json");
  ASSERT_EQ(run("chartable --group " + data("s4.json") + " --out " + out.string()).code, 0);
  const auto j = report_of(out);
  EXPECT_EQ(j["report"]["class_count"], 5);
  const auto csv = run("chartable --group " + data("s4.json") + " --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("field,value\ntool,monoball\n", 0), 0u);
  if (!python_schema_available()) GTEST_SKIP() << "python jsonschema not available";
  EXPECT_EQ(validate("chartable.schema.json", out), 0);
}

TEST(Cli, EveryCommandEmitsEnvelope) {
  const std::vector<std::string> cmds = {
      "group-info --group " + data("d16.json") + " --set " + data("gen.json"),
      "lspec --group " + data("c128.json") + " --set " + data("c128_pm1.json") + " --eps 1/16",
      "metric-dim --group " + data("d16.json") + " --set " + data("gen.json") + " --delta 2 --d 3",
      "metric-dim --group " + data("c100.json") + " --gamma '[\"lin[0]\",\"lin[1]\",\"lin[99]\"]' --delta 1/4",
      "energy --group " + data("c100.json") + " --set " + data("pm1.json") + " --eps 1 --k 2",
      "cover --group " + data("c128.json") + " --set " + data("c128_pm1.json") + " --eps 1/20",
      "appendix --group " + data("heis3.json") + " --set " + data("gen.json") + " --nmax 6",
  };
  for (const auto& c : cmds) {
    const auto out = scratch("env.json");
    const auto r = run(c + " --out " + out.string());
    EXPECT_TRUE(r.code == 0 || r.code == 2) << c << "\n" << r.err;
    const auto j = report_of(out);
    EXPECT_EQ(j["tool"], "monoball");
    EXPECT_TRUE(j.contains("report"));
    if (python_schema_available()) EXPECT_EQ(validate("envelope.schema.json", out), 0) << c;
  }
}

TEST(Cli, ExitCodePass) {
  const auto r = run("bohr --group " + data("c100.json") + " --gamma '[\"lin[0]\",\"lin[1]\",\"lin[99]\"]' --xset '[\"lin[1]\"]' --delta 1/30");
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ExitCodeHypothesisFailed) {
  // S = A = {0, +-1} does not satisfy P(S.A) < sqrt2 P(A)
  const auto r = run("energy --group " + data("c100.json") + " --set " + data("pm1.json") + " --eps 1 --k 2");
  EXPECT_EQ(r.code, 2) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "hypothesis_failed");
  bool some_fail = false;
  for (const auto& h : j["report"]["hypotheses"]) some_fail = some_fail || h["status"] == "fails";
  EXPECT_TRUE(some_fail);
}

TEST(Cli, ExitCodeFalsified) {
  // delta = 1/16 is inside the stated range, but the contraction step of the
  // growth argument needs 8 delta < 1/3 and fails here.
  const auto r = run("bohr --group " + data("c100.json") + " --gamma '[\"lin[0]\",\"lin[1]\",\"lin[99]\"]' --xset '[\"lin[1]\"]' --delta 1/16");
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_FALSE(j["report"]["growth"]["contraction_ok"].get<bool>());
  EXPECT_TRUE(j["report"]["growth"]["ratio_within_bound"].get<bool>());
}

TEST(Cli, MalformedJsonReportsPosition) {
  const auto r = run("group-info --group '{\"type\": \"cyclic\", \"n\": }'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("malformed JSON at byte"), std::string::npos) << r.err;
}

TEST(Cli, CapExceededGivesAdvice) {
  const auto r = run("monomial --group '{\"type\":\"cyclic\",\"n\":60}' --cap 32");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--cap"), std::string::npos) << r.err;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("growth --group " + data("c100.json") + " --set '[0,100]'").code, 1);
  EXPECT_EQ(run("growth --group " + data("c100.json")).code, 1);
  EXPECT_EQ(run("growth --group '{\"type\":\"klein\"}' --set '[0]'").code, 1);
  EXPECT_EQ(run("growth --group /nonexistent.json --set '[0]'").code, 1);
  EXPECT_EQ(run("lspec --group " + data("c100.json") + " --set " + data("pm1.json") + " --eps 1/0").code, 1);
  EXPECT_EQ(run("bohr --group " + data("c100.json") + " --gamma '[\"lin[100]\"]' --delta 1/4").code, 1);
  EXPECT_EQ(run("growth --group '{\"type\":\"table\",\"mul\":[[0,1],[0,1]]}' --set '[0]'").code, 1);
  EXPECT_EQ(run("nosuchcommand --group x").code, 1);
  EXPECT_EQ(run("growth --group " + data("c100.json") + " --set " + data("pm1.json") + " --format xml").code, 1);
}
