#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hschur/error.hpp"
#include "hschur/suite.hpp"

using namespace hschur;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = HSCHUR_SOURCE_DIR;
const fs::path kConfigs = kSource / "configs";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("hschur_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(HSCHUR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string cli_output(const std::string& args) {
  const std::string cmd = std::string(HSCHUR_CLI_PATH) + " " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[512];
  while (pipe && fgets(buf, sizeof buf, pipe)) out += buf;
  if (pipe) pclose(pipe);
  return out;
}

json minimal(const std::string& kind) {
  json one = json::parse(slurp(kConfigs / "functions/one_z2.json"));
  return {{"field", {{"kind", "padic"}, {"p", 2}}},
          {"schedule", {1, 2}},
          {"experiments", {{{"kind", kind}, {"t", 1}, {"t2", 3}, {"functions", {one, one, one, one}}}}}};
}

fs::path write_config(const fs::path& dir, const json& j) {
  const auto p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

}  // namespace

TEST(Suite, BundledConfigsMatchSchema) {
  for (const char* name : {"padic_smoke.json", "real_smoke.json", "real_ctemp.json"}) {
    const json doc = json::parse(slurp(kConfigs / name));
    EXPECT_TRUE(schema_errors(doc, suite_schema()).empty()) << name;
    EXPECT_NO_THROW(load_suite(kConfigs / name)) << name;
  }
}

TEST(Suite, SchemaViolations) {
  json j = minimal("schur_cross_tt");
  j["bogus"] = 1;
  EXPECT_FALSE(schema_errors(j, suite_schema()).empty());
  json k = minimal("schur_cross_tt");
  k["experiments"] = json::array();
  EXPECT_FALSE(schema_errors(k, suite_schema()).empty());
  json m = minimal("schur_cross_tt");
  m["experiments"][0]["kind"] = "schur_bogus";
  EXPECT_FALSE(schema_errors(m, suite_schema()).empty());
  json f = minimal("schur_cross_tt");
  f.erase("field");
  EXPECT_FALSE(schema_errors(f, suite_schema()).empty());
  EXPECT_TRUE(schema_errors(minimal("schur_cross_tt"), suite_schema()).empty());
}

TEST(Suite, SemanticChecks) {
  auto expect_invalid = [](const json& j) {
    try {
      parse_suite(j, kConfigs);
      ADD_FAILURE() << j.dump();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigInvalid) << e.what();
    }
  };
  json same = minimal("schur_cross_tt");
  same["experiments"][0]["t2"] = 1;
  expect_invalid(same);
  json radii = minimal("schur_diag");
  radii["schedule"] = {1, 3};
  expect_invalid(radii);
  json count = minimal("schur_cross_pi_rho");
  expect_invalid(count);
  json real = {{"field", {{"kind", "real"}}},
               {"schedule", {4, 40}},
               {"experiments",
                {{{"kind", "schur_diag"}, {"t", 1}, {"functions", json::array({
                     json::parse(slurp(kConfigs / "functions/box01_h16.json")),
                     json::parse(slurp(kConfigs / "functions/box01_h16.json")),
                     json::parse(slurp(kConfigs / "functions/box01_h16.json")),
                     json::parse(slurp(kConfigs / "functions/box01_h16.json"))})}}}}};
  expect_invalid(real);  // 40 is beyond the grid's alias-free radius
}

TEST(Suite, RandomFunctionsFollowSeed) {
  const auto a = load_suite(kConfigs / "padic_smoke.json");
  const auto b = load_suite(kConfigs / "padic_smoke.json");
  const auto c = load_suite(kConfigs / "padic_smoke.json", 99);
  auto find = [](const SuiteConfig& s) {
    for (const auto& e : s.experiments) {
      if (e.id == "diag_random") return e.functions[0].padic();
    }
    throw std::runtime_error("missing");
  };
  EXPECT_TRUE(find(a) == find(b));
  EXPECT_FALSE(find(a) == find(c));
}

TEST(Suite, WriteAtomicReplaces) {
  const auto d = scratch("atomic");
  write_atomic(d / "x.txt", "one");
  write_atomic(d / "x.txt", "two");
  EXPECT_EQ(slurp(d / "x.txt"), "two");
  EXPECT_FALSE(fs::exists(d / "x.txt.tmp"));
}

TEST(Cli, PadicSmokeRunPassesExactly) {
  const auto d = scratch("padic_run");
  ASSERT_EQ(cli("run " + (kConfigs / "padic_smoke.json").string() + " --out " + d.string()), 0);
  const std::string csv = slurp(d / "report.csv");
  EXPECT_EQ(csv.rfind("experiment_id,r,value_re,value_im,target_re,target_im,abs_error,normalizer,exact_flag\n", 0), 0u);
  const json rep = json::parse(slurp(d / "report.json"));
  EXPECT_TRUE(rep["pass"]);
  EXPECT_TRUE(fs::exists(d / "diag_t1.svg"));
  // every record at or beyond its threshold is exact; smoke radii start below some thresholds
  for (const auto& e : rep["experiments"]) EXPECT_TRUE(e["pass"]) << e["experiment_id"];
  for (const auto& e : rep["experiments"]) {
    EXPECT_TRUE(e["records"].back()["exact_flag"]) << e["experiment_id"];
  }
}

TEST(Cli, DeterministicCsv) {
  const auto d1 = scratch("det1"), d2 = scratch("det2"), d3 = scratch("det3");
  const auto cfg = (kConfigs / "padic_smoke.json").string();
  ASSERT_EQ(cli("run " + cfg + " --seed 5 --out " + d1.string()), 0);
  ASSERT_EQ(cli("run " + cfg + " --seed 5 --out " + d2.string()), 0);
  ASSERT_EQ(cli("run " + cfg + " --seed 5 --jobs 3 --out " + d3.string()), 0);
  EXPECT_EQ(slurp(d1 / "report.csv"), slurp(d2 / "report.csv"));
  EXPECT_EQ(slurp(d1 / "report.csv"), slurp(d3 / "report.csv"));
}

TEST(Cli, ExitCodes) {
  const auto d = scratch("codes");
  json same = minimal("schur_cross_tt");
  same["experiments"][0]["t2"] = 1;
  EXPECT_EQ(cli("run " + write_config(d, same).string() + " --out " + d.string()), 2);
  json empty = minimal("schur_cross_tt");
  empty["experiments"] = json::array();
  EXPECT_EQ(cli("run " + write_config(d, empty).string() + " --out " + d.string()), 2);
  EXPECT_EQ(cli("run " + (d / "missing.json").string()), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("oracle " + (kConfigs / "padic_smoke.json").string() + " --out " + d.string()), 0);
  json big = minimal("schur_diag");
  big["schedule"] = {1, 1024};
  EXPECT_EQ(cli("oracle " + write_config(d, big).string() + " --out " + d.string(), "HSCHUR_CAP_MB=1"), 3);
  EXPECT_EQ(cli("run " + write_config(d, big).string() + " --out " + d.string()), 0);
}

TEST(Cli, FailingVerdictExitsOne) {
  const auto d = scratch("fail");
  json j = minimal("schur_diag");
  j["schedule"] = {"1/8", "1/4"};  // below the exactness threshold only
  EXPECT_EQ(cli("run " + write_config(d, j).string() + " --out " + d.string()), 1);
}

TEST(Cli, ListExperiments) {
  const std::string a = cli_output("list-experiments");
  const std::string b = cli_output("list-experiments");
  EXPECT_EQ(a, b);
  for (auto k : all_experiment_kinds()) EXPECT_NE(a.find(to_string(k)), std::string::npos);
  std::size_t tags = 0;
  for (std::size_t pos = a.find("reference: ["); pos != std::string::npos; pos = a.find("reference: [", pos + 1)) ++tags;
  EXPECT_EQ(tags, all_experiment_kinds().size());
  EXPECT_LT(a.find("schur_diag"), a.find("braiding_pairing"));
}
