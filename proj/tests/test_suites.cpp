#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sbt/suites.hpp"

using namespace sbt;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SBT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sbt_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Suites, DeterministicAndSorted) {
  RunConfig cfg;
  cfg.seed = 3;
  cfg.count = 4;
  const auto a = to_json(run_suite("plancherel", cfg)).dump();
  const auto b = to_json(run_suite("plancherel", cfg)).dump();
  EXPECT_EQ(a, b);
  const auto reports = run_suite("eq32", cfg);
  for (std::size_t i = 1; i < reports.size(); ++i) EXPECT_LT(reports[i - 1].id, reports[i].id);
  for (const auto& r : reports) EXPECT_EQ(r.params.at("seed"), 3.0);
}

TEST(Suites, SeedChangesRandomFunctions) {
  RunConfig a, b;
  a.count = b.count = 2;
  b.seed = 99;
  EXPECT_NE(run_suite("plancherel", a)[0].lhs, run_suite("plancherel", b)[0].lhs);
}

TEST(Suites, TaskErrorsBecomeFailures) {
  std::vector<SuiteTask> tasks{{"boom", []() -> std::vector<VerificationReport> { throw std::runtime_error("x"); }}};
  const auto r = run_tasks(tasks);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass);
  EXPECT_EQ(r[0].id, "boom/error");
}

TEST(Suites, UnknownSuite) { EXPECT_THROW(suite_tasks("nope", RunConfig{}), ConfigError); }

TEST(Suites, ToleranceOverrideCanFail) {
  RunConfig cfg;
  cfg.tol = 1e-30;
  EXPECT_FALSE(all_pass(run_suite("eq32", cfg)));
}

TEST(Cli, VerifyWritesReports) {
  const fs::path out = scratch("verify");
  EXPECT_EQ(run_cli("verify --suite plancherel --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out / "report_plancherel.json"));
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  for (const char* key : {"id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "meta"})
    EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_TRUE(fs::exists(out / "report_plancherel.txt"));
}

TEST(Cli, IsometryReport) {
  const fs::path out = scratch("iso");
  EXPECT_EQ(run_cli("verify --suite isometry --t 0.5 --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out / "report_isometry.json"));
  bool seen = false;
  for (const auto& r : j)
    if (r["id"].get<std::string>().rfind("isometry/", 0) == 0) {
      seen = true;
      EXPECT_LT(r["rel_err"].get<double>(), 1e-6);
    }
  EXPECT_TRUE(seen);
}

TEST(Cli, ExitCodes) {
  const fs::path out = scratch("codes");
  EXPECT_EQ(run_cli("verify --suite eq32 --tol 1e-30 --out " + out.string()), 1);
  EXPECT_EQ(run_cli("verify --suite bogus --out " + out.string()), 2);
  EXPECT_EQ(run_cli("verify --suite eq32 --config /nonexistent.cfg --out " + out.string()), 2);
  EXPECT_EQ(run_cli("verify --suite eq32 --t -1 --out " + out.string()), 2);
  EXPECT_EQ(run_cli("verify --bad-flag"), 2);
  fs::create_directories(out);
  std::ofstream(out / "bad.cfg") << "[run]\ncutoff\n";
  EXPECT_EQ(run_cli("verify --suite eq32 --config " + (out / "bad.cfg").string() + " --out " + out.string()), 2);
}

TEST(Cli, ConfigFileIsApplied) {
  const fs::path out = scratch("cfg");
  fs::create_directories(out);
  std::ofstream(out / "run.cfg") << "[run]\nseed = 11\nt = 0.25\n";
  EXPECT_EQ(run_cli("verify --suite eq32 --config " + (out / "run.cfg").string() + " --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out / "report_eq32.json"));
  for (const auto& r : j) {
    EXPECT_EQ(r["params"]["seed"].get<double>(), 11.0);
    EXPECT_EQ(r["params"]["t"].get<double>(), 0.25);
  }
}

TEST(Cli, TransformCtOfCosine) {
  const fs::path out = scratch("ct");
  fs::create_directories(out);
  std::ofstream(out / "cos.csv") << "label,re,im\n\"-1\",0.5,0\n\"1\",0.5,0\n";
  EXPECT_EQ(run_cli("transform --kind ct --t 1 --in " + (out / "cos.csv").string() + " --ny 3 --y-max 0.5 --out " +
                    out.string()),
            0);
  std::ifstream in(out / "transform_ct.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("x,y,re,im", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    double x, y, re, im;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &y, &re, &im), 4);
    const cplx expect = std::exp(-0.5) * std::cos(cplx(x, y));
    EXPECT_NEAR(re, expect.real(), 1e-14);
    EXPECT_NEAR(im, expect.imag(), 1e-14);
    ++rows;
  }
  EXPECT_EQ(rows, 3 * 64);
}

TEST(Cli, TransformTtOfGroundState) {
  const fs::path out = scratch("tt");
  fs::create_directories(out);
  std::ofstream(out / "phi0.csv") << "alpha,re,im\n\"0\",1,0\n";
  EXPECT_EQ(run_cli("transform --kind tt --t 0.25 --in " + (out / "phi0.csv").string() + " --ny 1 --y-max 0 --out " +
                    out.string()),
            0);
  std::ifstream in(out / "transform_tt.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "xi,v,re,im");
  while (std::getline(in, line)) {
    double xi, v, re, im;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &xi, &v, &re, &im), 4);
    EXPECT_NEAR(re, std::exp(-0.25) * hermite_fn(0, xi).real(), 1e-15);
  }
  EXPECT_EQ(run_cli("transform --kind tts --t 0.25 --out " + out.string()), 2);
  EXPECT_EQ(run_cli("transform --kind cts --s 1 --t 0.5 --out " + out.string()), 0);
}

TEST(Cli, WeightsTables) {
  const fs::path out = scratch("weights");
  EXPECT_EQ(run_cli("weights --which nu --t 1 --from -3 --to 3 --points 7 --svg --out " + out.string()), 0);
  std::ifstream in(out / "weights_nu.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "y,value");
  bool origin = false;
  while (std::getline(in, line)) {
    double y, v;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf", &y, &v), 2);
    if (y == 0.0) {
      origin = true;
      EXPECT_NEAR(v, 1.0 / std::sqrt(std::numbers::pi), 1e-15);
    }
  }
  EXPECT_TRUE(origin);
  EXPECT_TRUE(fs::exists(out / "weights_nu.svg"));
  EXPECT_EQ(run_cli("weights --which w --t 1 --out " + out.string()), 2);
  EXPECT_EQ(run_cli("weights --which w --t 1 --gamma 0.01 --overlay --out " + out.string()), 0);
  EXPECT_EQ(run_cli("weights --which U --t 0.25 --xi 0 --out " + out.string()), 0);
  EXPECT_EQ(run_cli("weights --which Ugamma --t 0.25 --gamma 0.4 --points 5 --out " + out.string()), 0);
}
