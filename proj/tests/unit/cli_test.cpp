// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{

struct Result
{
  int code = -1;
  std::string output;
};

Result run(const std::string &args)
{
  const fs::path log = fs::temp_directory_path() / "kreiss_cli_test.log";
  const std::string cmd = std::string(KREISS_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  r.output = s.str();
  return r;
}

std::string fixture(const std::string &name)
{
  return std::string(KREISS_FIXTURES) + "/" + name;
}

fs::path fresh_dir(const std::string &name)
{
  const fs::path d = fs::temp_directory_path() / ("kreiss_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, DiagonalZeroPasses)
{
  const auto out = fresh_dir("diag0");
  const auto r = run("run " + fixture("exit0_diagonal_zero.json") + " --out " + out.string());
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(Cli, NegativeAlphaIsConfigError)
{
  const auto out = fresh_dir("alpha");
  const auto r = run("run " + fixture("exit2_negative_alpha.json") + " --out " + out.string());
  EXPECT_EQ(r.code, 2) << r.output;
  EXPECT_FALSE(fs::exists(out / "report.json"));
}

TEST(Cli, MissingOperatorNamesField)
{
  const auto r = run("describe " + fixture("exit2_missing_operator.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("'operator'"), std::string::npos) << r.output;
}

TEST(Cli, KreissClaimFails)
{
  const auto out = fresh_dir("claim");
  const auto r = run("run " + fixture("exit1_jordan_kreiss_claim.json") + " --out " + out.string());
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "resolvent.csv"));
}

TEST(Cli, SingularContourIsNumericalFailure)
{
  const auto out = fresh_dir("singular");
  const auto r = run("run " + fixture("exit3_singular_contour.json") + " --out " + out.string());
  EXPECT_EQ(r.code, 3) << r.output;
}

TEST(Cli, OutputDirFromEnvironment)
{
  const auto out = fresh_dir("env");
  const std::string cmd = "KREISS_OUTPUT_DIR=" + out.string() + " " + std::string(KREISS_CLI) +
                          " run " + fixture("exit0_diagonal_zero.json") + " > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(Cli, DescribeReportsDimension)
{
  const auto wave = run("describe " + fixture("wave8.json"));
  EXPECT_EQ(wave.code, 0);
  EXPECT_NE(wave.output.find("dimension: 578"), std::string::npos) << wave.output;
  EXPECT_NE(wave.output.find("blocks: 33"), std::string::npos);
  const auto scalar = run("describe " + fixture("scalar.json"));
  EXPECT_NE(scalar.output.find("dimension: 1\n"), std::string::npos) << scalar.output;
}

TEST(Cli, Deterministic)
{
  const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
  ASSERT_EQ(run("run " + fixture("jordan2.json") + " --out " + a.string()).code, 0);
  ASSERT_EQ(run("run " + fixture("jordan2.json") + " --out " + b.string()).code, 0);
  for (const auto &entry : fs::directory_iterator(a))
  {
    std::ifstream x(entry.path(), std::ios::binary), y(b / entry.path().filename(), std::ios::binary);
    std::ostringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    EXPECT_EQ(sx.str(), sy.str()) << entry.path().filename();
  }
}
