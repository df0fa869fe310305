#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("fracstab_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string("\"") + FRACSTAB_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  fs::remove(out);
  return r;
}

std::string problem(const std::string& name) { return std::string("\"") + FRACSTAB_PROBLEMS + "/" + name + "\""; }

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("fracstab_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

TEST(Cli, CheckStableExample) {
  const CliResult r = run("check " + problem("example1a.json"));
  EXPECT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["orders"]["sigma"], 15);
  EXPECT_EQ(j["orders"]["N"], 78);
  EXPECT_EQ(j["classification"]["counts"]["cat3"], 74);
  EXPECT_EQ(j["classification"]["stable_side"], 4);
  EXPECT_EQ(j["classification"]["unstable_side"], 0);
  EXPECT_EQ(j["zeros"].size(), 4u);
  EXPECT_EQ(j["stable"], true);
}

TEST(Cli, FractionFormMatchesDecimalForm) {
  const CliResult a = run("check " + problem("example1a.json"));
  const CliResult b = run("check " + problem("example1a_fractions.json"));
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CheckUnstableExample) {
  const CliResult r = run("check " + problem("example1d.json"));
  EXPECT_EQ(r.code, 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["orders"]["sigma"], 16);
  EXPECT_EQ(j["orders"]["N"], 83);
  EXPECT_EQ(j["stable"], false);
}

TEST(Cli, EpsilonFlagChangesVerdict) {
  EXPECT_EQ(run("check " + problem("example1a.json") + " --epsilon 0.6").code, 0);
  EXPECT_EQ(run("check " + problem("example1a.json") + " --epsilon 0.7").code, 1);
}

TEST(Cli, KrylovBackend) {
  const CliResult r = run("check " + problem("example1b.json") + " --backend krylov --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("46"), std::string::npos);
}

TEST(Cli, ReportIsByteIdentical) {
  EXPECT_EQ(run("check " + problem("example1c.json")).out, run("check " + problem("example1c.json")).out);
}

TEST(Cli, Zeros) {
  const CliResult r = run("zeros " + problem("example1a.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-0.4364 +0.5828i\n-0.4364 -0.5828i\n-3.0819 +3.7337i\n-3.0819 -3.7337i\n");
}

TEST(Cli, ZerosOfDiagonalSystem) {
  const CliResult r = run("zeros " + problem("diagonal.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-1.0000"), std::string::npos);
  EXPECT_EQ(r.out.find("-2.0000"), std::string::npos);
}

TEST(Cli, Oracle) {
  const CliResult cubic = run("oracle " + problem("cubic.json") + " --oracle-tol 1e-8");
  EXPECT_EQ(cubic.code, 0);
  const CliResult ex = run("oracle " + problem("example1a.json") + " --format json");
  EXPECT_EQ(ex.code, 0);
  const nlohmann::json j = nlohmann::json::parse(ex.out);
  EXPECT_LT(j["matched_distance"].get<double>(), 1e-6);
}

TEST(Cli, OracleBadRadius) {
  EXPECT_EQ(run("oracle " + problem("example1a.json") + " --radius 0.001").code, 2);
}

TEST(Cli, Simulate) {
  const CliResult r = run("simulate " + problem("example1a.json") + " --T 1");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2,x3,x4,x5,x6,x7,x8");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 11);
}

TEST(Cli, SimulateZeroInitialState) {
  const CliResult r = run("simulate " + problem("diagonal.json") + " --x0 0,0 --T 1 --h 0.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "t,x1,x2\n0,0,0\n0.5,0,0\n1,0,0\n");
}

TEST(Cli, SimulateStepLargerThanHorizon) {
  EXPECT_EQ(run("simulate " + problem("example1a.json") + " --T 1 --h 2").code, 2);
}

TEST(Cli, SingularMatrix) {
  const CliResult r = run("check " + problem("singular.json"));
  EXPECT_EQ(r.code, 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["a_singular"], true);
}

TEST(Cli, NonSquareMatrix) {
  const fs::path p = write_temp("nonsquare.json", R"({"alpha": ["1", "0.5"], "A": [[1, 0, 0], [0, 1, 0]]})");
  EXPECT_EQ(run("check \"" + p.string() + "\"").code, 2);
  fs::remove(p);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("check /nonexistent.json").code, 2);
  EXPECT_EQ(run("check " + problem("cubic.json") + " --backend lapack").code, 2);
  EXPECT_EQ(run("check " + problem("cubic.json") + " --epsilon -1").code, 2);
}

TEST(Cli, OutFlag) {
  const fs::path out = fs::temp_directory_path() / ("fracstab_cli_" + std::to_string(::getpid()) + "_report.json");
  EXPECT_EQ(run("check " + problem("cubic.json") + " --out \"" + out.string() + "\"").code, 0);
  std::ifstream in(out);
  const nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["orders"]["N"], 3);
  fs::remove(out);
}

}  // namespace
