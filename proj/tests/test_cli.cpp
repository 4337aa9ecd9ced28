#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "keypoly/cli.hpp"

namespace {

const std::string kDir = KEYPOLY_SCENARIO_DIR;
const std::string kAs2 = kDir + "/as2.scn";
const std::string kAs3 = kDir + "/as3.scn";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = keypoly::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_scenario(const std::string& edit_key, const std::string& edit_value) {
  std::ifstream in(kAs2);
  std::stringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(edit_key + ":", 0) == 0) line = edit_key + ": " + edit_value;
    out << line << "\n";
  }
  auto path = std::filesystem::temp_directory_path() / ("keypoly_" + edit_key + ".scn");
  std::ofstream(path) << out.str();
  return path.string();
}

}  // namespace

TEST(Cli, TruncateLine) {
  auto r = run({"truncate", "--scenario", kAs2, "--poly", "x^2+x+t^-1", "--q-index", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "nu_Q = -1/16; S_Q = {0,2}; delta_Q = 2\n");
}

TEST(Cli, ExpandWithoutScenario) {
  auto r = run({"expand", "--poly", "x^2+2x+4", "--q", "x-1", "--field", "Q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a = [7, 4, 1]\n");
  auto p = run({"expand", "--poly", "x^2+2x+4", "--q", "x-1", "--field", "Q", "--mode", "pretty"});
  EXPECT_EQ(p.out, "a : [7, 4, 1]\n");
}

TEST(Cli, SmallCommands) {
  EXPECT_EQ(run({"eval", "--scenario", kAs2, "--poly", "x+t"}).out, "nu = -1/2\n");
  EXPECT_EQ(run({"eval", "--field", "Q:2", "--mu", "1/2", "--poly", "4x^3+2x+3"}).out, "nu = 0\n");
  EXPECT_EQ(run({"epsilon", "--scenario", kAs2, "--poly", "x+t"}).out, "epsilon = -1/2; I = {1}; nu = -1/2\n");
  EXPECT_EQ(run({"stable", "--scenario", kAs2, "--poly", "x+t"}).out, "stable = yes; k = 1; nu = -1/2; S_Q = {0}\n");
  EXPECT_EQ(run({"validate", "--scenario", kAs2}).out, "valid = yes; name = as2; horizon = 8\n");
  EXPECT_EQ(run({"choose-q", "--scenario", kAs2}).out, "q_index = 3; eps_Q0 = -1/4\n");
}

TEST(Cli, Goldens) {
  EXPECT_EQ(run({"verify", "all", "--scenario", kAs2}).out, golden("verify_all_as2.txt"));
  EXPECT_EQ(run({"verify", "all", "--scenario", kAs3}).out, golden("verify_all_as3.txt"));
  EXPECT_EQ(run({"construct-fp", "--scenario", kAs2, "--theta", "5", "--detail"}).out, golden("construct_fp_as2.txt"));
  EXPECT_EQ(run({"construct-fp-bar", "--scenario", kAs2, "--theta", "5", "--detail"}).out,
            golden("construct_fp_bar_as2.txt"));
  EXPECT_EQ(run({"fixed", "--scenario", kAs3, "--poly", "x^3+2*x+2*t^-1", "--detail"}).out, golden("fixed_F_as3.txt"));
  EXPECT_EQ(run({"choose-q", "--scenario", kAs2, "--detail"}).out, golden("choose_q_as2.txt"));
  EXPECT_EQ(run({"truncate", "--scenario", kAs2, "--poly", "x^2+x+t^-1", "--q-index", "4", "--detail"}).out,
            golden("truncate_F_q4_as2.txt"));
}

TEST(Cli, VerifyIsByteIdenticalAcrossRuns) {
  auto a = run({"verify", "all", "--scenario", kAs2});
  auto b = run({"verify", "all", "--scenario", kAs2});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto c = run({"verify", "L22", "--scenario", kAs2, "--detail"});
  auto d = run({"verify", "L22", "--scenario", kAs2, "--detail"});
  EXPECT_EQ(c.out, d.out);
  EXPECT_NE(c.out.find("L22 Q1Q2:f0 0 0 pass\n"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"truncate", "--scenario", kAs2, "--poly", "x", "--q-index", "4", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  auto parse = run({"eval", "--scenario", kAs2, "--poly", "x^^2"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(parse.err.rfind("keypoly: error: Parse:", 0), 0u) << parse.err;
  EXPECT_EQ(run({"eval", "--scenario", kDir + "/missing.scn", "--poly", "x"}).code, 2);
  EXPECT_EQ(run({"verify", "X99", "--scenario", kAs2}).code, 2);
  auto pre = run({"construct-fp", "--scenario", kAs2, "--theta", "4"});
  EXPECT_EQ(pre.code, 2);
  EXPECT_NE(pre.err.find("Precondition"), std::string::npos);
  EXPECT_EQ(run({"eval", "--poly", "x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InvalidScenario) {
  std::string bad = temp_scenario("declared_B", "-1/4");
  auto v = run({"validate", "--scenario", bad});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("valid = no; index = 4; reason = gamma_4 = -1/32 >= B = -1/4\n"), std::string::npos) << v.out;
  auto r = run({"verify", "all", "--scenario", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("InvalidScenario"), std::string::npos) << r.err;
  std::filesystem::remove(bad);
}

TEST(Cli, ExhaustedHorizonIsReported) {
  std::string s = temp_scenario("q0_index", "7");
  auto r = run({"choose-q", "--scenario", s});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("HorizonExhausted"), std::string::npos) << r.err;
  std::filesystem::remove(s);
}
