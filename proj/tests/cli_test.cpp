#include "floq/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace floq {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

TEST(Cli, VerifySucceeds) {
  RunResult r = run_cli({"verify", "--m", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("equal: true"), std::string::npos);
  EXPECT_NE(r.out.find("P_v = "), std::string::npos);
}

TEST(Cli, VerifyJson) {
  RunResult r = run_cli({"verify", "--m", "3", "--json"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["m"], 3);
  EXPECT_TRUE(j["equal"].get<bool>());
  EXPECT_EQ(j["P_v"], j["P_0"]);
}

TEST(Cli, VerifyMTooSmallIsUsageError) {
  RunResult r = run_cli({"verify", "--m", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("m >= 2"), std::string::npos);
}

TEST(Cli, ByteIdenticalReruns) {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"verify", "--m", "3"},
        std::vector<std::string>{"covers", "--jacobi", "3"},
        std::vector<std::string>{"s-table", "--max-m", "8", "--max-p", "4", "--json"},
        std::vector<std::string>{"export-m2", "--period", "4"}}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SeedAcceptedWithoutChangingOutput) {
  RunResult a = run_cli({"verify", "--m", "2", "--seed", "7"});
  RunResult b = run_cli({"verify", "--m", "2", "--seed", "7"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 0);
}

TEST(Cli, CharpolyExact) {
  RunResult r = run_cli({"charpoly", "--zero", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("P = (1+0i)*l^4 + (-4+0i)*l^2"), std::string::npos);
}

TEST(Cli, CharpolyNumericMode) {
  RunResult r = run_cli({"charpoly", "--zero", "4", "--k", "0.5", "--json"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["mode"], "numeric");
  EXPECT_EQ(j["coeffs"].size(), 5u);
}

TEST(Cli, CharpolyNeedsExactlyOneSource) {
  EXPECT_EQ(run_cli({"charpoly"}).code, 2);
  EXPECT_EQ(run_cli({"charpoly", "--m", "2", "--zero", "4"}).code, 2);
}

TEST(Cli, CoversJacobiStableText) {
  RunResult r = run_cli({"covers", "--jacobi", "2"});
  EXPECT_EQ(r.code, 0);
  const std::string expected =
      "covers jacobi m=2\n"
      "(1)(2) sign=+1 weight=(1+0i)*v1*v2\n"
      "(1 2) sign=-1 weight=(1+0i)\n"
      "count = 2\n";
  EXPECT_EQ(r.out, expected);
}

TEST(Cli, CoversRefinedFloquet) {
  RunResult plain = run_cli({"covers", "--floquet", "4", "--json"});
  RunResult refined = run_cli({"covers", "--floquet", "4", "--refined", "--json"});
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(refined.code, 0);
  Json jp = Json::parse(plain.out), jr = Json::parse(refined.out);
  EXPECT_EQ(jp["count"], 9);  // brute-force permutation count
  EXPECT_GT(jr["count"].get<int>(), jp["count"].get<int>());
}

TEST(Cli, CoversWithTwoCycleFilter) {
  RunResult r = run_cli({"covers", "--jacobi", "4", "--exact-2cycles", "1", "--json"});
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["count"], 3);  // S(4,1)
}

TEST(Cli, STable) {
  RunResult r = run_cli({"s-table", "--max-m", "14", "--max-p", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok: enumeration matches closed form"), std::string::npos);
}

TEST(Cli, IdentityAllEll) {
  RunResult r = run_cli({"identity", "--m", "12", "--all-ell"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, IdentityNeedsEllChoice) {
  EXPECT_EQ(run_cli({"identity", "--m", "5"}).code, 2);
  EXPECT_EQ(run_cli({"identity", "--m", "5", "--ell", "2", "--all-ell"}).code, 2);
}

TEST(Cli, FCheck) {
  RunResult r = run_cli({"f-check", "--m", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k=2 (even): ok"), std::string::npos);
  EXPECT_NE(r.out.find("k=5 (odd): ok"), std::string::npos);
}

TEST(Cli, FCheckRejectsUnvalidatedK) {
  RunResult r = run_cli({"f-check", "--m", "3", "--k", "6"});
  EXPECT_EQ(r.code, 2);  // k = 2m is outside the validated closed-form range
}

TEST(Cli, ExportM2MatchesGolden) {
  RunResult r = run_cli({"export-m2", "--period", "4"});
  EXPECT_EQ(r.code, 0);
  std::ifstream golden(std::string(FLOQ_GOLDEN_DIR) + "/system_q4.m2", std::ios::binary);
  std::ostringstream want;
  want << golden.rdbuf();
  EXPECT_EQ(r.out, want.str());
}

TEST(Cli, ExportM2ToFile) {
  auto path = std::filesystem::temp_directory_path() / "floq_cli_q4.m2";
  std::filesystem::remove(path);
  RunResult r = run_cli({"export-m2", "--period", "4", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST(Cli, ScanFindsPaperSolution) {
  RunResult r = run_cli({"scan", "--period", "4", "--slots", "1,2,3,4", "--palette",
                         "0,1+i,1-i,-1+i,-1-i", "--threads", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solution: ((1+1i), (1-1i), (-1+1i), (-1-1i))"), std::string::npos);
}

TEST(Cli, IsospectralPaperVsZero) {
  auto pot = write_temp("floq_pot_m2.json",
                        R"({"axes":[{"period":4,"values":[[1,1],[1,-1],[-1,1],[-1,-1]]}]})");
  RunResult r = run_cli({"isospectral", "--potential", pot.string(), "--vs-zero", "--grid", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("isospectral at every sampled k"), std::string::npos);
  std::filesystem::remove(pot);
}

TEST(Cli, IsospectralNegativeControlExitsOne) {
  auto pot = write_temp("floq_pot_spike.json",
                        R"({"axes":[{"period":4,"values":[[1,0],[0,0],[0,0],[0,0]]}]})");
  RunResult r = run_cli({"isospectral", "--potential", pot.string(), "--vs-zero", "--k", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NOT isospectral"), std::string::npos);
  std::filesystem::remove(pot);
}

TEST(Cli, IsospectralTwoAxes) {
  auto pot = write_temp(
      "floq_pot_2d.json",
      R"({"axes":[{"period":4,"values":[[1,1],[1,-1],[-1,1],[-1,-1]]},{"period":3,"values":[[0,0],[0,0],[0,0]]}]})");
  RunResult r = run_cli({"isospectral", "--potential", pot.string(), "--grid", "3", "--json"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["Q"], 12);
  EXPECT_EQ(j["points"].size(), 9u);
  EXPECT_TRUE(j["isospectral"].get<bool>());
  std::filesystem::remove(pot);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"verify"}).code, 2);              // missing --m
  EXPECT_EQ(run_cli({"verify", "--m", "abc"}).code, 2);
  RunResult r = run_cli({"scan", "--period", "4", "--palette", "zz"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) {
  RunResult r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, PotentialRoundTripThroughJson) {
  SeparablePotential v{{paper_potential(3), Potential1D::zero(3)}};
  Json j = potential_to_json(v);
  SeparablePotential w = potential_from_json(j);
  ASSERT_EQ(w.dim(), 2);
  EXPECT_TRUE(w.axes[0].is_exact());
  EXPECT_EQ(w.axes[0].exact_values(), v.axes[0].exact_values());
  EXPECT_EQ(w.axes[1].period(), 3);
}

}  // namespace
}  // namespace floq
