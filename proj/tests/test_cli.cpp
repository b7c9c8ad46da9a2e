// Exit codes and output of the command-line tool.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(WMSTATE_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, StateCoherent) {
  const Result r = run("state coherent --set beta=1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["amplitudes"][0][0].get<double>(), 0.606531, 1e-6);
  EXPECT_NEAR(j["g2"].get<double>(), 1.0, 1e-10);
}

TEST(Cli, ProtocolRunPrintsJson) {
  const Result r = run("protocol run --set pointer=vacuum");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["p_zeroth"].get<double>(), 1e-6, 1e-18);
}

TEST(Cli, BadArgumentsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("figure fig99").code, 2);
  EXPECT_EQ(run("protocol run --set nosuchkey=1").code, 2);
  EXPECT_EQ(run("sweep --var beta --range 1:0:5 --metric F1").code, 2);
  EXPECT_EQ(run("metrics nosuchmetric").code, 2);
  EXPECT_EQ(run("state --bogus").code, 2);
}

TEST(Cli, NumericGuardExitsThree) {
  EXPECT_EQ(run("protocol run --set beta=2 --set signal_cutoff=10").code, 3);
  EXPECT_EQ(run("metrics chi --set g=0").code, 3);
}

TEST(Cli, MissingConfigFileIsAnIoError) {
  EXPECT_EQ(run("protocol run --config /nonexistent/run.cfg").code, 1);
}

TEST(Cli, ConfigThenSetOverrides) {
  const fs::path cfg = fs::temp_directory_path() / "wmstate_cli_test.cfg";
  {
    std::ofstream f(cfg);
    f << "pointer = vacuum\nalpha = 0.02\n";
  }
  const Result a = run("protocol run --config " + cfg.string());
  const Result b = run("protocol run --config " + cfg.string() + " --set alpha=0.01");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(a.out)["p_zeroth"].get<double>(), 4e-6, 1e-18);
  EXPECT_NEAR(nlohmann::json::parse(b.out)["p_zeroth"].get<double>(), 1e-6, 1e-18);
}

TEST(Cli, FigureFilesAreDeterministic) {
  const fs::path a = fs::temp_directory_path() / "wmstate_cli_fig_a";
  const fs::path b = fs::temp_directory_path() / "wmstate_cli_fig_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string opts = " --set beta_points=5";
  ASSERT_EQ(run("figure fig3b --out " + a.string() + opts).code, 0);
  ASSERT_EQ(run("figure fig3b --out " + b.string() + opts).code, 0);
  EXPECT_EQ(slurp(a / "fig3b.csv"), slurp(b / "fig3b.csv"));
  EXPECT_EQ(slurp(a / "fig3b.json"), slurp(b / "fig3b.json"));
  EXPECT_FALSE(slurp(a / "fig3b.csv").empty());
}

TEST(Cli, SweepToStdout) {
  const Result r = run("sweep --var beta --range 0:1:3 --metric F2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("beta,F2,p_zeroth,p_model\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\n0.00000000e+00,"), std::string::npos);
}

TEST(Cli, FigureList) {
  const Result r = run("figure list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fig9-eta1-omega"), std::string::npos);
}
