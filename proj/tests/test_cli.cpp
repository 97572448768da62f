#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dforge/fixtures/stethoscope.hpp"
#include "dforge/io/json.hpp"

using namespace dforge;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::filesystem::path tmp() {
  auto dir = std::filesystem::path(DFORGE_TEST_TMP) / "cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path fixture_file() {
  static const auto path = [] {
    auto p = tmp() / "stethoscope.json";
    io::save_project_file(fixtures::stethoscope_project(), p);
    return p;
  }();
  return path;
}

Run run_cli(const std::string& args, const std::filesystem::path& project = fixture_file()) {
  const std::string cmd = std::string(DFORGE_CLI_PATH) + " --project '" + project.string() + "' " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ValidateOk) {
  const auto r = run_cli("validate");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok\n");
}

TEST(Cli, ValidateErrorsExitOne) {
  auto p = fixtures::stethoscope_project();
  p.scoring_matrices[0].criteria[0].weight = Rational::parse("0.2");
  const auto path = tmp() / "bad-weights.json";
  io::save_project_file(p, path);
  const auto r = run_cli("validate", path);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "criterion weights sum ≠ 1"));
  EXPECT_EQ(run_cli("score --matrix scoring", path).code, 1);
}

TEST(Cli, MissingProjectFile) {
  EXPECT_EQ(run_cli("validate", tmp() / "absent.json").code, 1);
}

TEST(Cli, Funnel) {
  const auto r = run_cli("funnel");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "declared 10 survivors, computed 12"));
  EXPECT_TRUE(has(r.out, "Advanced digital stethoscope"));
}

TEST(Cli, Morph) {
  EXPECT_EQ(run_cli("morph count --chart stethoscope").out, "1152\n");
  const auto r = run_cli("morph enum --chart stethoscope --limit 10 -f csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
  const auto ex = run_cli("morph enum --chart stethoscope --exclude None");
  EXPECT_EQ(std::count(ex.out.begin(), ex.out.end(), '\n'), 433);
}

TEST(Cli, ScreenAndScore) {
  const auto screen = run_cli("screen --matrix screening");
  EXPECT_EQ(screen.code, 0);
  EXPECT_TRUE(has(screen.out, "A        1  3  4  -3   6     no"));
  const auto score = run_cli("score --matrix scoring -f json");
  EXPECT_EQ(score.code, 0);
  EXPECT_TRUE(has(score.out, "\"4.35\""));
}

TEST(Cli, AuditExitCodes) {
  const auto plain = run_cli("audit --matrix scoring");
  EXPECT_EQ(plain.code, 0);
  EXPECT_TRUE(has(plain.out, "total E: declared 3.45, computed 3.75"));
  EXPECT_EQ(run_cli("--strict-audit audit --matrix scoring").code, 3);
  EXPECT_EQ(run_cli("--strict-audit audit --matrix screening").code, 0);
  EXPECT_EQ(run_cli("--strict-audit audit --matrix funnel").code, 3);
}

TEST(Cli, DerivePugh) {
  const auto r = run_cli("derive-pugh --matrix scoring --reference D");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "criterion,D*,E,F,DF\n"));
  EXPECT_TRUE(has(r.out, "signal-quality,0,0,+,+\n"));
}

TEST(Cli, Sensitivity) {
  const auto cross = run_cli("sensitivity cross --matrix scoring --criterion signal-quality");
  EXPECT_TRUE(has(cross.out, "0.030303030"));
  const auto out = tmp() / "traj.csv";
  const auto sweep = run_cli("sensitivity sweep --matrix scoring --criterion low-cost --samples 100 --threads 4 --output '" +
                            out.string() + "'");
  EXPECT_EQ(sweep.code, 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto csv = ss.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  EXPECT_EQ(run_cli("sensitivity sweep --matrix scoring --criterion nope").code, 1);
}

TEST(Cli, ReportIsDeterministic) {
  const auto a = run_cli("report -f markdown");
  const auto b = run_cli("report -f markdown");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has(a.out, "| Net score | -3 | 0 | -1 | 2 | 1 | 2 |"));
  const auto dir = tmp() / "bundle";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run_cli("report -f csv-bundle --output '" + dir.string() + "'").code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "audit.csv"));
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run_cli("derive-pugh --matrix scoring").code, 0);
  EXPECT_NE(run_cli("frobnicate").code, 0);
  EXPECT_NE(run_cli("score --matrix nope").code, 0);
}
