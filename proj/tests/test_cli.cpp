#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(WORDLAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int rc = ::pclose(pipe);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("wordlab_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, SingleWordSearch) {
  const auto r = run("search --objective tglp --n 1");
  ASSERT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["results"][0]["sequence"][0], "saree");
}

TEST(Cli, BadArgumentsFail) {
  EXPECT_NE(run("train --episodes 0").status, 0);
  EXPECT_NE(run("train --epsilon 2").status, 0);
  EXPECT_NE(run("search --n 9").status, 0);
  EXPECT_NE(run("search --objective nope").status, 0);
  EXPECT_NE(run("stats --words /nonexistent/words.txt").status, 0);
  EXPECT_NE(run("frobnicate").status, 0);
}

TEST(Cli, ConfigFileRejectsUnknownKeys) {
  const auto dir = scratch("config");
  std::ofstream(dir / "ok.toml") << "[search]\nobjective = \"ll\"\nn = 1\n";
  const auto ok = run("--config " + (dir / "ok.toml").string() + " search");
  ASSERT_EQ(ok.status, 0);
  EXPECT_EQ(json::parse(ok.out)["results"][0]["sequence"][0], "sooey");
  std::ofstream(dir / "bad.toml") << "[search]\nobjectiv = \"ll\"\n";
  EXPECT_NE(run("--config " + (dir / "bad.toml").string() + " search").status, 0);
}

TEST(Cli, TrainPolicyEvaluatePipeline) {
  const auto dir = scratch("pipeline");
  const std::string out = "--out " + dir.string();
  ASSERT_EQ(run("train --episodes 300 --epsilon 0.3 --seed 1 --seed 2 " + out).status, 0);
  for (const char* f : {"qtable_last_seed1.json", "report_last_seed1.json", "rewards_last_seed2.csv",
                        "lengths_last_seed2.csv", "rolling_last_seed1.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto first = slurp(dir / "qtable_last_seed1.json");

  const auto pol = run("policy --runs " + (dir / "qtable_last_seed1.json").string() + " --runs " +
                       (dir / "qtable_last_seed2.json").string() + " " + out);
  ASSERT_EQ(pol.status, 0);
  const auto pj = json::parse(slurp(dir / "policy.json"));
  ASSERT_EQ(pj["states"].size(), 21u);
  for (const auto& [state, row] : pj["states"].items()) ASSERT_EQ(row.size(), 5u) << state;

  // hand check of one row: mean of the two runs, then min-max
  const auto q1 = json::parse(first)["states"]["0,0"];
  const auto q2 = json::parse(slurp(dir / "qtable_last_seed2.json"))["states"]["0,0"];
  std::map<std::string, double> mean;
  double lo = 1e300, hi = -1e300;
  for (const auto& [a, v] : q1.items()) {
    mean[a] = (v.get<double>() + q2[a].get<double>()) / 2;
    lo = std::min(lo, mean[a]);
    hi = std::max(hi, mean[a]);
  }
  for (const auto& [a, m] : mean) {
    EXPECT_NEAR(pj["states"]["0,0"][a].get<double>(), hi > lo ? (m - lo) / (hi - lo) : 0.0, 1e-12) << a;
  }
  EXPECT_TRUE(fs::exists(dir / "policy_heatmap.csv"));

  const auto ev = run("evaluate --episodes 200 --seed 3 --policy " + (dir / "policy.json").string() + " " + out);
  ASSERT_EQ(ev.status, 0);
  EXPECT_EQ(json::parse(ev.out)["config"]["episodes"], 200);

  // same seed, same bytes
  const auto dir2 = scratch("pipeline_again");
  ASSERT_EQ(run("train --episodes 300 --epsilon 0.3 --seed 1 --out " + dir2.string()).status, 0);
  EXPECT_EQ(slurp(dir2 / "qtable_last_seed1.json"), first);
}

TEST(Cli, StatsWritesTables) {
  const auto dir = scratch("stats");
  const auto r = run("stats --out " + dir.string());
  ASSERT_EQ(r.status, 0);
  for (const char* f : {"letter_table.csv", "letter_table_smoothed.csv", "word_scores.csv", "stats.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
}
