// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error("no column " + name);
  }
  double num(std::size_t r, const std::string& name) const { return std::stod(rows[r][col(name)]); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Table read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  std::getline(is, line);
  t.header = split(line);
  while (std::getline(is, line)) t.rows.push_back(split(line));
  return t;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / ("rfflab_cli_" + std::string(info->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(RFFLAB_CLI_PATH) + " " + args + " > " + (root_ / "log.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  fs::path dir(const std::string& name) const { return root_ / name; }

  fs::path root_;
};

TEST_F(Cli, VarianceDefaultProfile) {
  ASSERT_EQ(run("variance --sigma 1 --out-dir " + dir("v").string()), 0);
  const auto t = read_csv(dir("v") / "variance_profile.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"delta_norm", "var_tilde_times_D", "var_breve_times_D", "kernel_value"}));
  ASSERT_EQ(t.rows.size(), 1001u);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    ASSERT_LE(t.num(r, "var_tilde_times_D"), t.num(r, "var_breve_times_D"));
  EXPECT_EQ(t.num(0, "var_tilde_times_D"), 0.0);
  EXPECT_EQ(t.num(0, "var_breve_times_D"), 0.5);
  EXPECT_TRUE(fs::exists(dir("v") / "manifest.json"));
}

TEST_F(Cli, VarianceRescalesWithSigma) {
  ASSERT_EQ(run("variance --sigma 1 --out-dir " + dir("s1").string()), 0);
  ASSERT_EQ(run("variance --sigma 2 --out-dir " + dir("s2").string()), 0);
  const auto a = read_csv(dir("s1") / "variance_profile.csv");
  const auto b = read_csv(dir("s2") / "variance_profile.csv");
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    ASSERT_NEAR(b.num(r, "delta_norm"), 2.0 * a.num(r, "delta_norm"), 1e-12);
    for (const char* c : {"var_tilde_times_D", "var_breve_times_D", "kernel_value"})
      ASSERT_NEAR(b.num(r, c), a.num(r, c), 1e-14) << c << " row " << r;
  }
}

TEST_F(Cli, MissingSigmaIsUsageError) {
  EXPECT_NE(run("variance --out-dir " + dir("x").string()), 0);
  EXPECT_FALSE(fs::exists(dir("x") / "variance_profile.csv"));
  EXPECT_NE(run("no-such-command"), 0);
  EXPECT_NE(run("max-error --variant sideways --out-dir " + dir("x").string()), 0);
}

TEST_F(Cli, BoundsBetaPeaks) {
  ASSERT_EQ(run("bounds --out-dir " + dir("b").string()), 0);
  const auto beta = read_csv(dir("b") / "beta.csv");
  std::map<std::string, std::pair<int, double>> best;
  for (std::size_t r = 0; r < beta.rows.size(); ++r) {
    auto& [d, v] = best[beta.rows[r][beta.col("variant")]];
    if (beta.num(r, "beta") > v) v = beta.num(r, "beta"), d = static_cast<int>(beta.num(r, "d"));
  }
  EXPECT_EQ(best["tilde"].first, 64);
  EXPECT_NEAR(best["tilde"].second, 66.0, 1e-9);
  EXPECT_EQ(best["breve"].first, 48);
  EXPECT_NEAR(best["breve"].second, 98.0, 1e-9);
  const auto eps = read_csv(dir("b") / "bounds_epsilon.csv");
  EXPECT_EQ(eps.header, (std::vector<std::string>{"variant", "form", "epsilon", "bound_value"}));
  const auto em = read_csv(dir("b") / "bounds_expected.csv");
  EXPECT_EQ(em.rows.size(), 16u);
  for (std::size_t r = 0; r < em.rows.size(); ++r)
    EXPECT_LE(em.num(r, "integrated_bound"), em.num(r, "integrated_bound_loose"));
}

TEST_F(Cli, MaxErrorOutputsAndReplay) {
  const std::string args = "max-error --trials 20 --grid-points 100 --d-grid 50,200,1000 --seed 7 --out-dir ";
  ASSERT_EQ(run(args + dir("m").string()), 0);
  const auto t = read_csv(dir("m") / "max_error.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"variant", "D", "trial", "max_abs_error", "mean_sq_error"}));
  ASSERT_EQ(t.rows.size(), 2u * 3u * 20u);
  std::map<std::string, std::map<int, double>> mean;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    mean[t.rows[r][0]][static_cast<int>(t.num(r, "D"))] += t.num(r, "max_abs_error") / 20.0;
  for (const std::string v : {"tilde", "breve"}) {
    EXPECT_GT(mean[v][50], mean[v][200]);
    EXPECT_GT(mean[v][200], mean[v][1000]);
  }
  const auto slopes = read_csv(dir("m") / "slopes.csv");
  EXPECT_EQ(slopes.header, (std::vector<std::string>{"variant", "slope", "ci_lo", "ci_hi"}));
  EXPECT_EQ(slopes.rows.size(), 2u);
  const auto surv = read_csv(dir("m") / "survival.csv");
  EXPECT_EQ(surv.header, (std::vector<std::string>{"variant", "D", "epsilon", "survival"}));

  // Same flags and replay from the manifest both reproduce every byte.
  ASSERT_EQ(run(args + dir("m2").string()), 0);
  ASSERT_EQ(run("replay " + (dir("m") / "manifest.json").string() + " --out-dir " + dir("m3").string()), 0);
  for (const char* f : {"max_error.csv", "survival.csv", "slopes.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(dir("m") / f), slurp(dir("m2") / f)) << f;
    EXPECT_EQ(slurp(dir("m") / f), slurp(dir("m3") / f)) << f;
  }
}

TEST_F(Cli, InvalidConfigLeavesNoOutputs) {
  EXPECT_EQ(run("max-error --d-grid 51 --trials 2 --variant tilde --out-dir " + dir("bad").string()), 2);
  EXPECT_TRUE(!fs::exists(dir("bad")) || fs::is_empty(dir("bad")));
  EXPECT_NE(run("max-error --input-dim 3 --out-dir " + dir("bad").string()), 0);
  EXPECT_EQ(run("max-error --trials 1 --memory-limit-mb 1 --out-dir " + dir("bad").string()), 2);
  EXPECT_TRUE(fs::is_empty(dir("bad")));
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
  std::ofstream(dir("cfg.ini")) << "[mmd]\nn=60\nm=70\ntrials=3\nd-grid=50,100\nvariant=tilde\n";
  ASSERT_EQ(run("--config " + dir("cfg.ini").string() + " mmd --m 40 --out-dir " + dir("mm").string()), 0);
  const auto t = read_csv(dir("mm") / "mmd_error.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"variant", "D", "redraw", "abs_error", "estimate"}));
  EXPECT_EQ(t.rows.size(), 6u);
  const std::string manifest = slurp(dir("mm") / "manifest.json");
  EXPECT_NE(manifest.find("\"m\": \"40\""), std::string::npos);
  EXPECT_NE(manifest.find("\"n\": \"60\""), std::string::npos);
}

TEST_F(Cli, L2AndKrrOutputs) {
  ASSERT_EQ(run("l2-error --trials 4 --grid-points 50 --d-grid 50,100,200 --out-dir " + dir("l").string()), 0);
  const auto s = read_csv(dir("l") / "l2_summary.csv");
  EXPECT_EQ(s.rows.size(), 6u);
  EXPECT_NEAR(s.num(1, "expected"), 0.6597344059174114 / 100, 1e-10);
  ASSERT_EQ(run("krr --trials 2 --n-train 40 --n-test 5 --out-dir " + dir("k").string()), 0);
  const auto k = read_csv(dir("k") / "krr_drift.csv");
  EXPECT_EQ(std::vector<std::string>(k.header.begin(), k.header.begin() + 5),
            (std::vector<std::string>{"variant", "D", "test_index", "drift", "bound"}));
  EXPECT_EQ(k.rows.size(), 2u * 2u * 2u * 5u);
  for (std::size_t r = 0; r < k.rows.size(); ++r) EXPECT_LE(k.num(r, "drift"), k.num(r, "bound"));
}

}  // namespace
