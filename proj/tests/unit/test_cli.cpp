#include "cli.hpp"

#include "hpnmf/csv.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using hpnmf::cli::cli_main;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hpnmf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run_cli({"frobnicate"}), 1); }

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run_cli({}), 1); }

TEST(Cli, BadFlagValueIsUsageError) { EXPECT_EQ(run_cli({"gen", "--n", "many"}), 1); }

TEST(Cli, GenWritesThreeMatrices) {
  const auto dir = fresh_dir("hpnmf_cli_gen");
  ASSERT_EQ(run_cli({"gen", "--kind", "A", "--n", "50", "--m", "20", "--r", "3", "--seed", "7", "--out",
                     dir.string(), "--quiet"}),
            0);
  EXPECT_EQ(hpnmf::read_matrix_csv(dir / "X.csv").rows(), 50);
  EXPECT_EQ(hpnmf::read_matrix_csv(dir / "W_true.csv").cols(), 3);
  EXPECT_EQ(hpnmf::read_matrix_csv(dir / "H_true.csv").cols(), 20);
  fs::remove_all(dir);
}

TEST(Cli, GenBadDimensionsIsConfigError) {
  EXPECT_EQ(run_cli({"gen", "--n", "5", "--m", "5", "--r", "9", "--out", fresh_dir("hpnmf_cli_bad").string(),
                     "--quiet"}),
            2);
}

TEST(Cli, BadConfigIsConfigError) {
  const auto dir = fresh_dir("hpnmf_cli_cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"nonsense": 1})";
  EXPECT_EQ(run_cli({"run", "--config", (dir / "bad.json").string(), "--quiet"}), 2);
  EXPECT_EQ(run_cli({"run", "--config", (dir / "missing.json").string(), "--quiet"}), 2);
  EXPECT_EQ(run_cli({"run", "--algo", "svd", "--quiet"}), 2);
  fs::remove_all(dir);
}

TEST(Cli, RunWritesCsvs) {
  const auto dir = fresh_dir("hpnmf_cli_run");
  fs::create_directories(dir);
  std::ofstream(dir / "cfg.json") << R"({
    "benchmark": {"n": 20, "m": 10, "r": 2},
    "mc_runs": 2,
    "solver": {"max_iter": 30},
    "altbi": {"max_iter": 30}
  })";
  ASSERT_EQ(run_cli({"run", "--config", (dir / "cfg.json").string(), "--out", (dir / "out").string(), "--seed",
                     "5", "--algo", "mu,altbi", "--quiet"}),
            0);
  for (const char* f : {"traces.csv", "sir.csv", "sparsity.csv", "lambda.csv", "aggregate.csv", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  fs::remove_all(dir);
}

TEST(Cli, SweepWritesGridLabels) {
  const auto dir = fresh_dir("hpnmf_cli_sweep");
  fs::create_directories(dir);
  std::ofstream(dir / "cfg.json") << R"({"benchmark": {"n": 20, "m": 10, "r": 2},
    "solver": {"max_iter": 20}, "grid": [0, 0.5]})";
  ASSERT_EQ(run_cli({"sweep", "--config", (dir / "cfg.json").string(), "--out", (dir / "out").string(), "--quiet"}),
            0);
  std::ifstream in(dir / "out" / "runs.csv");
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_NE(first.find("grid:0,"), std::string::npos) << first;
  EXPECT_NE(second.find("grid:0.5,"), std::string::npos) << second;
  fs::remove_all(dir);
}

TEST(Cli, GradcheckPassesOnDefaults) { EXPECT_EQ(run_cli({"gradcheck", "--quiet"}), 0); }
