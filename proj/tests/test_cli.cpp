// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pathlap/dataset.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(PATHLAP_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pathlap_cli_" + std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndBadFlags) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("generate --help").code, 0);
  EXPECT_EQ(run("generate --no-such-flag").code, 2);
  EXPECT_EQ(run("generate --n notanumber").code, 2);
  EXPECT_EQ(run("simulate --model sbm").code, 2);
  EXPECT_EQ(run("simulate --n 1").code, 2);
  EXPECT_EQ(run("generate --grid tiny").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, GenerateWritesTwoFilesDeterministically) {
  const std::string flags = "generate --model ba --n 25 --case base --train 10 --test 5 --seed 7";
  auto a = run(flags + " --out " + path("a") + " --workers 1");
  ASSERT_EQ(a.code, 0);
  auto b = run(flags + " --out " + path("b") + " --workers 3 --csv");
  ASSERT_EQ(b.code, 0);
  for (const char* f : {"BA_n25_base_train.jsonl", "BA_n25_base_test.jsonl"}) {
    ASSERT_TRUE(fs::exists(dir_ / "a" / f));
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f));
  }
  EXPECT_TRUE(fs::exists(dir_ / "b" / "BA_n25_base_train.csv"));
  auto file = pathlap::read_jsonl(dir_ / "a" / "BA_n25_base_train.jsonl");
  EXPECT_EQ(file.samples.size(), 10u);
  EXPECT_EQ(file.manifest.config.master_seed, 7u);
}

TEST_F(Cli, GenerationFailureExitsThree) {
  auto r = run("generate --model er --p 0.01 --train 2 --test 1 --out " + path("x"));
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, SeedFallsBackToEnvironment) {
  auto flag = run("simulate --seed 11");
  auto env = run("simulate");
  ASSERT_EQ(flag.code, 0);
  auto with_env = std::string("PATHLAP_SEED=11 ") + PATHLAP_CLI_PATH + " simulate";
  FILE* pipe = popen(with_env.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_EQ(out, flag.out);
  EXPECT_NE(env.out, flag.out);
}

TEST_F(Cli, SimulateReportsConvergenceAndTrajectory) {
  auto r = run("simulate --model ba --n 25 --seed 2 --emit-trajectory " +
               path("traj.csv") + " --save-graph " + path("g.txt"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\ttrue\t"), std::string::npos);
  std::ifstream traj(path("traj.csv"));
  std::string header, first;
  std::getline(traj, header);
  std::getline(traj, first);
  EXPECT_EQ(header.rfind("case,t,phi_0,", 0), 0u);
  EXPECT_EQ(first.rfind("base,0,", 0), 0u);

  // The saved graph reproduces the run.
  auto again = run("simulate --graph " + path("g.txt"));
  ASSERT_EQ(again.code, 0);
  auto row_tail = [](const std::string& out) {
    auto line = out.substr(out.find('\n') + 1);
    line = line.substr(0, line.find('\n'));
    // drop run and seed columns
    return line.substr(line.find('\t', line.find('\t') + 1));
  };
  EXPECT_EQ(row_tail(again.out), row_tail(r.out));
}

TEST_F(Cli, SimulateBothCasesPrintsMedians) {
  auto r = run("simulate --model er --n 20 --case both --repeat 4 --seed 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("median_iterations"), std::string::npos);
  EXPECT_NE(r.out.find("\nexponential\t4\t"), std::string::npos);
}

TEST_F(Cli, ConfigFilePrecedence) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# experiment\nmodel = er\nn = 18\niter_max = 300000\n";
  }
  auto from_file = run("simulate --seed 4 --config " + path("run.cfg"));
  auto from_flags = run("simulate --seed 4 --model er --n 18");
  ASSERT_EQ(from_file.code, 0);
  EXPECT_EQ(from_file.out, from_flags.out);
  auto override = run("simulate --seed 4 --n 22 --config " + path("run.cfg"));
  EXPECT_EQ(override.out, run("simulate --seed 4 --model er --n 22").out);

  {
    std::ofstream bad(path("bad.cfg"));
    bad << "nodes = 5\n";
  }
  EXPECT_EQ(run("simulate --config " + path("bad.cfg")).code, 2);
  EXPECT_EQ(run("simulate --config " + path("missing.cfg")).code, 2);
}

TEST_F(Cli, SpectralTableAndExport) {
  {
    std::ofstream g(path("ring.txt"));
    g << "n 6 directed\n";
    for (int i = 0; i < 6; ++i) g << i << ' ' << (i + 1) % 6 << '\n' << (i + 1) % 6 << ' ' << i << '\n';
  }
  auto r = run("spectral --graph " + path("ring.txt") + " --export-dir " + path("exp"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k\tcomponents\tzero_multiplicity\tfiedler");
  EXPECT_NE(r.out.find("\n1\t1\t1\t1\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n3\t3\t3\t"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "exp" / "P_3.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "exp" / "L_1.csv"));
  EXPECT_EQ(run("spectral --mode sideways").code, 2);
}

TEST_F(Cli, EvaluatePrintsRowPerStrategy) {
  ASSERT_EQ(run("generate --n 25 --train 4 --test 3 --seed 5 --pb 1 --out " + path("d")).code, 0);
  auto r = run("evaluate " + path("d/BA_n25_base_test.jsonl"));
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  EXPECT_EQ(header, "model\tn\tcase\tsplit\tstrategy\trmse\tmape\tmape_excluded\ttime_ms");
  int rows = 0;
  while (std::getline(is, row)) {
    EXPECT_EQ(row.rfind("BA\t25\tbase\ttest\t", 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, 2);
  {
    std::ofstream bad(path("bad.jsonl"));
    bad << "{oops\n";
  }
  EXPECT_EQ(run("evaluate " + path("bad.jsonl")).code, 2);
}
