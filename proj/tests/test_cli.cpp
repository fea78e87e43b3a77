#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "settr/io.hpp"

namespace settr {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(SETTR_TEST_TMP) / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  // Runs the CLI with stdout/stderr captured; returns the exit status.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + (env.empty() ? "" : " ") + "'" +
                            SETTR_CLI_PATH + "' " + args + " > stdout.txt 2> stderr.txt";
    const int raw = std::system(cmd.c_str());
    out_ = slurp(dir_ / "stdout.txt");
    err_ = slurp(dir_ / "stderr.txt");
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
  std::string out_, err_;
};

TEST_F(Cli, ListProblems) {
  ASSERT_EQ(run("list-problems"), 0);
  const auto lines = lines_of(out_);
  EXPECT_GE(lines.size(), 17u);
  EXPECT_NE(out_.find("GGCZ16-BQT2"), std::string::npos);
  EXPECT_NE(out_.find("GGTZ17-Sphere"), std::string::npos);
  EXPECT_NE(out_.find("finite-difference"), std::string::npos);
}

TEST_F(Cli, SolveExample51Converges) {
  ASSERT_EQ(run("solve --problem Example5.1 --cone K1 --x0 9,8 --trace-jsonl t.jsonl --trace-csv t.csv"), 0) << err_;
  EXPECT_NE(out_.find("status=converged"), std::string::npos);
  const auto rows = lines_of(slurp(dir_ / "t.jsonl"));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(io::json::parse(rows.back()).at("status"), "converged");
  const auto csv = lines_of(slurp(dir_ / "t.csv"));
  EXPECT_EQ(csv.size(), rows.size() + 1);
}

TEST_F(Cli, HugeEpsilonStopsImmediately) {
  ASSERT_EQ(run("solve --problem Example5.1 --x0 9,8 --epsilon 1e9 --trace-jsonl t.jsonl"), 0) << err_;
  const auto rows = lines_of(slurp(dir_ / "t.jsonl"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(io::json::parse(rows[0]).at("k"), 0);
  EXPECT_NE(out_.find("iterations=0"), std::string::npos);
}

TEST_F(Cli, IterationLimitExitsWithTwo) {
  EXPECT_EQ(run("solve --problem Example5.1 --x0 9,8 --max-iter 1"), 2) << out_ << err_;
  EXPECT_NE(out_.find("status=max-iter"), std::string::npos);
}

TEST_F(Cli, ErrorsExitWithOne) {
  EXPECT_EQ(run("solve --problem NoSuchProblem"), 1);
  EXPECT_NE(err_.find("NoSuchProblem"), std::string::npos);
  EXPECT_EQ(run("solve --problem Example5.1 --cone K2 --eta1 0.9"), 1);
  EXPECT_EQ(run("solve --problem Example5.1 --x0 1,2,3"), 1);
  EXPECT_EQ(run("solve --problem GGTZ3-DTLZ1 --cone K2"), 1);
  EXPECT_EQ(run("profile missing.csv"), 1);
  EXPECT_NE(err_.find("missing.csv"), std::string::npos);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, ConfigFileUnknownKeyIsNamed) {
  write("run.json", R"({"problem": "Example5.1", "x0": [9, 8], "omega_zero": 1})");
  EXPECT_EQ(run("solve --config run.json"), 1);
  EXPECT_NE(err_.find("omega_zero"), std::string::npos);
  write("run2.json", R"({"problem": "Example5.1", "config": {"eta": 0.1}})");
  EXPECT_EQ(run("solve --config run2.json"), 1);
  EXPECT_NE(err_.find("eta"), std::string::npos);
}

TEST_F(Cli, ConfigFileWithInlineCone) {
  write("run.json", R"({"problem": "GGCZ16-BQT2", "cone": {"normals": [[1, 0], [0, 1]]},
                        "x0": [9, 8], "config": {"omega0": 0.5}, "trace_jsonl": "bqt2.jsonl",
                        "timing": false})");
  ASSERT_EQ(run("solve --config run.json"), 0) << err_;
  const auto rows = lines_of(slurp(dir_ / "bqt2.jsonl"));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(io::json::parse(rows.front()).at("omega"), 0.5);
}

TEST_F(Cli, RandomStartsWriteOneTracePerStart) {
  ASSERT_EQ(run("solve --problem GGTZ7-DGO1 --x0 random:3 --trace-jsonl d.jsonl --no-timing"), 0) << err_;
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(fs::exists(dir_ / ("d." + std::to_string(k) + ".jsonl")));
  EXPECT_EQ(lines_of(out_).size(), 3u);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  ASSERT_EQ(run("solve --problem Example5.1 --x0 9,8", "SETTR_OUTPUT_DIR=envout"), 0) << err_;
  EXPECT_TRUE(fs::exists(dir_ / "envout" / "Example5.1_n2m2_trm.trace.jsonl"));
  EXPECT_TRUE(fs::exists(dir_ / "envout" / "Example5.1_n2m2_trm.trace.csv"));
}

TEST_F(Cli, OutputsAreByteStable) {
  ASSERT_EQ(run("solve --problem GGCZ16-BQT2 --x0 9,8 --no-timing --trace-jsonl a.jsonl --trace-csv a.csv"), 0);
  ASSERT_EQ(run("solve --problem GGCZ16-BQT2 --x0 9,8 --no-timing --trace-jsonl b.jsonl --trace-csv b.csv"), 0);
  EXPECT_EQ(slurp(dir_ / "a.jsonl"), slurp(dir_ / "b.jsonl"));
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));

  const std::string bench = "bench --problems GGTZ7-DGO1,GGCZ15-BQT1 --inits 2 --no-timing ";
  ASSERT_EQ(run(bench + "--records r1.csv --summary s1.csv"), 0) << err_;
  ASSERT_EQ(run(bench + "--records r2.csv --summary s2.csv --threads 2"), 0) << err_;
  EXPECT_EQ(slurp(dir_ / "r1.csv"), slurp(dir_ / "r2.csv"));
  EXPECT_EQ(slurp(dir_ / "s1.csv"), slurp(dir_ / "s2.csv"));
  // 2 problems x 2 starts x 2 solvers, plus the header.
  EXPECT_EQ(lines_of(slurp(dir_ / "r1.csv")).size(), 9u);
}

TEST_F(Cli, ProfileOnTwoSolverTable) {
  write("r.csv", std::string(io::kRecordsCsvHeader) +
                     "\np,A,0,1,0,1,3,1,1"
                     "\np,B,0,1,0,1,3,2,1\n");
  ASSERT_EQ(run("profile r.csv --metric wall_seconds --out prof.json --gnuplot-dir gp"), 0) << err_;
  const auto j = io::read_json_file((dir_ / "prof.json").string());
  ASSERT_EQ(j.at("curves").size(), 2u);
  const auto& a = j.at("curves")[0];
  const auto& b = j.at("curves")[1];
  EXPECT_EQ(a.at("solver"), "A");
  for (const auto& r : a.at("rho")) EXPECT_EQ(r.get<double>(), 1.0);
  const auto tau = b.at("tau").get<std::vector<double>>();
  const auto rho = b.at("rho").get<std::vector<double>>();
  for (std::size_t q = 0; q < tau.size(); ++q) EXPECT_EQ(rho[q], tau[q] < 2.0 ? 0.0 : 1.0) << tau[q];
  EXPECT_EQ(tau.front(), 1.0);
  EXPECT_EQ(tau.back(), 2.0);
  EXPECT_TRUE(fs::exists(dir_ / "gp" / "A_wall_seconds.dat"));
  EXPECT_EQ(run("profile r.csv --metric speed"), 1);
}

TEST_F(Cli, CheckDerivatives) {
  EXPECT_EQ(run("check GGTZ5-FDSa 2 3"), 0) << out_;
  EXPECT_NE(out_.find("PASS"), std::string::npos);
  EXPECT_EQ(run("check GGTZ3-DTLZ1"), 0);
  EXPECT_NE(out_.find("skipped"), std::string::npos);
  EXPECT_EQ(run("check GGTZ1-ZDT1 3 2"), 1);
}

}  // namespace
}  // namespace settr
