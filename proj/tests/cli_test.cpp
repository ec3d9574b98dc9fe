#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "paradv/report.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = paradv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "paradv_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(cli, bound_single_query) {
  const auto r = run({"bound", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "[closed-form] theorem2 = 2.449489743"));
  EXPECT_TRUE(contains(r.out, "[enumerated]  theorem2 = 2.449489743"));
  EXPECT_TRUE(contains(r.out, "theorem1 ratio = 2.449489743"));
  EXPECT_TRUE(contains(r.out, "theorem3 = 2.000000000"));
  EXPECT_FALSE(contains(r.out, "WARN"));
}

TEST(cli, bound_two_queries_warns) {
  const auto r = run({"bound", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "theorem1 ratio = 1.732050808"));
  EXPECT_TRUE(contains(r.out, "WARN ell: enumerated=2 closed-form=1 witness row=4 tuple=(0,1)"));
}

TEST(cli, bound_writes_report) {
  const auto path = scratch("bound.json");
  const auto r = run({"bound", "--n", "3", "--k", "2", "--eps", "1/1", "--p", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = slurp(path);
  const auto rep = paradv::bound_report_from_json(nlohmann::json::parse(doc));
  EXPECT_EQ(rep, paradv::compute_bound_report(3, 2, paradv::Rational(1, 1), 2));
  const auto again = run({"bound", "--n", "3", "--k", "2", "--eps", "1/1", "--p", "2", "--out", path.string()});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(slurp(path), doc);
}

TEST(cli, parameter_errors_exit_two) {
  auto r = run({"bound", "--n", "3", "--k", "1", "--eps", "1/2", "--p", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "NonIntegerParameters"));
  r = run({"bound", "--n", "2", "--k", "3", "--eps", "1/1", "--p", "1"});
  EXPECT_EQ(r.code, 2);
  r = run({"bound", "--n", "2", "--k", "1", "--eps", "half", "--p", "1"});
  EXPECT_EQ(r.code, 2);
  r = run({"bound", "--n", "2"});
  EXPECT_EQ(r.code, 2);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  r = run({"simulate", "pcount", "--n", "4", "--k", "3", "--p", "2", "--tbits", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "IndivisibleParameters"));
}

TEST(cli, sweep_csv) {
  const auto r = run({"sweep", "--n", "2..3", "--k", "1,2", "--eps", "1/1", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "n,N,K,eps,p,h,hp,ell_enum"));
  EXPECT_TRUE(contains(r.out, "3,8,2,1/1,1,15,6,5,3,5,3,"));
  EXPECT_TRUE(contains(r.out, "2,4,1,1/1,1,3,2,1,1,1,1,"));
}

TEST(cli, sweep_skips_invalid_points) {
  const auto r = run({"sweep", "--n", "2", "--k", "1,2,3", "--eps", "1/1", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.err, "skip n=2 K=3"));
  const auto empty = run({"sweep", "--n", "2", "--k", "3", "--eps", "1/1", "--p", "1"});
  EXPECT_EQ(empty.code, 2);
}

TEST(cli, sweep_theorem3_column) {
  const auto r = run({"sweep", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1..4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> last;
  std::getline(lines, line);
  while (std::getline(lines, line)) last.push_back(line.substr(line.rfind(',') + 1));
  ASSERT_EQ(last.size(), 4u);
  EXPECT_EQ(last[0], "2");
  EXPECT_EQ(last[1], "1.41421356237");
  EXPECT_EQ(last[3], "1");
}

TEST(cli, simulate_grover) {
  const auto r = run({"simulate", "grover", "--n", "2", "--marked", "3", "--iters", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "success=1.000000000"));
  const auto two = run({"simulate", "grover", "--n", "3", "--marked", "5", "--iters", "2"});
  EXPECT_TRUE(contains(two.out, "success=0.945312500"));
}

TEST(cli, simulate_count) {
  const auto r = run({"simulate", "count", "--n", "4", "--k", "8", "--tbits", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "khat=8 p=1.000000000 queries=7"));
}

TEST(cli, simulate_pcount) {
  const auto path = scratch("pcount.json");
  const auto r = run({"simulate", "pcount", "--n", "5", "--k", "16", "--p", "2", "--tbits", "3", "--out",
                      path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "khat=16 p=1.000000000 depth=7 total_queries=14"));
  EXPECT_EQ(nlohmann::json::parse(slurp(path)).at("depth"), 7);
}

TEST(cli, simulate_progress) {
  const auto r = run({"simulate", "progress", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1", "--T", "3",
                      "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "W0=2.449489743"));
  EXPECT_TRUE(contains(r.out, "step_bound_ok=true"));
  EXPECT_TRUE(contains(r.out, "overlap_threshold=0.942809042"));
  const auto probe = run({"simulate", "progress", "--n", "2", "--k", "1", "--schedule", "probe", "--index", "1"});
  ASSERT_EQ(probe.code, 0) << probe.err;
  EXPECT_TRUE(contains(probe.out, "all_distinguishable=false"));
}
