#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

namespace eufui {
namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '{') out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

TEST(Cli, BothAlgorithmsAgree) {
  const Captured r = run({testing::data_path("mixed_heads.smt"), "--algorithm", "both", "--verify", "equivalence"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("; equivalent"), std::string::npos);
  EXPECT_NE(r.out.find("; tableaux"), std::string::npos);
  EXPECT_NE(r.out.find("; conditional"), std::string::npos);
}

TEST(Cli, ReadsStandardInput) {
  const Captured r = run({"--algorithm", "tableaux", "--unravel"}, testing::read_data("shared_argument.smt"));
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("z1"), std::string::npos);
  EXPECT_EQ(r.out.find("let"), std::string::npos);
}

TEST(Cli, StatsJsonKeys) {
  const Captured r = run({testing::data_path("four_applications.smt"), "--algorithm", "both", "--format", "stats-json",
                     "--verify", "residue"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto lines = json_lines(r.err);
  ASSERT_EQ(lines.size(), 2u);
  for (const auto& j : lines) {
    for (const char* key : {"algorithm", "branches_explored", "rule4_firings", "s2_size", "s3_size", "num_cdags",
                            "time_ms", "ui_compressed_size", "residue_verified"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
  }
  EXPECT_EQ(lines[0]["algorithm"], "tableaux");
  EXPECT_EQ(lines[0]["branches_explored"], 16);
}

TEST(Cli, BranchCapExitsWithLimitCode) {
  const Captured r = run({testing::data_path("four_applications.smt"), "--algorithm", "tableaux", "--max-branches", "4",
                     "--format", "stats-json"});
  EXPECT_EQ(r.code, cli::kResourceLimit);
  const auto lines = json_lines(r.err);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines.back()["limit"], "branch");
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"/nonexistent/problem.smt"}).code, cli::kInputError);
  const Captured bad = run({}, "(declare-sort U 0)\n(eliminate e)\n");
  EXPECT_EQ(bad.code, cli::kInputError);
  EXPECT_NE(bad.err.find("<stdin>:2:"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"--algorithm", "magic"}).code, cli::kInputError);
  EXPECT_EQ(run({testing::data_path("mixed_heads.smt"), "--verify", "equivalence"}).code, cli::kInputError);
}

TEST(Cli, Help) {
  const Captured r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("--algorithm"), std::string::npos);
}

}  // namespace
}  // namespace eufui
