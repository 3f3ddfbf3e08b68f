#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fortcover/bench.hpp"

namespace {

using namespace fortcover;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("fortcover_bench_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(LoadSuite, BundledSuite) {
  auto cases = load_suite(data_dir() / "ieee_suite.json");
  ASSERT_GE(cases.size(), 5u);
  EXPECT_EQ(cases[0].name, "ieee14");
  EXPECT_EQ(cases[0].expected.gamma_p, 2u);
  EXPECT_EQ(cases[4].expected.init_constraints, 14u);
  EXPECT_FALSE(cases[0].optional);
  EXPECT_TRUE(cases[0].graph_path.is_absolute() || fs::exists(cases[0].graph_path));
  for (const auto& c : cases) {
    if (!c.optional) {
      EXPECT_TRUE(fs::exists(c.graph_path)) << c.graph_path;
    }
  }
}

TEST(LoadSuite, MissingFileThrows) {
  EXPECT_THROW((void)load_suite("/nonexistent/suite.json"), std::runtime_error);
}

TEST(RunBenchCase, SkipsAbsentOptionalDataset) {
  fs::path dir = scratch_dir("optional");
  std::ofstream(dir / "suite.json")
      << R"({"cases": [{"name": "big", "graph": "big.edges", "optional": true,
                         "expected": {"gamma_p": 5}}]})";
  auto cases = load_suite(dir / "suite.json");
  ASSERT_EQ(cases.size(), 1u);
  EXPECT_EQ(cases[0].graph_path, dir / "big.edges");
  auto out = run_bench_case(cases[0], {});
  EXPECT_TRUE(out.skipped);
  EXPECT_TRUE(out.passed());
  EXPECT_EQ(to_json(out)["skipped"], true);
}

TEST(RunBenchCase, MismatchIsReported) {
  fs::path dir = scratch_dir("mismatch");
  std::ofstream(dir / "k4.edges") << "a b\na c\na d\nb c\nb d\nc d\n";
  std::ofstream(dir / "suite.json")
      << R"({"cases": [{"name": "k4", "graph": "k4.edges",
                         "expected": {"n": 4, "m": 6, "gamma_p": 2}}]})";
  auto out = run_bench_case(load_suite(dir / "suite.json")[0], {});
  EXPECT_FALSE(out.passed());
  ASSERT_EQ(out.checks.size(), 3u);
  EXPECT_TRUE(out.checks[0].ok());
  EXPECT_EQ(out.checks[2].column, "gamma_p");
  EXPECT_EQ(out.checks[2].observed, 1u);
}

TEST(RunBenchCase, SmallIeeeCasesMatch) {
  auto cases = load_suite(data_dir() / "ieee_suite.json");
  for (std::size_t i = 0; i < 4; ++i) {
    auto out = run_bench_case(cases[i], {});
    EXPECT_TRUE(out.passed()) << to_json(out).dump();
    EXPECT_EQ(out.checks.size(), 5u);
    auto j = to_json(out);
    EXPECT_EQ(j["status"], "optimal");
    EXPECT_EQ(j["gamma_p"], *cases[i].expected.gamma_p);
  }
}

TEST(DataDir, EnvironmentOverride) {
  const fs::path original = data_dir();
  fs::path dir = scratch_dir("env");
  ASSERT_EQ(setenv("FORTCOVER_DATA_DIR", dir.c_str(), 1), 0);
  EXPECT_EQ(data_dir(), dir);
  ASSERT_EQ(unsetenv("FORTCOVER_DATA_DIR"), 0);
  EXPECT_EQ(data_dir(), original);
}

TEST(LoadGraph, MissingFileThrows) {
  EXPECT_THROW((void)load_graph("/nonexistent.edges"), std::runtime_error);
}

}  // namespace
