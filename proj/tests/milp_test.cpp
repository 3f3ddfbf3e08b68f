#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fortcover/milp/branch_and_bound.hpp"
#include "fortcover/milp/dual_simplex.hpp"
#include "fortcover/milp/linear_model.hpp"

namespace {

using fortcover::milp::BranchAndBoundBackend;
using fortcover::milp::DualSimplex;
using fortcover::milp::LinearModel;
using fortcover::milp::LpStatus;
using fortcover::milp::Relation;
using fortcover::milp::SolveLimits;
using fortcover::milp::SolveStatus;
using fortcover::milp::VarKind;

TEST(LinearModel, RejectsUndeclaredVariable) {
  LinearModel m;
  m.add_binary("x");
  EXPECT_THROW(m.add_constraint({{1, 1.0}}, Relation::kLessEqual, 1.0), std::out_of_range);
}

TEST(LinearModel, RejectsInfiniteIntegerBounds) {
  LinearModel m;
  EXPECT_THROW(m.add_variable("z", VarKind::kInteger, 0, fortcover::milp::kInfinity),
               std::invalid_argument);
}

TEST(LinearModel, WritesLpFormat) {
  LinearModel m;
  int x = m.add_binary("x", 1.0);
  int y = m.add_variable("y", VarKind::kInteger, 0, 4, 2.0);
  m.add_constraint({{x, 1.0}, {y, -3.0}}, Relation::kGreaterEqual, -2.0, "cover");
  std::ostringstream out;
  m.write_lp(out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Minimize\n obj: x + 2 y"), std::string::npos);
  EXPECT_NE(text.find("cover: x - 3 y >= -2"), std::string::npos);
  EXPECT_NE(text.find("General\n y"), std::string::npos);
  EXPECT_NE(text.find("Binary\n x"), std::string::npos);
}

TEST(DualSimplex, SolvesSmallLp) {
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6, 0 <= x,y <= 10
  LinearModel m;
  int x = m.add_variable("x", VarKind::kContinuous, 0, 10, -1.0);
  int y = m.add_variable("y", VarKind::kContinuous, 0, 10, -1.0);
  m.add_constraint({{x, 1}, {y, 2}}, Relation::kLessEqual, 4);
  m.add_constraint({{x, 3}, {y, 1}}, Relation::kLessEqual, 6);
  DualSimplex lp(m);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), -2.8, 1e-9);
  auto v = lp.primal();
  EXPECT_NEAR(v[0], 1.6, 1e-9);
  EXPECT_NEAR(v[1], 1.2, 1e-9);
}

TEST(DualSimplex, DetectsInfeasibility) {
  LinearModel m;
  int x = m.add_variable("x", VarKind::kContinuous, 0, 1, 1.0);
  int y = m.add_variable("y", VarKind::kContinuous, 0, 1, 1.0);
  m.add_constraint({{x, 1}, {y, 1}}, Relation::kGreaterEqual, 3);
  DualSimplex lp(m);
  EXPECT_EQ(lp.solve(), LpStatus::kInfeasible);
}

TEST(DualSimplex, WarmStartAfterBoundChange) {
  LinearModel m;
  int x = m.add_variable("x", VarKind::kContinuous, 0, 1, 1.0);
  int y = m.add_variable("y", VarKind::kContinuous, 0, 1, 2.0);
  m.add_constraint({{x, 1}, {y, 1}}, Relation::kEqual, 1);
  DualSimplex lp(m);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), 1.0, 1e-12);
  lp.set_column_bounds(0, 0, 0.25);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), 0.25 + 1.5, 1e-12);
}

TEST(BranchAndBound, SetCoverTriangle) {
  // Cover each edge of a triangle: needs two vertices.
  LinearModel m;
  int a = m.add_binary("a", 1), b = m.add_binary("b", 1), c = m.add_binary("c", 1);
  m.add_constraint({{a, 1}, {b, 1}}, Relation::kGreaterEqual, 1);
  m.add_constraint({{b, 1}, {c, 1}}, Relation::kGreaterEqual, 1);
  m.add_constraint({{a, 1}, {c, 1}}, Relation::kGreaterEqual, 1);
  BranchAndBoundBackend bb;
  auto r = bb.solve(m, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
  EXPECT_TRUE(m.is_feasible(r.values));
  auto lp = bb.solve_relaxation(m);
  ASSERT_EQ(lp.status, SolveStatus::kOptimal);
  EXPECT_NEAR(lp.objective, 1.5, 1e-9);
}

TEST(BranchAndBound, ReportsInfeasible) {
  LinearModel m;
  int a = m.add_binary("a"), b = m.add_binary("b");
  m.add_constraint({{a, 2}, {b, 2}}, Relation::kEqual, 1);
  BranchAndBoundBackend bb;
  EXPECT_EQ(bb.solve(m, {}).status, SolveStatus::kInfeasible);
}

TEST(BranchAndBound, EmptyModel) {
  LinearModel m;
  BranchAndBoundBackend bb;
  auto r = bb.solve(m, {});
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 0.0);
}

TEST(BranchAndBound, NodeLimitGivesLimitStatus) {
  // Many symmetric optima keep the tree open.
  LinearModel m;
  std::vector<int> x;
  for (int i = 0; i < 30; ++i) x.push_back(m.add_binary("x" + std::to_string(i), 1));
  std::vector<fortcover::milp::Term> all;
  for (int v : x) all.push_back({v, 2});
  m.add_constraint(all, Relation::kEqual, 31);
  BranchAndBoundBackend bb;
  SolveLimits limits;
  limits.node_limit = 5;
  EXPECT_EQ(bb.solve(m, limits).status, SolveStatus::kLimit);
}

// Random pure-binary programs against exhaustive enumeration.
TEST(BranchAndBound, MatchesEnumerationOnRandomBinaryPrograms) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> nvars(2, 10);
  std::uniform_int_distribution<int> nrows(1, 8);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearModel m;
    const int n = nvars(rng);
    for (int j = 0; j < n; ++j) m.add_binary("x" + std::to_string(j), coef(rng));
    const int rows = nrows(rng);
    for (int i = 0; i < rows; ++i) {
      std::vector<fortcover::milp::Term> terms;
      for (int j = 0; j < n; ++j) {
        int c = coef(rng);
        if (c != 0) terms.push_back({j, static_cast<double>(c)});
      }
      const auto rel = static_cast<Relation>(rng() % 3);
      m.add_constraint(terms, rel, coef(rng));
    }
    double best = fortcover::milp::kInfinity;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
      if (m.is_feasible(x)) best = std::min(best, m.objective_value(x));
    }
    BranchAndBoundBackend bb;
    auto r = bb.solve(m, {});
    if (std::isinf(best)) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(r.objective, best, 1e-9) << "trial " << trial;
      EXPECT_TRUE(m.is_feasible(r.values));
      ++solved;
    }
  }
  EXPECT_GT(solved, 50);
}

// Mixed general-integer programs against enumeration.
TEST(BranchAndBound, MatchesEnumerationWithGeneralIntegers) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 150; ++trial) {
    LinearModel m;
    const int n = 4;
    for (int j = 0; j < n; ++j) m.add_variable("z" + std::to_string(j), VarKind::kInteger, 0, 3, coef(rng));
    for (int i = 0; i < 4; ++i) {
      std::vector<fortcover::milp::Term> terms;
      for (int j = 0; j < n; ++j) terms.push_back({j, static_cast<double>(coef(rng))});
      m.add_constraint(terms, static_cast<Relation>(rng() % 2), coef(rng) * 2);
    }
    double best = fortcover::milp::kInfinity;
    for (int code = 0; code < 256; ++code) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = (code >> (2 * j)) & 3;
      if (m.is_feasible(x)) best = std::min(best, m.objective_value(x));
    }
    BranchAndBoundBackend bb;
    auto r = bb.solve(m, {});
    if (std::isinf(best)) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(r.objective, best, 1e-9) << "trial " << trial;
    }
  }
}

}  // namespace

namespace {

using namespace fortcover::milp;

// max x + y + z with x + y <= 1, y + z <= 1, x + z <= 1 over binaries.
LinearModel odd_cycle_packing() {
  LinearModel m;
  const int x = m.add_binary("x", -1.0);
  const int y = m.add_binary("y", -1.0);
  const int z = m.add_binary("z", -1.0);
  m.add_constraint({{x, 1.0}, {y, 1.0}}, Relation::kLessEqual, 1.0);
  m.add_constraint({{y, 1.0}, {z, 1.0}}, Relation::kLessEqual, 1.0);
  m.add_constraint({{x, 1.0}, {z, 1.0}}, Relation::kLessEqual, 1.0);
  return m;
}

TEST(BranchAndBoundStart, FeasibleStartIsFirstIncumbent) {
  BranchAndBoundBackend bb;
  SolveLimits limits;
  limits.node_limit = 0;
  limits.start = {0.0, 1.0, 0.0};
  auto r = bb.solve(odd_cycle_packing(), limits);
  EXPECT_EQ(r.status, SolveStatus::kLimit);
  ASSERT_TRUE(r.has_solution);
  EXPECT_DOUBLE_EQ(r.objective, -1.0);
  EXPECT_EQ(r.values, limits.start);
}

TEST(BranchAndBoundStart, InfeasibleStartIsIgnored) {
  BranchAndBoundBackend bb;
  SolveLimits limits;
  limits.start = {1.0, 1.0, 0.0};
  auto r = bb.solve(odd_cycle_packing(), limits);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r.objective, -1.0);
  limits.node_limit = 0;
  EXPECT_FALSE(bb.solve(odd_cycle_packing(), limits).has_solution);
}

}  // namespace
