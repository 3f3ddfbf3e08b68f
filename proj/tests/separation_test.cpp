#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "figures.hpp"
#include "fortcover/generators.hpp"
#include "fortcover/milp/branch_and_bound.hpp"
#include "fortcover/oracle.hpp"
#include "fortcover/separation.hpp"

namespace {

using namespace fortcover;
using milp::BranchAndBoundBackend;
using milp::SolveStatus;

Weights random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 9);
  Weights w;
  for (std::size_t v = 0; v < n; ++v) {
    const int q = den(rng);
    w.emplace_back(std::uniform_int_distribution<int>(0, q)(rng), q);
  }
  return w;
}

// Graphs the fort neighborhood models accept.
std::vector<Graph> eligible_graphs(int count, std::uint64_t seed0) {
  std::vector<Graph> out;
  for (std::uint64_t seed = seed0; static_cast<int>(out.size()) < count; ++seed) {
    const double p = seed % 3 == 0 ? 0.2 : (seed % 3 == 1 ? 0.35 : 0.5);
    Graph g = random_connected_graph(4 + seed % 9, p, seed);
    if (g.max_degree() >= 3) out.push_back(std::move(g));
  }
  return out;
}

TEST(Model2, ZeroWeightsOnIeee14) {
  Graph g = fixtures::ieee(14);
  auto part = junction_partition(g);
  BranchAndBoundBackend bb;
  auto r = solve_min_weight_fn(bb, g, part, Weights(14, Rational(0)));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.violated_weight, Rational(0));
  EXPECT_TRUE(is_fort_neighborhood(g, part, r.neighborhood.vertices).has_value());
}

TEST(Model2, FigureLeftUnitWeights) {
  Graph g = fixtures::motivation_left();
  auto part = junction_partition(g);
  BranchAndBoundBackend bb;
  auto r = solve_min_weight_fn(bb, g, part, Weights(g.vertex_count(), Rational(1)));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const VertexSet f2 = fixtures::by_labels(g, {"v1", "v2", "v4"});
  EXPECT_EQ(r.violated_weight, Rational(closed_neighborhood(g, f2).size()));
  EXPECT_FALSE(r.found);  // weight 5 is not below 1
}

TEST(Model2, VariablesAndObjective) {
  Graph g = fixtures::ieee(14);
  auto part = junction_partition(g);
  Weights w(14, Rational(1, 2));
  FnModel fm = build_model2(g, part, w);
  EXPECT_EQ(fm.m_var.size(), part.junctions().size());
  EXPECT_EQ(fm.f_var.size(), part.junctions().size());
  EXPECT_EQ(fm.p_var.size(), part.path_count());
  EXPECT_EQ(fm.model.variable_count(), 2 * part.junctions().size() + part.path_count());
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    EXPECT_DOUBLE_EQ(fm.model.variable(fm.p_var[p]).objective,
                     0.5 * static_cast<double>(part.path(p).size()));
  }
  std::ostringstream lp;
  fm.model.write_lp(lp);
  EXPECT_NE(lp.str().find("Binary"), std::string::npos);
}

TEST(Model2, RejectsJunctionFreeGraph) {
  Graph g = cycle_graph(6);
  EXPECT_THROW((void)build_model2(g, junction_partition(g), Weights(6, Rational(0))),
               StructuralError);
}

TEST(Model2, MatchesOracleWithRandomRationalWeights) {
  std::mt19937_64 rng(101);
  BranchAndBoundBackend bb;
  for (const Graph& g : eligible_graphs(60, 1)) {
    auto part = junction_partition(g);
    Weights w = random_weights(g.vertex_count(), rng);
    auto oracle = min_weight_fort_neighborhood_oracle(g, w);
    ASSERT_TRUE(oracle.has_value());
    auto r = solve_min_weight_fn(bb, g, part, w);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_EQ(r.violated_weight, oracle->weight);
    EXPECT_EQ(r.found, oracle->weight < Rational(1));
    EXPECT_TRUE(brute_force_is_fort_neighborhood(g, r.neighborhood.vertices));
  }
}

TEST(Model2, EncodedFortNeighborhoodsAreFeasible) {
  // Every fort neighborhood, encoded through its certificate, satisfies the model.
  for (const Graph& g : eligible_graphs(15, 500)) {
    auto part = junction_partition(g);
    FnModel fm = build_model2(g, part, Weights(g.vertex_count(), Rational(0)));
    const auto family = enumerate_fort_neighborhoods(g);
    for (const auto& m : family) {
      auto cert = is_fort_neighborhood(g, part, m);
      ASSERT_TRUE(cert.has_value());
      std::vector<double> x(fm.model.variable_count(), 0.0);
      const auto& junctions = part.junctions();
      for (std::size_t i = 0; i < junctions.size(); ++i) {
        if (m.contains(junctions[i])) x[fm.m_var[i]] = 1.0;
        if (cert->interior_fort.contains(junctions[i])) x[fm.f_var[i]] = 1.0;
      }
      for (int p : cert->paths_in) x[fm.p_var[p]] = 1.0;
      EXPECT_TRUE(fm.model.is_feasible(x));
      EXPECT_EQ(decode_fort_neighborhood(fm, part, x), m);
    }
  }
}

TEST(Model3, PowerDominatingIncumbentIsInfeasible) {
  Graph g = fixtures::ieee(14);
  auto part = junction_partition(g);
  auto pds = brute_force_gamma_p(g).witness;
  BranchAndBoundBackend bb;
  auto w = indicator_weights(14, pds);
  auto r = solve_min_card_fn(bb, g, part, w, default_epsilon(w));
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
}

TEST(Model3, ZeroWeightsGiveMinimumCardinality) {
  BranchAndBoundBackend bb;
  for (const Graph& g : eligible_graphs(40, 900)) {
    auto part = junction_partition(g);
    Weights w(g.vertex_count(), Rational(0));
    auto r = solve_min_card_fn(bb, g, part, w, Rational(1, 2));
    ASSERT_TRUE(r.found);
    std::size_t smallest = g.vertex_count();
    for (const auto& m : enumerate_fort_neighborhoods(g)) smallest = std::min(smallest, m.size());
    EXPECT_EQ(r.cardinality, smallest);
  }
}

TEST(Model3, WeightCapAndModel2Feasibility) {
  std::mt19937_64 rng(7);
  BranchAndBoundBackend bb;
  for (const Graph& g : eligible_graphs(40, 1300)) {
    auto part = junction_partition(g);
    Weights w = random_weights(g.vertex_count(), rng);
    const Rational eps(1, 1000000);
    FnModel m3 = build_model3(g, part, w, eps);
    auto raw = bb.solve(m3.model, {});
    auto oracle = min_weight_fort_neighborhood_oracle(g, w);
    ASSERT_TRUE(oracle.has_value());
    if (oracle->weight > Rational(1) - eps) {
      EXPECT_EQ(raw.status, SolveStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(raw.status, SolveStatus::kOptimal);
    // Same variable layout, so a Model 3 point can be checked against Model 2.
    FnModel m2 = build_model2(g, part, w);
    EXPECT_TRUE(m2.model.is_feasible(raw.values));
    auto r = solve_min_card_fn(bb, g, part, w, eps);
    ASSERT_TRUE(r.found);
    EXPECT_LE(r.violated_weight, Rational(1) - eps);
    // No lighter-than-cap fort neighborhood is smaller.
    for (const auto& m : enumerate_fort_neighborhoods(g)) {
      if (total_weight(w, m) <= Rational(1) - eps) {
        EXPECT_GE(m.size(), r.cardinality);
      }
    }
  }
}

TEST(Model3, ConfinedToRegion) {
  // Two triangles with pendant paths, joined by an edge.
  Graph g = parse_edge_list(
      "a1 a2\na2 a3\na3 a1\na1 p1\np1 p2\n"
      "b1 b2\nb2 b3\nb3 b1\nb1 q1\nq1 q2\na3 b3\n");
  auto part = junction_partition(g);
  BranchAndBoundBackend bb;
  Weights w(g.vertex_count(), Rational(0));
  VertexSet region = fixtures::by_labels(g, {"b1", "b2", "b3", "q1", "q2"});
  auto r = solve_min_card_fn(bb, g, part, w, Rational(1, 2), region);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(r.neighborhood.vertices.is_subset_of(region));
}

TEST(Model3, RejectsNonPositiveEpsilon) {
  Graph g = fixtures::ieee(14);
  BranchAndBoundBackend bb;
  EXPECT_THROW((void)solve_min_card_fn(bb, g, junction_partition(g), Weights(14, Rational(0)),
                                       Rational(0)),
               std::invalid_argument);
}

TEST(DefaultEpsilon, IncumbentVersusFractional) {
  EXPECT_EQ(default_epsilon({Rational(0), Rational(1)}), Rational(1, 2));
  EXPECT_EQ(default_epsilon({Rational(1, 3)}), Rational(1, 1000000));
}

TEST(Model4, SizesFollowTheArcSet) {
  Graph g = fixtures::ieee(14);
  auto im = build_model4(g, false);
  std::size_t witness_rows = 0;
  for (auto [u, v] : im.arcs) witness_rows += g.degree(u) - 1;
  EXPECT_EQ(im.arcs.size(), 2 * g.edge_count());
  EXPECT_EQ(im.model.variable_count(), 2 * g.vertex_count() + 2 * g.edge_count());
  EXPECT_EQ(im.model.constraint_count(), g.vertex_count() + im.arcs.size() + witness_rows);
  auto restricted = build_model4(g, true);
  std::size_t low = 0;
  for (Vertex v = 0; v < 14; ++v) low += g.degree(v) <= 2 ? 1 : 0;
  EXPECT_EQ(restricted.model.constraint_count(), im.model.constraint_count() + low);
}

TEST(Model4, SingleEdge) {
  Graph g = parse_edge_list("a b");
  BranchAndBoundBackend bb;
  auto im = build_model4(g, false);
  auto r = bb.solve(im.model, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
  EXPECT_THROW((void)build_model4(g, true), StructuralError);
}

TEST(Model4, RestrictedAndUnrestrictedMatchBruteForce) {
  BranchAndBoundBackend bb;
  for (const Graph& g : eligible_graphs(40, 2000)) {
    if (g.vertex_count() > 10) continue;
    const std::size_t expect = brute_force_gamma_p(g).gamma;
    for (bool restricted : {false, true}) {
      auto im = build_model4(g, restricted);
      auto r = bb.solve(im.model, {});
      ASSERT_EQ(r.status, SolveStatus::kOptimal);
      VertexSet s = decode_infection_set(im, r.values);
      EXPECT_EQ(s.size(), expect) << "restricted=" << restricted;
      EXPECT_TRUE(is_power_dominating(g, s));
      if (restricted) {
        for (Vertex v : s) EXPECT_GE(g.degree(v), 3u);
      }
    }
  }
}

TEST(Model4, EncodedPowerDominatingSetIsFeasible) {
  for (const Graph& g : eligible_graphs(40, 3000)) {
    for (bool restricted : {false, true}) {
      auto im = build_model4(g, restricted);
      std::vector<Vertex> junctions;
      for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v) {
        if (g.degree(v) >= 3) junctions.push_back(v);
      }
      const VertexSet s = restricted ? VertexSet(junctions) : brute_force_gamma_p(g).witness;
      ASSERT_TRUE(is_power_dominating(g, s));
      auto x = encode_infection_set(g, im, s);
      ASSERT_EQ(x.size(), im.model.variable_count());
      EXPECT_TRUE(im.model.is_feasible(x));
      EXPECT_EQ(decode_infection_set(im, x), s);
    }
    auto im = build_model4(g, false);
    EXPECT_TRUE(encode_infection_set(g, im, VertexSet{}).empty());
  }
}

}  // namespace
