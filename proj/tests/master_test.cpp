#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "figures.hpp"
#include "fortcover/generators.hpp"
#include "fortcover/master.hpp"
#include "fortcover/oracle.hpp"

namespace {

using namespace fortcover;

// Special neighborhood count straight from the definitions: a junction earns
// one if it has two single-attachment paths or one path it touches twice; a
// junction pair earns one if two paths hang between exactly those two.
std::size_t count_special_by_definition(const Graph& g, const JunctionPartition& part) {
  std::map<Vertex, std::size_t> single;
  std::map<Vertex, bool> twice;
  std::map<std::pair<Vertex, Vertex>, std::size_t> pairs;
  for (const auto& p : part.paths()) {
    if (p.neighborhood.size() == 1) {
      const Vertex v = p.neighborhood[0];
      ++single[v];
      std::size_t touch = 0;
      for (Vertex u : g.neighbors(v)) touch += p.members.contains(u) ? 1 : 0;
      if (touch == 2) twice[v] = true;
    } else if (p.neighborhood.size() == 2) {
      ++pairs[{p.neighborhood[0], p.neighborhood[1]}];
    }
  }
  std::size_t count = 0;
  for (auto [v, k] : single) count += (k >= 2 || twice[v]) ? 1 : 0;
  for (auto [key, k] : pairs) count += k >= 2 ? 1 : 0;
  return count;
}

std::vector<Graph> small_corpus(int count, std::uint64_t seed0) {
  std::vector<Graph> out;
  for (std::uint64_t seed = seed0; static_cast<int>(out.size()) < count; ++seed) {
    const double p = seed % 3 == 0 ? 0.2 : (seed % 3 == 1 ? 0.35 : 0.5);
    out.push_back(random_connected_graph(4 + seed % 9, p, seed));
  }
  return out;
}

TEST(DetectSpecial, Ieee14HasNone) {
  Graph g = fixtures::ieee(14);
  EXPECT_TRUE(detect_special_fns(g, junction_partition(g)).empty());
}

TEST(DetectSpecial, Ieee300HasFourteen) {
  Graph g = fixtures::ieee(300);
  auto part = junction_partition(g);
  EXPECT_EQ(detect_special_fns(g, part).size(), 14u);
  EXPECT_EQ(count_special_by_definition(g, part), 14u);
}

TEST(DetectSpecial, TypeOneFromTwoPendantPaths) {
  Graph g = parse_edge_list("a b\na c\nb c\nb d\nc d\na x1\nx1 x2\na y1\n");
  auto specials = detect_special_fns(g, junction_partition(g));
  ASSERT_EQ(specials.size(), 1u);
  EXPECT_EQ(specials[0].type, SpecialType::kI);
  EXPECT_EQ(specials[0].neighborhood.vertices, fixtures::by_labels(g, {"a", "x1", "x2", "y1"}));
}

TEST(DetectSpecial, TypeTwoFromLoopPath) {
  Graph g = parse_edge_list("v p1\np1 p2\np2 p3\np3 v\nv w\nw x\nw y\nw z\nx y\nx z\ny z\n");
  auto specials = detect_special_fns(g, junction_partition(g));
  ASSERT_EQ(specials.size(), 1u);
  EXPECT_EQ(specials[0].type, SpecialType::kII);
  EXPECT_EQ(specials[0].junctions, fixtures::by_labels(g, {"v"}));
}

TEST(DetectSpecial, TypeThreeFromParallelPaths) {
  Graph g = parse_edge_list("u v\nu a\na v\nu b\nb v\n");
  auto specials = detect_special_fns(g, junction_partition(g));
  ASSERT_EQ(specials.size(), 1u);
  EXPECT_EQ(specials[0].type, SpecialType::kIII);
  EXPECT_EQ(specials[0].neighborhood.vertices, fixtures::by_labels(g, {"u", "v", "a", "b"}));
}

TEST(DetectSpecial, OnePerJunction) {
  Graph g = parse_edge_list("c a\na x\na y\na z\nz z2\nc d\nc e\nc f\nd e\nd f\ne f\n");
  auto specials = detect_special_fns(g, junction_partition(g));
  ASSERT_EQ(specials.size(), 1u);
}

TEST(DetectSpecial, CountsMatchDefinitionOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Graph g = random_connected_graph(6 + seed % 30, 0.08, seed);
    auto part = junction_partition(g);
    if (part.junctions().empty()) continue;
    auto specials = detect_special_fns(g, part);
    EXPECT_EQ(specials.size(), count_special_by_definition(g, part)) << "seed " << seed;
    for (const auto& s : specials) {
      if (g.vertex_count() <= 20) {
        EXPECT_TRUE(brute_force_is_fort_neighborhood(g, s.neighborhood.vertices));
      }
      EXPECT_TRUE(is_fort(g, s.neighborhood.interior_fort));
    }
  }
}

TEST(SolveSetCover, Ieee118) {
  SolveReport r = solve(fixtures::ieee(118));
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.gamma_p, 8u);
  EXPECT_EQ(r.junction_count, 55u);
  EXPECT_EQ(r.initial_constraints, 2u);
}

TEST(SolveSetCover, Ieee300) {
  SolveReport r = solve(fixtures::ieee(300));
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.gamma_p, 30u);
  EXPECT_EQ(r.initial_constraints, 14u);
}

TEST(SolveSetCover, DisjointCycleAndClique) {
  Graph g = disjoint_union(cycle_graph(5), complete_graph(4));
  SolveReport r = solve(g);
  EXPECT_EQ(r.gamma_p, 2u);
  EXPECT_EQ(r.components, 2u);
  EXPECT_TRUE(is_power_dominating(g, r.witness));
}

TEST(Solve, SingleVertex) {
  Graph g(1, {});
  for (Method m : {Method::kSetCover, Method::kInfection, Method::kInfectionRestricted,
                   Method::kBruteForce}) {
    SolveOptions opts;
    opts.method = m;
    SolveReport r = solve(g, opts);
    EXPECT_EQ(r.gamma_p, 1u) << to_string(m);
    EXPECT_EQ(r.witness, (VertexSet{0}));
  }
}

TEST(Solve, Ieee14AllMethods) {
  Graph g = fixtures::ieee(14);
  for (Method m : {Method::kSetCover, Method::kInfection, Method::kInfectionRestricted,
                   Method::kBruteForce}) {
    SolveOptions opts;
    opts.method = m;
    SolveReport r = solve(g, opts);
    EXPECT_TRUE(r.optimal);
    EXPECT_EQ(r.gamma_p, 2u) << to_string(m);
  }
}

TEST(Solve, Ieee30SetCoverAllSeparations) {
  Graph g = fixtures::ieee(30);
  for (Separation s : {Separation::kClosure, Separation::kModel2, Separation::kModel3,
                       Separation::kClosureThenModel3}) {
    SolveOptions opts;
    opts.separation = s;
    SolveReport r = solve(g, opts);
    EXPECT_EQ(r.gamma_p, 3u) << to_string(s);
  }
}

TEST(Solve, BruteForceHonorsCap) {
  SolveOptions opts;
  opts.method = Method::kBruteForce;
  EXPECT_THROW((void)solve(fixtures::ieee(30), opts), OracleCapExceeded);
}

TEST(Solve, TimeLimitGivesFlaggedValidReport) {
  Graph g = fixtures::ieee(57);
  SolveOptions opts;
  opts.method = Method::kInfection;
  opts.time_limit_s = 0.2;
  SolveReport r = solve(g, opts);
  EXPECT_FALSE(r.optimal);
  EXPECT_LE(r.lower_bound, 3u);
  EXPECT_GE(r.gamma_p, 3u);
  EXPECT_TRUE(is_power_dominating(g, r.witness));
}

TEST(Solve, MethodsAgreeWithBruteForce) {
  int restricted_runs = 0;
  for (const Graph& g : small_corpus(40, 1)) {
    const std::size_t expect = brute_force_gamma_p(g).gamma;
    std::vector<SolveOptions> variants;
    for (Separation s : {Separation::kClosure, Separation::kModel2, Separation::kModel3,
                         Separation::kClosureThenModel3}) {
      SolveOptions o;
      o.separation = s;
      variants.push_back(o);
    }
    SolveOptions unrestricted;
    unrestricted.restrict_to_junctions = false;
    unrestricted.init_special_fns = false;
    unrestricted.seed = 3;
    variants.push_back(unrestricted);
    SolveOptions fractional;
    fractional.fractional_rounds = true;
    variants.push_back(fractional);
    SolveOptions infection;
    infection.method = Method::kInfection;
    variants.push_back(infection);
    if (g.max_degree() >= 3) {
      SolveOptions r;
      r.method = Method::kInfectionRestricted;
      variants.push_back(r);
      ++restricted_runs;
    }
    for (const auto& o : variants) {
      SolveReport r = solve(g, o);
      EXPECT_TRUE(r.optimal);
      EXPECT_EQ(r.gamma_p, expect) << to_string(o.method) << " " << to_string(o.separation);
      if (r.method == Method::kSetCover && o.restrict_to_junctions && g.max_degree() >= 3) {
        for (Vertex v : r.witness) EXPECT_GE(g.degree(v), 3u);
      }
    }
  }
  EXPECT_GT(restricted_runs, 10);
}

TEST(Solve, MasterObjectiveNeverDecreases) {
  for (const Graph& g : small_corpus(30, 400)) {
    SolveOptions o;
    o.separation = Separation::kClosure;
    SolveReport r = solve(g, o);
    EXPECT_TRUE(std::is_sorted(r.master_objectives.begin(), r.master_objectives.end()));
  }
}

TEST(Solve, WitnessCertificateReplays) {
  for (int bus : {14, 30, 57}) {
    Graph g = fixtures::ieee(bus);
    SolveReport r = solve(g);
    ColorClosure c;
    c.colored = g.all_vertices();
    c.dominated = closed_neighborhood(g, r.witness);
    c.force_sequence = r.certificate;
    EXPECT_TRUE(verify_closure_certificate(g, r.witness, c));
  }
}

TEST(Solve, JsonReport) {
  Graph g = fixtures::ieee(14);
  auto j = to_json(solve(g), g);
  EXPECT_EQ(j["gamma_p"], 2);
  EXPECT_EQ(j["graph"]["n"], 14);
  EXPECT_EQ(j["graph"]["junctions"], 7);
  EXPECT_EQ(j["witness"].size(), 2u);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_TRUE(j.contains("timings_ms"));
  EXPECT_TRUE(j.contains("certificate"));
}

TEST(Options, ParseNames) {
  EXPECT_EQ(parse_method("infection_restricted"), Method::kInfectionRestricted);
  EXPECT_EQ(parse_separation("model2"), Separation::kModel2);
  EXPECT_THROW((void)parse_method("lp"), std::invalid_argument);
  EXPECT_THROW((void)parse_separation(""), std::invalid_argument);
}

}  // namespace
