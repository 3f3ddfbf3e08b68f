// Copyright 2026 The fortcover Authors
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

// fortcover: minimum power dominating sets from the command line.
//
//   fortcover solve GRAPH [--method M] [--separation S] [--json] ...
//   fortcover check GRAPH LABEL...
//   fortcover partition GRAPH
//   fortcover bench [SUITE] [--parallel]
//   fortcover gen gk K
//   fortcover gen sat CNF [--weights FILE]
//
// Exit status: 0 success, 1 error, 2 time limit reached, 3 check rejected.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fortcover/fortcover.hpp"

namespace {

namespace fc = fortcover;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLimit = 2;
constexpr int kExitRejected = 3;

struct SolveFlags {
  std::string method = "setcover";
  std::string separation = "closure_then_model3";
  bool no_init = false;
  bool no_restrict = false;
  std::string epsilon;
  std::uint64_t seed = 0;
  double timeout_s = 0;
  bool json = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--method", f.method, "setcover | infection | infection_restricted | bruteforce")
      ->capture_default_str();
  cmd->add_option("--separation", f.separation, "closure | model2 | model3 | closure_then_model3")
      ->capture_default_str();
  cmd->add_flag("--no-init", f.no_init, "skip type I/II/III initial constraints");
  cmd->add_flag("--no-junction-restrict", f.no_restrict,
                "allow non-junction vertices in the set cover master");
  cmd->add_option("--epsilon", f.epsilon, "weight cap slack for Model 3, as p/q");
  cmd->add_option("--seed", f.seed, "nonzero shuffles master variable order");
  cmd->add_option("--timeout-s", f.timeout_s, "wall-clock limit in seconds (0 = none)");
  cmd->add_flag("--json", f.json, "print JSON");
}

fc::SolveOptions to_options(const SolveFlags& f) {
  fc::SolveOptions o;
  o.method = fc::parse_method(f.method);
  o.separation = fc::parse_separation(f.separation);
  o.init_special_fns = !f.no_init;
  o.restrict_to_junctions = !f.no_restrict;
  if (!f.epsilon.empty()) o.epsilon = fc::parse_rational(f.epsilon);
  o.seed = f.seed;
  if (f.timeout_s > 0) o.time_limit_s = f.timeout_s;
  return o;
}

fc::Graph read_graph(const std::string& path) {
  fc::Graph g = fc::load_graph(path);
  if (g.vertex_count() == 0) throw std::runtime_error("'" + path + "' contains no edges");
  return g;
}

int cmd_solve(const std::string& path, const SolveFlags& flags) {
  const fc::Graph g = read_graph(path);
  const fc::SolveReport r = fc::solve(g, to_options(flags));
  if (flags.json) {
    std::cout << fc::to_json(r, g).dump(2) << '\n';
  } else {
    std::cout << "graph        n=" << r.n << " m=" << r.m << " junctions=" << r.junction_count
              << '\n'
              << "method       " << fc::to_string(r.method);
    if (r.method == fc::Method::kSetCover) std::cout << " / " << fc::to_string(r.separation);
    std::cout << '\n'
              << "status       " << (r.optimal ? "optimal" : "time limit") << '\n'
              << "gamma_p      " << r.gamma_p;
    if (!r.optimal) std::cout << " (lower bound " << r.lower_bound << ")";
    std::cout << "\nwitness     ";
    for (const auto& l : fc::labels_of(g, r.witness)) std::cout << ' ' << l;
    std::cout << '\n';
    if (r.method == fc::Method::kSetCover) {
      std::cout << "init         " << r.initial_constraints << '\n'
                << "separations  " << r.separations << '\n'
                << "added        " << r.constraints_added << '\n';
    }
    std::cout << std::fixed << std::setprecision(1) << "time_ms      " << r.timings.total_ms
              << '\n';
  }
  return r.optimal ? kExitOk : kExitLimit;
}

int cmd_check(const std::string& path, const std::vector<std::string>& labels) {
  const fc::Graph g = read_graph(path);
  std::vector<fc::Vertex> picked;
  for (const auto& l : labels) {
    const fc::Vertex v = g.find_label(l);
    if (v == fc::kNoVertex) throw std::runtime_error("unknown vertex '" + l + "'");
    picked.push_back(v);
  }
  const fc::VertexSet s(std::move(picked));
  const fc::ColorClosure c = fc::power_domination_closure(g, s);
  std::cout << "dominated " << c.dominated.size() << " of " << g.vertex_count() << '\n';
  for (const auto& f : c.force_sequence) {
    std::cout << "force " << g.label(f.forcer) << " -> " << g.label(f.forced) << '\n';
  }
  if (c.is_complete(g)) {
    std::cout << "power dominating\n";
    return kExitOk;
  }
  std::cout << "not power dominating: " << g.vertex_count() - c.colored.size()
            << " vertices uncolored\n";
  return kExitRejected;
}

int cmd_partition(const std::string& path) {
  const fc::Graph g = read_graph(path);
  const fc::JunctionPartition part = fc::junction_partition(g);
  std::cout << "n " << g.vertex_count() << "\nm " << g.edge_count() << "\nJ "
            << part.junctions().size() << "\npaths " << part.path_count() << '\n';
  if (part.junctions().empty()) {
    std::cout << "junction-free\n";
    return kExitOk;
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& s : fc::detect_special_fns(g, part)) ++counts[static_cast<int>(s.type)];
  std::cout << "type_I " << counts[0] << "\ntype_II " << counts[1] << "\ntype_III " << counts[2]
            << "\ninit " << counts[0] + counts[1] + counts[2] << '\n';
  return kExitOk;
}

int cmd_bench(std::string suite, const SolveFlags& flags, bool parallel) {
  if (suite.empty()) suite = (fc::data_dir() / "ieee_suite.json").string();
  const auto cases = fc::load_suite(suite);
  const fc::SolveOptions opts = to_options(flags);
  std::vector<fc::BenchOutcome> results;
  if (parallel) {
    std::vector<std::future<fc::BenchOutcome>> jobs;
    for (const auto& bc : cases) {
      jobs.push_back(std::async(std::launch::async,
                                [&bc, &opts] { return fc::run_bench_case(bc, opts); }));
    }
    for (auto& j : jobs) results.push_back(j.get());
  } else {
    for (const auto& bc : cases) results.push_back(fc::run_bench_case(bc, opts));
  }

  std::size_t passed = 0;
  std::size_t ran = 0;
  for (const auto& o : results) {
    if (!o.skipped) ++ran;
    if (!o.skipped && o.passed()) ++passed;
  }
  if (flags.json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& o : results) out.push_back(fc::to_json(o));
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << std::left << std::setw(16) << "case" << std::right << std::setw(6) << "n"
              << std::setw(6) << "m" << std::setw(6) << "J" << std::setw(6) << "init"
              << std::setw(8) << "gamma" << std::setw(7) << "sep" << std::setw(12) << "ms"
              << "  result\n";
    for (const auto& o : results) {
      std::cout << std::left << std::setw(16) << o.name << std::right;
      if (o.skipped) {
        std::cout << "  skipped (" << o.skip_reason << ")\n";
        continue;
      }
      std::cout << std::setw(6) << o.n << std::setw(6) << o.m << std::setw(6) << o.junctions
                << std::setw(6) << o.init_constraints << std::setw(8) << o.report->gamma_p
                << std::setw(7) << o.report->separations << std::setw(12) << std::fixed
                << std::setprecision(1) << o.report->timings.total_ms << "  "
                << (o.passed() ? "ok" : "FAIL") << '\n';
      for (const auto& c : o.checks) {
        if (!c.ok()) {
          std::cout << "    " << c.column << ": expected " << c.expected << ", observed "
                    << c.observed << '\n';
        }
      }
      if (!o.report->optimal) std::cout << "    time limit reached\n";
    }
    std::cout << passed << "/" << ran << " cases match\n";
  }
  return passed == ran ? kExitOk : kExitError;
}

int cmd_gen_gk(int k) {
  fc::write_edge_list(std::cout, fc::generate_gk(k));
  return kExitOk;
}

int cmd_gen_sat(const std::string& cnf_path, std::string weights_path) {
  std::ifstream in(cnf_path);
  if (!in) throw std::runtime_error("cannot open '" + cnf_path + "'");
  const fc::CnfFormula f = fc::parse_dimacs(in);
  const fc::ReductionInstance inst = fc::build_sat_reduction(f);
  if (weights_path.empty()) {
    weights_path = std::filesystem::path(cnf_path).replace_extension(".weights").string();
  }
  std::ofstream w(weights_path);
  if (!w) throw std::runtime_error("cannot write '" + weights_path + "'");
  for (std::size_t v = 0; v < inst.graph.vertex_count(); ++v) {
    w << inst.graph.label(static_cast<fc::Vertex>(v)) << ' ' << fc::to_string(inst.weights[v])
      << '\n';
  }
  std::cout << "# target " << inst.graph.label(inst.target) << "\n# threshold "
            << fc::to_string(inst.threshold) << "\n# weights " << weights_path << '\n';
  fc::write_edge_list(std::cout, inst.graph);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimum power dominating sets"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "compute gamma_P and a witness");
  solve->add_option("graph", solve_path, "edge-list file")->required();
  add_solve_flags(solve, solve_flags);

  std::string check_path;
  std::vector<std::string> check_labels;
  auto* check = app.add_subcommand("check", "test whether vertices form a power dominating set");
  check->add_option("graph", check_path, "edge-list file")->required();
  check->add_option("vertices", check_labels, "vertex labels");

  std::string partition_path;
  auto* partition = app.add_subcommand("partition", "junctions, paths and special neighborhoods");
  partition->add_option("graph", partition_path, "edge-list file")->required();

  SolveFlags bench_flags;
  std::string suite_path;
  bool parallel = false;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite against expected values");
  bench->add_option("suite", suite_path, "suite JSON (default: ieee_suite.json in data dir)");
  bench->add_flag("--parallel", parallel, "run cases concurrently");
  add_solve_flags(bench, bench_flags);

  auto* gen = app.add_subcommand("gen", "write a generated graph to stdout");
  gen->require_subcommand(1);
  int gk_k = 0;
  auto* gen_gk = gen->add_subcommand("gk", "subdivided K_k with pendant leaves");
  gen_gk->add_option("k", gk_k, "k >= 3")->required();
  std::string cnf_path;
  std::string weights_path;
  auto* gen_sat = gen->add_subcommand("sat", "fort neighborhood instance from a 3-CNF formula");
  gen_sat->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  gen_sat->add_option("--weights", weights_path, "weight sidecar path (default: CNF.weights)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_path, solve_flags);
    if (*check) return cmd_check(check_path, check_labels);
    if (*partition) return cmd_partition(partition_path);
    if (*bench) return cmd_bench(suite_path, bench_flags, parallel);
    if (*gen_gk) return cmd_gen_gk(gk_k);
    if (*gen_sat) return cmd_gen_sat(cnf_path, weights_path);
  } catch (const std::exception& e) {
    std::cerr << "fortcover: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
