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

#ifndef FORTCOVER_BENCH_HPP
#define FORTCOVER_BENCH_HPP

#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fortcover/graph.hpp"
#include "fortcover/junction.hpp"
#include "fortcover/master.hpp"

namespace fortcover {

struct BenchExpected {
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> junctions;
  std::optional<std::size_t> init_constraints;
  std::optional<std::size_t> gamma_p;
};

struct BenchCase {
  std::string name;
  std::filesystem::path graph_path;
  BenchExpected expected;
  bool optional = false;
};

struct BenchCheck {
  std::string column;
  std::size_t expected;
  std::size_t observed;

  [[nodiscard]] bool ok() const { return expected == observed; }
};

struct BenchOutcome {
  std::string name;
  bool skipped = false;
  std::string skip_reason;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t junctions = 0;
  std::size_t init_constraints = 0;
  std::optional<SolveReport> report;
  std::vector<BenchCheck> checks;

  [[nodiscard]] bool passed() const {
    if (skipped) return true;
    if (report && !report->optimal) return false;
    for (const auto& c : checks) {
      if (!c.ok()) return false;
    }
    return true;
  }
};

/// Dataset root: FORTCOVER_DATA_DIR if set, else the directory configured at
/// build time.
[[nodiscard]] inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("FORTCOVER_DATA_DIR"); env && *env) return env;
#ifdef FORTCOVER_DEFAULT_DATA_DIR
  return FORTCOVER_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

[[nodiscard]] inline Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_edge_list(in);
}

/// Reads a suite file. Relative graph paths resolve against the suite's own
/// directory.
///
///   {"cases": [{"name": "ieee14", "graph": "ieee14.edges",
///               "expected": {"n": 14, "m": 20, "junctions": 7,
///                            "init_constraints": 0, "gamma_p": 2}}]}
[[nodiscard]] inline std::vector<BenchCase> load_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite '" + path.string() + "'");
  const nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<BenchCase> out;
  for (const auto& c : doc.at("cases")) {
    BenchCase bc;
    bc.name = c.at("name").get<std::string>();
    bc.graph_path = c.at("graph").get<std::string>();
    if (bc.graph_path.is_relative()) bc.graph_path = path.parent_path() / bc.graph_path;
    bc.optional = c.value("optional", false);
    if (c.contains("expected")) {
      const auto& e = c["expected"];
      auto get = [&](const char* key) -> std::optional<std::size_t> {
        if (!e.contains(key)) return std::nullopt;
        return e[key].get<std::size_t>();
      };
      bc.expected = {get("n"), get("m"), get("junctions"), get("init_constraints"),
                     get("gamma_p")};
    }
    out.push_back(std::move(bc));
  }
  return out;
}

/// Structural columns plus one solve. Optional cases whose graph file is
/// missing are skipped.
[[nodiscard]] inline BenchOutcome run_bench_case(const BenchCase& bc, const SolveOptions& opts) {
  BenchOutcome out;
  out.name = bc.name;
  if (bc.optional && !std::filesystem::exists(bc.graph_path)) {
    out.skipped = true;
    out.skip_reason = "dataset not present";
    return out;
  }
  const Graph g = load_graph(bc.graph_path);
  const JunctionPartition part = junction_partition(g);
  out.n = g.vertex_count();
  out.m = g.edge_count();
  out.junctions = part.junctions().size();
  out.init_constraints =
      part.junctions().empty() ? 0 : detect_special_fns(g, part).size();
  out.report = solve(g, opts);

  auto check = [&](const char* column, const std::optional<std::size_t>& want,
                   std::size_t got) {
    if (want) out.checks.push_back({column, *want, got});
  };
  check("n", bc.expected.n, out.n);
  check("m", bc.expected.m, out.m);
  check("J", bc.expected.junctions, out.junctions);
  check("init", bc.expected.init_constraints, out.init_constraints);
  check("gamma_p", bc.expected.gamma_p, out.report->gamma_p);
  return out;
}

[[nodiscard]] inline nlohmann::json to_json(const BenchOutcome& o) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : o.checks) {
    checks.push_back({{"column", c.column}, {"expected", c.expected}, {"observed", c.observed},
                      {"ok", c.ok()}});
  }
  nlohmann::json out = {{"name", o.name}, {"passed", o.passed()}, {"skipped", o.skipped}};
  if (o.skipped) {
    out["reason"] = o.skip_reason;
    return out;
  }
  out["n"] = o.n;
  out["m"] = o.m;
  out["junctions"] = o.junctions;
  out["init_constraints"] = o.init_constraints;
  out["checks"] = std::move(checks);
  if (o.report) {
    out["status"] = o.report->optimal ? "optimal" : "limit";
    out["gamma_p"] = o.report->gamma_p;
    out["separations"] = o.report->separations;
    out["total_ms"] = o.report->timings.total_ms;
  }
  return out;
}

}  // namespace fortcover

#endif  // FORTCOVER_BENCH_HPP
