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

#ifndef FORTCOVER_MASTER_HPP
#define FORTCOVER_MASTER_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fortcover/graph.hpp"
#include "fortcover/junction.hpp"
#include "fortcover/milp/backend.hpp"
#include "fortcover/milp/branch_and_bound.hpp"
#include "fortcover/oracle.hpp"
#include "fortcover/propagation.hpp"
#include "fortcover/rational.hpp"
#include "fortcover/separation.hpp"

namespace fortcover {

enum class Method { kSetCover, kInfection, kInfectionRestricted, kBruteForce };
enum class Separation { kClosure, kModel2, kModel3, kClosureThenModel3 };

[[nodiscard]] inline std::string to_string(Method m) {
  switch (m) {
    case Method::kSetCover: return "setcover";
    case Method::kInfection: return "infection";
    case Method::kInfectionRestricted: return "infection_restricted";
    case Method::kBruteForce: return "bruteforce";
  }
  return "?";
}

[[nodiscard]] inline std::string to_string(Separation s) {
  switch (s) {
    case Separation::kClosure: return "closure";
    case Separation::kModel2: return "model2";
    case Separation::kModel3: return "model3";
    case Separation::kClosureThenModel3: return "closure_then_model3";
  }
  return "?";
}

[[nodiscard]] inline Method parse_method(const std::string& s) {
  for (Method m : {Method::kSetCover, Method::kInfection, Method::kInfectionRestricted,
                   Method::kBruteForce}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

[[nodiscard]] inline Separation parse_separation(const std::string& s) {
  for (Separation x : {Separation::kClosure, Separation::kModel2, Separation::kModel3,
                       Separation::kClosureThenModel3}) {
    if (to_string(x) == s) return x;
  }
  throw std::invalid_argument("unknown separation '" + s + "'");
}

struct SolveOptions {
  Method method = Method::kSetCover;
  Separation separation = Separation::kClosureThenModel3;
  bool init_special_fns = true;
  bool restrict_to_junctions = true;
  // Separate against LP relaxations of the master before the integer rounds.
  bool fractional_rounds = false;
  // Weight cap slack for Model 3; default_epsilon() when unset.
  std::optional<Rational> epsilon;
  double time_limit_s = milp::kInfinity;
  // Nonzero seeds permute master variable order, which changes which optimum
  // is reported.
  std::uint64_t seed = 0;
  std::size_t bruteforce_cap = 20;
};

struct PhaseTimings {
  double init_ms = 0;
  double master_ms = 0;
  double separation_ms = 0;
  double total_ms = 0;
};

struct SolveReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t junction_count = 0;
  Method method = Method::kSetCover;
  Separation separation = Separation::kClosureThenModel3;
  bool optimal = false;
  std::size_t gamma_p = 0;
  // Largest value proven not to exceed gamma_P; equals gamma_p when optimal.
  std::size_t lower_bound = 0;
  VertexSet witness;
  std::size_t separations = 0;
  std::size_t initial_constraints = 0;
  std::size_t constraints_added = 0;
  std::size_t master_iterations = 0;
  std::size_t components = 0;
  // Master optimum per round, concatenated over components.
  std::vector<double> master_objectives;
  PhaseTimings timings;
  std::vector<Force> certificate;
};

enum class SpecialType { kI, kII, kIII };

struct SpecialFortNeighborhood {
  SpecialType type;
  FortNeighborhood neighborhood;
  // The junctions of the neighborhood: {v} for types I and II, {v, u} for III.
  VertexSet junctions;
};

/// Type I: junction v with two paths P1, P2, N(P1) = N(P2) = {v}.
/// Type II: junction v with a path P, N(P) = {v}, |N(v) ∩ P| = 2.
/// Type III: junctions v, u with two paths whose neighborhoods are {v, u}.
/// Paths are scanned in index order; each junction gets at most one type I or
/// II neighborhood and each junction pair at most one of type III, the first
/// one found.
[[nodiscard]] inline std::vector<SpecialFortNeighborhood> detect_special_fns(
    const Graph& g, const JunctionPartition& part) {
  std::vector<SpecialFortNeighborhood> out;
  std::vector<char> single_done(g.vertex_count(), 0);
  std::vector<int> pending_single(g.vertex_count(), -1);
  std::set<std::pair<Vertex, Vertex>> pair_done;
  std::map<std::pair<Vertex, Vertex>, int> pending_pair;

  auto emit = [&](SpecialType type, VertexSet junctions, const std::vector<int>& paths) {
    VertexSet m = junctions;
    for (int p : paths) m = set_union(m, part.path(static_cast<std::size_t>(p)).members);
    auto certificate = is_fort_neighborhood(g, part, m);
    if (!certificate) throw std::logic_error("special fort neighborhood failed verification");
    out.push_back({type, std::move(*certificate), std::move(junctions)});
  };

  for (std::size_t pi = 0; pi < part.path_count(); ++pi) {
    const JunctionPath& path = part.path(pi);
    const int p = static_cast<int>(pi);
    if (path.neighborhood.size() == 1) {
      const Vertex v = path.neighborhood[0];
      if (single_done[v]) continue;
      std::size_t touching = 0;
      for (Vertex u : g.neighbors(v)) touching += path.members.contains(u) ? 1 : 0;
      if (touching == 2) {
        single_done[v] = 1;
        emit(SpecialType::kII, VertexSet{v}, {p});
      } else if (pending_single[v] >= 0) {
        single_done[v] = 1;
        emit(SpecialType::kI, VertexSet{v}, {pending_single[v], p});
      } else {
        pending_single[v] = p;
      }
    } else if (path.neighborhood.size() == 2) {
      const std::pair key{path.neighborhood[0], path.neighborhood[1]};
      if (pair_done.contains(key)) continue;
      auto it = pending_pair.find(key);
      if (it != pending_pair.end()) {
        pair_done.insert(key);
        emit(SpecialType::kIII, VertexSet{key.first, key.second}, {it->second, p});
      } else {
        pending_pair.emplace(key, p);
      }
    }
  }
  return out;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Deadline {
  Clock::time_point at = Clock::time_point::max();

  static Deadline after(double seconds) {
    Deadline d;
    if (std::isfinite(seconds)) {
      d.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds));
    }
    return d;
  }
  [[nodiscard]] bool passed() const { return Clock::now() > at; }
  [[nodiscard]] milp::SolveLimits limits() const {
    milp::SolveLimits l;
    if (at != Clock::time_point::max()) {
      l.time_limit_s = std::max(0.0, std::chrono::duration<double>(at - Clock::now()).count());
    }
    return l;
  }
};

struct ComponentOutcome {
  VertexSet witness;  // local indices
  bool optimal = true;
  std::size_t lower_bound = 0;
  std::size_t separations = 0;
  std::size_t initial_constraints = 0;
  std::size_t constraints_added = 0;
  std::size_t master_iterations = 0;
  std::vector<double> master_objectives;
  PhaseTimings timings;
};

// Adds vertices outside the closure, lowest index first, until S power
// dominates. Used to turn a partial answer into a valid upper bound.
inline VertexSet complete_greedily(const Graph& g, VertexSet s) {
  while (true) {
    ColorClosure c = power_domination_closure(g, s);
    if (c.is_complete(g)) return s;
    for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v) {
      if (!c.colored.contains(v)) {
        s.insert(v);
        break;
      }
    }
  }
}

// Repeatedly adds the candidate whose addition colors the most vertices.
// Candidates must contain a power dominating set.
inline VertexSet greedy_power_dominating_set(const Graph& g, const std::vector<char>& candidate) {
  VertexSet s;
  std::size_t colored = 0;
  while (colored < g.vertex_count()) {
    Vertex pick = kNoVertex;
    std::size_t best = colored;
    for (Vertex v = 0; static_cast<std::size_t>(v) < g.vertex_count(); ++v) {
      if (!candidate[v] || s.contains(v)) continue;
      VertexSet t = s;
      t.insert(v);
      const std::size_t c = power_domination_closure(g, t).colored.size();
      if (pick == kNoVertex || c > best) {
        pick = v;
        best = c;
      }
    }
    if (pick == kNoVertex) throw std::logic_error("candidates do not power dominate");
    s.insert(pick);
    colored = best;
  }
  return s;
}

// Row generation on one connected component with a junction.
//
// Each round solves the master to integer optimality and, if the incumbent S
// is not power dominating, adds cover constraints for fort neighborhoods
// disjoint from S. Every such constraint cuts off S, and there are finitely
// many fort neighborhoods, so the loop ends; it ends only at an S meeting
// every fort neighborhood, which is power dominating and, since the master
// relaxes the full cover model, of minimum size.
class SetCoverSolver {
 public:
  SetCoverSolver(const Graph& g, const SolveOptions& opts, milp::SolverBackend& backend,
                 const Deadline& deadline)
      : g_(g), part_(junction_partition(g)), opts_(opts), backend_(backend), deadline_(deadline) {
    const std::size_t n = g.vertex_count();
    candidate_.assign(n, opts.restrict_to_junctions ? 0 : 1);
    if (opts.restrict_to_junctions) {
      for (Vertex v : part_.junctions()) candidate_[v] = 1;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (candidate_[v]) order_.push_back(static_cast<Vertex>(v));
    }
    if (opts.seed != 0) {
      std::mt19937_64 rng(opts.seed);
      std::shuffle(order_.begin(), order_.end(), rng);
    }
  }

  ComponentOutcome run() {
    ComponentOutcome out;
    auto t0 = Clock::now();
    if (opts_.init_special_fns) {
      for (const auto& special : detect_special_fns(g_, part_)) {
        if (add_cover(special.neighborhood.vertices)) ++out.initial_constraints;
      }
    }
    out.timings.init_ms = ms_since(t0);

    if (opts_.fractional_rounds) fractional_phase(out);

    while (true) {
      if (deadline_.passed()) return give_up(out, {});
      auto tm = Clock::now();
      milp::MilpResult r = backend_.solve(master_model(false), deadline_.limits());
      out.timings.master_ms += ms_since(tm);
      ++out.master_iterations;
      if (r.status == milp::SolveStatus::kInfeasible) {
        throw std::logic_error("set cover master became infeasible");
      }
      if (r.status != milp::SolveStatus::kOptimal) {
        out.lower_bound = std::max(out.lower_bound, bound_of(r));
        return give_up(out, r.has_solution ? decode(r.values) : VertexSet{});
      }
      const double objective = r.objective;
      out.master_objectives.push_back(objective);
      out.lower_bound = static_cast<std::size_t>(std::llround(objective));
      VertexSet s = decode(r.values);

      auto ts = Clock::now();
      const std::vector<VertexSet> cuts = separate(s);
      out.timings.separation_ms += ms_since(ts);
      if (cuts.empty()) {
        out.witness = std::move(s);
        return out;
      }
      ++out.separations;
      for (const VertexSet& m : cuts) {
        if (m.intersects(s)) throw std::logic_error("separated constraint is not violated");
        if (add_cover(m)) ++out.constraints_added;
      }
    }
  }

 private:
  // Projects M to the candidate variables and stores it; false if already held.
  bool add_cover(const VertexSet& m) {
    std::vector<Vertex> support;
    for (Vertex v : m) {
      if (candidate_[v]) support.push_back(v);
    }
    if (support.empty()) throw std::logic_error("fort neighborhood avoids every candidate");
    return covers_.insert(VertexSet(std::move(support))).second;
  }

  milp::LinearModel master_model(bool relaxed) const {
    milp::LinearModel lm;
    std::vector<int> var(g_.vertex_count(), -1);
    for (Vertex v : order_) {
      var[v] = relaxed ? lm.add_variable("s_" + g_.label(v), milp::VarKind::kContinuous, 0, 1, 1)
                       : lm.add_binary("s_" + g_.label(v), 1.0);
    }
    for (const VertexSet& c : covers_) {
      std::vector<milp::Term> terms;
      for (Vertex v : c) terms.push_back({var[v], 1.0});
      lm.add_constraint(std::move(terms), milp::Relation::kGreaterEqual, 1.0);
    }
    return lm;
  }

  VertexSet decode(const std::vector<double>& values) const {
    std::vector<Vertex> s;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (values[i] > 0.5) s.push_back(order_[i]);
    }
    return VertexSet(std::move(s));
  }

  static std::size_t bound_of(const milp::MilpResult& r) {
    if (!std::isfinite(r.best_bound)) return 0;
    return static_cast<std::size_t>(std::max(0.0, std::ceil(r.best_bound - 1e-6)));
  }

  ComponentOutcome& give_up(ComponentOutcome& out, VertexSet s) {
    out.optimal = false;
    out.witness = complete_greedily(g_, std::move(s));
    return out;
  }

  // Each component of G[N[V \ cl(S)]] is itself a fort neighborhood.
  std::vector<VertexSet> closure_cuts(const VertexSet& s) const {
    std::vector<VertexSet> out;
    auto whole = complement_fort_separation(g_, part_, s);
    if (!whole) return out;
    for (VertexSet& comp : induced_components(g_, whole->vertices)) {
      if (!is_fort_neighborhood(g_, part_, comp)) {
        throw std::logic_error("component of a fort neighborhood failed verification");
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

  Rational epsilon_for(const Weights& w) const {
    return opts_.epsilon ? *opts_.epsilon : default_epsilon(w);
  }

  std::vector<VertexSet> separate(const VertexSet& s) {
    const Weights w = indicator_weights(g_.vertex_count(), s);
    switch (opts_.separation) {
      case Separation::kClosure:
        return closure_cuts(s);
      case Separation::kModel2: {
        if (is_power_dominating(g_, s)) return {};
        auto r = solve_min_weight_fn(backend_, g_, part_, w, deadline_.limits());
        if (r.status == milp::SolveStatus::kLimit) return closure_cuts(s);
        if (!r.found) throw std::logic_error("no violated fort neighborhood for a non-dominating set");
        return {r.neighborhood.vertices};
      }
      case Separation::kModel3: {
        if (is_power_dominating(g_, s)) return {};
        auto r = solve_min_card_fn(backend_, g_, part_, w, epsilon_for(w), {}, deadline_.limits());
        if (r.status == milp::SolveStatus::kLimit) return closure_cuts(s);
        if (!r.found) throw std::logic_error("no violated fort neighborhood for a non-dominating set");
        return {r.neighborhood.vertices};
      }
      case Separation::kClosureThenModel3: {
        std::vector<VertexSet> out;
        for (VertexSet& comp : closure_cuts(s)) {
          auto r = solve_min_card_fn(backend_, g_, part_, w, epsilon_for(w), comp,
                                     deadline_.limits());
          out.push_back(r.found ? r.neighborhood.vertices : std::move(comp));
        }
        return out;
      }
    }
    return {};
  }

  // LP rounds: separate the fractional master optimum with Model 3 until no
  // fort neighborhood of weight below 1 remains.
  void fractional_phase(ComponentOutcome& out) {
    for (int round = 0; round < 200 && !deadline_.passed(); ++round) {
      auto tm = Clock::now();
      milp::MilpResult lp = backend_.solve_relaxation(master_model(true));
      out.timings.master_ms += ms_since(tm);
      if (lp.status != milp::SolveStatus::kOptimal) return;
      Weights w(g_.vertex_count(), Rational(0));
      for (std::size_t i = 0; i < order_.size(); ++i) {
        // Round to 1e-6 steps so the rational weights stay small.
        const auto scaled = static_cast<std::int64_t>(std::llround(lp.values[i] * 1e6));
        w[order_[i]] = Rational(std::clamp<std::int64_t>(scaled, 0, 1000000), 1000000);
      }
      auto ts = Clock::now();
      auto r = solve_min_card_fn(backend_, g_, part_, w, Rational(1, 1000), {},
                                 deadline_.limits());
      out.timings.separation_ms += ms_since(ts);
      if (!r.found) return;
      ++out.separations;
      if (!add_cover(r.neighborhood.vertices)) return;
      ++out.constraints_added;
    }
  }

  const Graph& g_;
  JunctionPartition part_;
  const SolveOptions& opts_;
  milp::SolverBackend& backend_;
  Deadline deadline_;
  std::vector<char> candidate_;
  std::vector<Vertex> order_;
  std::set<VertexSet> covers_;
};

inline ComponentOutcome solve_infection_component(const Graph& h, bool restricted,
                                                  milp::SolverBackend& backend,
                                                  const Deadline& deadline) {
  ComponentOutcome out;
  auto t0 = Clock::now();
  InfectionModel im = build_model4(h, restricted);
  std::vector<char> candidate(h.vertex_count(), 1);
  if (restricted) {
    for (Vertex v = 0; static_cast<std::size_t>(v) < h.vertex_count(); ++v) {
      candidate[v] = h.degree(v) >= 3 ? 1 : 0;
    }
  }
  milp::SolveLimits limits = deadline.limits();
  limits.start = encode_infection_set(h, im, greedy_power_dominating_set(h, candidate));
  out.timings.init_ms = ms_since(t0);
  auto tm = Clock::now();
  milp::MilpResult r = backend.solve(im.model, limits);
  out.timings.master_ms = ms_since(tm);
  out.master_iterations = 1;
  if (r.status == milp::SolveStatus::kInfeasible) {
    throw std::logic_error("infection model reported infeasible");
  }
  VertexSet s = r.has_solution ? decode_infection_set(im, r.values) : VertexSet{};
  if (r.status != milp::SolveStatus::kOptimal) {
    out.optimal = false;
    if (std::isfinite(r.best_bound)) {
      out.lower_bound = static_cast<std::size_t>(std::max(0.0, std::ceil(r.best_bound - 1e-6)));
    }
    out.witness = complete_greedily(h, std::move(s));
    return out;
  }
  if (!is_power_dominating(h, s)) {
    throw std::logic_error("infection model optimum is not power dominating");
  }
  out.master_objectives.push_back(r.objective);
  out.lower_bound = s.size();
  out.witness = std::move(s);
  return out;
}

}  // namespace detail

/// Set cover with row generation, component by component. Components of
/// maximum degree at most 2 are paths or cycles and take one vertex each.
[[nodiscard]] inline SolveReport solve_with_backend(const Graph& g, const SolveOptions& opts,
                                                    milp::SolverBackend& backend) {
  auto start = detail::Clock::now();
  const auto deadline = detail::Deadline::after(opts.time_limit_s);
  SolveReport report;
  report.n = g.vertex_count();
  report.m = g.edge_count();
  report.junction_count = junction_partition(g).junctions().size();
  report.method = opts.method;
  report.separation = opts.separation;
  report.optimal = true;

  if (opts.method == Method::kBruteForce) {
    auto t0 = detail::Clock::now();
    BruteForceResult bf = brute_force_gamma_p(g, opts.bruteforce_cap);
    report.timings.master_ms = detail::ms_since(t0);
    report.witness = bf.witness;
    report.lower_bound = bf.gamma;
  } else {
    std::vector<Vertex> witness;
    for (const VertexSet& comp : components(g)) {
      ++report.components;
      std::vector<Vertex> original;
      Graph h = induced_subgraph(g, comp, &original);
      detail::ComponentOutcome outcome;
      if (opts.method == Method::kSetCover) {
        if (h.max_degree() <= 2) {
          outcome.witness = VertexSet{0};
          outcome.lower_bound = 1;
        } else {
          detail::SetCoverSolver solver(h, opts, backend, deadline);
          outcome = solver.run();
        }
      } else {
        const bool restricted =
            opts.method == Method::kInfectionRestricted && h.max_degree() >= 3;
        outcome = detail::solve_infection_component(h, restricted, backend, deadline);
      }
      for (Vertex v : outcome.witness) witness.push_back(original[static_cast<std::size_t>(v)]);
      report.optimal = report.optimal && outcome.optimal;
      report.lower_bound += outcome.lower_bound;
      report.separations += outcome.separations;
      report.initial_constraints += outcome.initial_constraints;
      report.constraints_added += outcome.constraints_added;
      report.master_iterations += outcome.master_iterations;
      report.master_objectives.insert(report.master_objectives.end(),
                                      outcome.master_objectives.begin(),
                                      outcome.master_objectives.end());
      report.timings.init_ms += outcome.timings.init_ms;
      report.timings.master_ms += outcome.timings.master_ms;
      report.timings.separation_ms += outcome.timings.separation_ms;
    }
    report.witness = VertexSet(std::move(witness));
  }

  ColorClosure closure = power_domination_closure(g, report.witness);
  if (!closure.is_complete(g)) throw std::logic_error("witness is not power dominating");
  report.certificate = std::move(closure.force_sequence);
  report.gamma_p = report.witness.size();
  if (report.optimal) report.lower_bound = report.gamma_p;
  report.timings.total_ms = detail::ms_since(start);
  return report;
}

[[nodiscard]] inline SolveReport solve_set_cover(const Graph& g, SolveOptions opts,
                                                 milp::SolverBackend& backend) {
  opts.method = Method::kSetCover;
  return solve_with_backend(g, opts, backend);
}

/// Dispatch over methods with the bundled branch-and-bound backend.
[[nodiscard]] inline SolveReport solve(const Graph& g, const SolveOptions& opts = {}) {
  milp::BranchAndBoundBackend backend;
  return solve_with_backend(g, opts, backend);
}

[[nodiscard]] inline nlohmann::json to_json(const SolveReport& r, const Graph& g) {
  nlohmann::json certificate = nlohmann::json::array();
  for (const Force& f : r.certificate) certificate.push_back({g.label(f.forcer), g.label(f.forced)});
  nlohmann::json out = {
      {"graph", {{"n", r.n}, {"m", r.m}, {"junctions", r.junction_count}}},
      {"method", to_string(r.method)},
      {"status", r.optimal ? "optimal" : "limit"},
      {"gamma_p", r.gamma_p},
      {"lower_bound", r.lower_bound},
      {"witness", labels_of(g, r.witness)},
      {"initial_constraints", r.initial_constraints},
      {"separations", r.separations},
      {"constraints_added", r.constraints_added},
      {"master_iterations", r.master_iterations},
      {"timings_ms",
       {{"init", r.timings.init_ms},
        {"master", r.timings.master_ms},
        {"separation", r.timings.separation_ms},
        {"total", r.timings.total_ms}}},
      {"certificate", std::move(certificate)},
  };
  if (r.method == Method::kSetCover) out["separation"] = to_string(r.separation);
  return out;
}

}  // namespace fortcover

#endif  // FORTCOVER_MASTER_HPP
