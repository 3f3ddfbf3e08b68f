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

#ifndef FORTCOVER_SEPARATION_HPP
#define FORTCOVER_SEPARATION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fortcover/graph.hpp"
#include "fortcover/junction.hpp"
#include "fortcover/milp/backend.hpp"
#include "fortcover/milp/linear_model.hpp"
#include "fortcover/propagation.hpp"
#include "fortcover/rational.hpp"

namespace fortcover {

/// Variable indices of a fort neighborhood model. m_var and f_var are indexed
/// by position in partition.junctions(), p_var by path index.
struct FnModel {
  milp::LinearModel model;
  std::vector<int> m_var;
  std::vector<int> f_var;
  std::vector<int> p_var;
};

struct SeparationResult {
  bool found = false;
  milp::SolveStatus status = milp::SolveStatus::kInfeasible;
  FortNeighborhood neighborhood;
  Rational violated_weight{0};
  std::size_t cardinality = 0;
};

namespace detail {

inline Rational path_weight(const JunctionPath& p, const Weights& w) {
  return total_weight(w, p.members);
}

// Constraints shared by the minimum weight and minimum cardinality models.
inline FnModel fn_constraints(const Graph& g, const JunctionPartition& part) {
  if (part.junctions().empty()) {
    throw StructuralError("fort neighborhood model needs at least one junction");
  }
  using milp::Relation;
  using milp::Term;
  FnModel out;
  auto& lm = out.model;
  const auto& junctions = part.junctions();
  for (Vertex v : junctions) {
    const std::string l = g.label(v);
    out.m_var.push_back(lm.add_binary("M_" + l));
    out.f_var.push_back(lm.add_binary("F_" + l));
  }
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    out.p_var.push_back(lm.add_binary("FP_" + std::to_string(p)));
  }

  std::vector<Term> nonempty;
  for (int var : out.m_var) nonempty.push_back({var, 1.0});
  for (int var : out.p_var) nonempty.push_back({var, 1.0});
  lm.add_constraint(std::move(nonempty), Relation::kGreaterEqual, 1.0, "nonempty");

  for (std::size_t i = 0; i < junctions.size(); ++i) {
    const Vertex v = junctions[i];
    const int fv = out.f_var[i];
    lm.add_constraint({{fv, 1.0}, {out.m_var[i], -1.0}}, Relation::kLessEqual, 0.0);
    for (Vertex u : g.neighbors(v)) {
      const int ju = part.junction_index(u);
      if (ju >= 0) {
        lm.add_constraint({{fv, 1.0}, {out.m_var[ju], -1.0}}, Relation::kLessEqual, 0.0);
      }
    }
  }

  for (std::size_t p = 0; p < part.path_count(); ++p) {
    for (Vertex v : part.path(p).neighborhood) {
      const int jv = part.junction_index(v);
      lm.add_constraint({{out.f_var[jv], 1.0}, {out.p_var[p], -1.0}}, Relation::kLessEqual, 0.0);
      lm.add_constraint({{out.p_var[p], 1.0}, {out.m_var[jv], -1.0}}, Relation::kLessEqual, 0.0);
    }
  }

  for (std::size_t i = 0; i < junctions.size(); ++i) {
    const Vertex v = junctions[i];
    std::vector<Term> terms{{out.m_var[i], 2.0}, {out.f_var[i], -2.0}};
    std::vector<int> hits(part.path_count(), 0);
    for (Vertex u : g.neighbors(v)) {
      const int ju = part.junction_index(u);
      if (ju >= 0) {
        terms.push_back({out.f_var[ju], -1.0});
      } else {
        ++hits[part.path_of(u)];
      }
    }
    for (std::size_t p = 0; p < hits.size(); ++p) {
      if (hits[p] > 0) terms.push_back({out.p_var[p], -static_cast<double>(hits[p])});
    }
    lm.add_constraint(std::move(terms), Relation::kLessEqual, 0.0, "support_" + g.label(v));
  }
  return out;
}

inline std::vector<milp::Term> weight_terms(const FnModel& fm, const JunctionPartition& part,
                                            const Weights& w) {
  std::vector<milp::Term> terms;
  const auto& junctions = part.junctions();
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    const Rational wv = w[static_cast<std::size_t>(junctions[i])];
    if (wv != Rational(0)) terms.push_back({fm.m_var[i], to_double(wv)});
  }
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    const Rational wp = path_weight(part.path(p), w);
    if (wp != Rational(0)) terms.push_back({fm.p_var[p], to_double(wp)});
  }
  return terms;
}

// Forbid every junction and path not inside `region`.
inline void confine(FnModel& fm, const JunctionPartition& part, const VertexSet& region) {
  const auto& junctions = part.junctions();
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    if (!region.contains(junctions[i])) {
      fm.model.set_bounds(fm.m_var[i], 0.0, 0.0);
      fm.model.set_bounds(fm.f_var[i], 0.0, 0.0);
    }
  }
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    if (!part.path(p).members.is_subset_of(region)) fm.model.set_bounds(fm.p_var[p], 0.0, 0.0);
  }
}

}  // namespace detail

/// Minimum weight fort neighborhood model: minimize the weight of M over the
/// junction/path encoding of fort neighborhoods.
[[nodiscard]] inline FnModel build_model2(const Graph& g, const JunctionPartition& part,
                                          const Weights& w) {
  FnModel fm = detail::fn_constraints(g, part);
  for (const auto& t : detail::weight_terms(fm, part, w)) {
    fm.model.set_objective_coefficient(t.var, t.coef);
  }
  return fm;
}

/// Minimum cardinality fort neighborhood of weight at most 1 - epsilon.
[[nodiscard]] inline FnModel build_model3(const Graph& g, const JunctionPartition& part,
                                          const Weights& w, const Rational& epsilon) {
  FnModel fm = detail::fn_constraints(g, part);
  for (int var : fm.m_var) fm.model.set_objective_coefficient(var, 1.0);
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    fm.model.set_objective_coefficient(fm.p_var[p], static_cast<double>(part.path(p).size()));
  }
  fm.model.add_constraint(detail::weight_terms(fm, part, w), milp::Relation::kLessEqual,
                          to_double(Rational(1) - epsilon), "weight_cap");
  return fm;
}

/// M = {v in J : M_v = 1} plus the paths with F_P = 1.
[[nodiscard]] inline VertexSet decode_fort_neighborhood(const FnModel& fm,
                                                        const JunctionPartition& part,
                                                        const std::vector<double>& values) {
  std::vector<Vertex> m;
  const auto& junctions = part.junctions();
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    if (values[static_cast<std::size_t>(fm.m_var[i])] > 0.5) m.push_back(junctions[i]);
  }
  for (std::size_t p = 0; p < part.path_count(); ++p) {
    if (values[static_cast<std::size_t>(fm.p_var[p])] > 0.5) {
      for (Vertex v : part.path(p).members) m.push_back(v);
    }
  }
  return VertexSet(std::move(m));
}

namespace detail {

inline SeparationResult finish(const Graph& g, const JunctionPartition& part, const FnModel& fm,
                               const milp::MilpResult& r, const Weights& w) {
  SeparationResult out;
  out.status = r.status;
  if (!r.has_solution || r.status != milp::SolveStatus::kOptimal) return out;
  VertexSet m = decode_fort_neighborhood(fm, part, r.values);
  auto certificate = is_fort_neighborhood(g, part, m);
  if (!certificate) {
    throw std::logic_error("backend assignment decodes to a set that is not a fort neighborhood");
  }
  out.neighborhood = std::move(*certificate);
  out.violated_weight = total_weight(w, out.neighborhood.vertices);
  out.cardinality = out.neighborhood.size();
  return out;
}

}  // namespace detail

/// Minimum weight fort neighborhood; found when its weight is below 1.
[[nodiscard]] inline SeparationResult solve_min_weight_fn(milp::SolverBackend& backend,
                                                          const Graph& g,
                                                          const JunctionPartition& part,
                                                          const Weights& w,
                                                          const milp::SolveLimits& limits = {}) {
  FnModel fm = build_model2(g, part, w);
  const milp::MilpResult r = backend.solve(fm.model, limits);
  SeparationResult out = detail::finish(g, part, fm, r, w);
  out.found = out.status == milp::SolveStatus::kOptimal && out.violated_weight < Rational(1);
  return out;
}

/// Minimum cardinality fort neighborhood with weight at most 1 - epsilon,
/// optionally confined to the vertices of `within`.
[[nodiscard]] inline SeparationResult solve_min_card_fn(
    milp::SolverBackend& backend, const Graph& g, const JunctionPartition& part,
    const Weights& w, const Rational& epsilon, const std::optional<VertexSet>& within = {},
    const milp::SolveLimits& limits = {}) {
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  FnModel fm = build_model3(g, part, w, epsilon);
  if (within) detail::confine(fm, part, *within);
  const milp::MilpResult r = backend.solve(fm.model, limits);
  SeparationResult out = detail::finish(g, part, fm, r, w);
  out.found = out.status == milp::SolveStatus::kOptimal;
  if (out.found && out.violated_weight > Rational(1) - epsilon) {
    throw std::logic_error("fort neighborhood exceeds the weight cap");
  }
  return out;
}

/// 1/2 for 0/1 weights (weight < 1 means weight 0), 10^-6 otherwise.
[[nodiscard]] inline Rational default_epsilon(const Weights& w) {
  for (const Rational& x : w) {
    if (x != Rational(0) && x != Rational(1)) return Rational(1, 1000000);
  }
  return Rational(1, 2);
}

/// Infection model over the bidirected arc set of g.
struct InfectionModel {
  milp::LinearModel model;
  std::vector<int> s_var;
  std::vector<int> x_var;
  // Arc (u, v) and its y variable.
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<int> y_var;
};

/// With `restricted`, also fixes s_v = 0 for every vertex of degree at most 2;
/// that needs g connected with a vertex of degree at least 3.
[[nodiscard]] inline InfectionModel build_model4(const Graph& g, bool restricted) {
  using milp::Relation;
  if (restricted && (!is_connected(g) || g.max_degree() < 3)) {
    throw StructuralError(
        "restricted infection model needs a connected graph with a vertex of degree >= 3");
  }
  const std::size_t n = g.vertex_count();
  const auto nd = static_cast<double>(n);
  InfectionModel im;
  auto& lm = im.model;
  for (std::size_t v = 0; v < n; ++v) {
    const int s = lm.add_binary("s_" + g.label(static_cast<Vertex>(v)), 1.0);
    lm.set_branch_priority(s, 2);
    im.s_var.push_back(s);
  }
  for (std::size_t v = 0; v < n; ++v) {
    im.x_var.push_back(
        lm.add_variable("x_" + g.label(static_cast<Vertex>(v)), milp::VarKind::kInteger, 0, nd));
  }
  std::vector<std::vector<int>> incoming(n);
  for (auto [a, b] : g.edges()) {
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      const int y = lm.add_binary("y_" + g.label(u) + "_" + g.label(v));
      lm.set_branch_priority(y, 1);
      im.arcs.emplace_back(u, v);
      im.y_var.push_back(y);
      incoming[static_cast<std::size_t>(v)].push_back(static_cast<int>(im.arcs.size()) - 1);
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::vector<milp::Term> terms{{im.s_var[v], 1.0}};
    for (int arc : incoming[v]) terms.push_back({im.y_var[static_cast<std::size_t>(arc)], 1.0});
    lm.add_constraint(std::move(terms), Relation::kEqual, 1.0,
                      "assign_" + g.label(static_cast<Vertex>(v)));
  }
  for (std::size_t k = 0; k < im.arcs.size(); ++k) {
    const auto [u, v] = im.arcs[k];
    const int xu = im.x_var[static_cast<std::size_t>(u)];
    const int xv = im.x_var[static_cast<std::size_t>(v)];
    const int y = im.y_var[k];
    lm.add_constraint({{xu, 1.0}, {xv, -1.0}, {y, nd + 1.0}}, Relation::kLessEqual, nd);
    for (Vertex w : g.neighbors(u)) {
      if (w == v) continue;
      const int xw = im.x_var[static_cast<std::size_t>(w)];
      lm.add_constraint({{xw, 1.0},
                         {xv, -1.0},
                         {y, nd + 1.0},
                         {im.s_var[static_cast<std::size_t>(u)], -(nd + 1.0)}},
                        Relation::kLessEqual, nd);
    }
  }
  if (restricted) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.degree(static_cast<Vertex>(v)) <= 2) {
        lm.add_constraint({{im.s_var[v], 1.0}}, Relation::kEqual, 0.0,
                          "low_degree_" + g.label(static_cast<Vertex>(v)));
      }
    }
  }
  return im;
}

/// The vertices with s_v = 1.
[[nodiscard]] inline VertexSet decode_infection_set(const InfectionModel& im,
                                                    const std::vector<double>& values) {
  std::vector<Vertex> s;
  for (std::size_t v = 0; v < im.s_var.size(); ++v) {
    if (values[static_cast<std::size_t>(im.s_var[v])] > 0.5) s.push_back(static_cast<Vertex>(v));
  }
  return VertexSet(std::move(s));
}

/// A feasible point of the infection model with s the indicator of `s`, read
/// off the power domination closure. Empty when `s` is not power dominating.
[[nodiscard]] inline std::vector<double> encode_infection_set(const Graph& g,
                                                              const InfectionModel& im,
                                                              const VertexSet& s) {
  const ColorClosure closure = power_domination_closure(g, s);
  if (!closure.is_complete(g)) return {};
  const std::size_t n = g.vertex_count();
  std::vector<double> x(im.model.variable_count(), 0.0);
  std::vector<Vertex> source(n, kNoVertex);
  std::vector<double> time(n, 0.0);
  for (Vertex v : s) x[im.s_var[static_cast<std::size_t>(v)]] = 1.0;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (!s.contains(v) && source[v] == kNoVertex) {
        source[v] = u;
        time[v] = 1.0;
      }
    }
  }
  for (const Force& f : closure.force_sequence) {
    double latest = time[f.forcer];
    for (Vertex w : g.neighbors(f.forcer)) {
      if (w != f.forced) latest = std::max(latest, time[w]);
    }
    source[f.forced] = f.forcer;
    time[f.forced] = latest + 1.0;
  }
  for (std::size_t v = 0; v < n; ++v) x[im.x_var[v]] = time[v];
  for (std::size_t k = 0; k < im.arcs.size(); ++k) {
    if (source[im.arcs[k].second] == im.arcs[k].first) x[im.y_var[k]] = 1.0;
  }
  return x;
}

}  // namespace fortcover

#endif  // FORTCOVER_SEPARATION_HPP
