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

// Exhaustive reference implementations. Everything here enumerates subsets and
// is meant for graphs of at most a couple dozen vertices; the solvers are
// tested against these.

#ifndef FORTCOVER_ORACLE_HPP
#define FORTCOVER_ORACLE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fortcover/graph.hpp"
#include "fortcover/propagation.hpp"
#include "fortcover/rational.hpp"

namespace fortcover {

/// Raised when an exhaustive routine is asked to handle a graph above its cap.
class OracleCapExceeded : public std::runtime_error {
 public:
  OracleCapExceeded(std::size_t n, std::size_t cap)
      : std::runtime_error("oracle refuses n = " + std::to_string(n) +
                           " (cap " + std::to_string(cap) + ")") {}
};

namespace detail {

using Mask = std::uint64_t;

inline void check_cap(const Graph& g, std::size_t cap) {
  if (g.vertex_count() > cap || g.vertex_count() > 40) {
    throw OracleCapExceeded(g.vertex_count(), std::min<std::size_t>(cap, 40));
  }
}

inline std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> out(g.vertex_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) out[v] |= Mask{1} << u;
  }
  return out;
}

inline Mask closed_nbhd(const std::vector<Mask>& nbr, Mask s) {
  Mask out = s;
  for (Mask rest = s; rest; rest &= rest - 1) out |= nbr[std::countr_zero(rest)];
  return out;
}

inline bool mask_is_fort(const std::vector<Mask>& nbr, Mask f) {
  if (f == 0) return false;
  const std::size_t n = nbr.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (f >> v & 1) continue;
    if (std::popcount(nbr[v] & f) == 1) return false;
  }
  return true;
}

inline bool mask_power_dominating(const std::vector<Mask>& nbr, Mask s) {
  const std::size_t n = nbr.size();
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask colored = closed_nbhd(nbr, s);
  bool changed = true;
  while (changed && colored != all) {
    changed = false;
    for (Mask rest = colored; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      Mask open = nbr[v] & ~colored;
      if (open && (open & (open - 1)) == 0) {
        colored |= open;
        changed = true;
      }
    }
  }
  return colored == all;
}

inline VertexSet to_set(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return VertexSet(std::move(out));
}

inline Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << v;
  return m;
}

}  // namespace detail

struct BruteForceResult {
  std::size_t gamma = 0;
  VertexSet witness;
};

/// gamma_P(G) by trying all subsets in order of cardinality, then
/// lexicographically. The witness is the lexicographically least optimum.
[[nodiscard]] inline BruteForceResult brute_force_gamma_p(const Graph& g,
                                                          std::size_t cap = 20) {
  detail::check_cap(g, cap);
  const auto nbr = detail::neighbor_masks(g);
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  for (std::size_t k = 1; k <= n; ++k) {
    // Lexicographic k-combinations of 0..n-1.
    std::vector<int> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<int>(i);
    while (true) {
      detail::Mask s = 0;
      for (int v : pick) s |= detail::Mask{1} << v;
      if (detail::mask_power_dominating(nbr, s)) return {k, detail::to_set(s)};
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && pick[i] == static_cast<int>(n - k) + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {n, g.all_vertices()};  // unreachable: V is always power dominating
}

/// Every nonempty fort of G, as vertex sets in increasing mask order.
[[nodiscard]] inline std::vector<VertexSet> enumerate_forts(const Graph& g,
                                                           std::size_t cap = 16) {
  detail::check_cap(g, cap);
  const auto nbr = detail::neighbor_masks(g);
  const detail::Mask limit = detail::Mask{1} << g.vertex_count();
  std::vector<VertexSet> out;
  for (detail::Mask f = 1; f < limit; ++f) {
    if (detail::mask_is_fort(nbr, f)) out.push_back(detail::to_set(f));
  }
  return out;
}

/// The family of all fort neighborhoods N[F], deduplicated and sorted.
[[nodiscard]] inline std::vector<VertexSet> enumerate_fort_neighborhoods(
    const Graph& g, std::size_t cap = 16) {
  detail::check_cap(g, cap);
  const auto nbr = detail::neighbor_masks(g);
  const detail::Mask limit = detail::Mask{1} << g.vertex_count();
  std::set<detail::Mask> found;
  for (detail::Mask f = 1; f < limit; ++f) {
    if (detail::mask_is_fort(nbr, f)) found.insert(detail::closed_nbhd(nbr, f));
  }
  std::vector<VertexSet> out;
  for (detail::Mask m : found) out.push_back(detail::to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

/// Inclusion-minimal members of the fort neighborhood family.
[[nodiscard]] inline std::vector<VertexSet> enumerate_minimal_fort_neighborhoods(
    const Graph& g, std::size_t cap = 16) {
  auto family = enumerate_fort_neighborhoods(g, cap);
  std::vector<detail::Mask> masks;
  for (const auto& m : family) masks.push_back(detail::to_mask(m));
  // Ascending cardinality: a set can only contain sets that come before it.
  std::vector<std::size_t> order(masks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(masks[a]) < std::popcount(masks[b]);
  });
  std::vector<detail::Mask> minimal;
  for (std::size_t i : order) {
    bool dominated = false;
    for (detail::Mask m : minimal) {
      if ((m & masks[i]) == m) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(masks[i]);
  }
  std::vector<VertexSet> out;
  for (detail::Mask m : minimal) out.push_back(detail::to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

/// True when some fort F has N[F] = M (exhaustive over subsets of M).
[[nodiscard]] inline bool brute_force_is_fort_neighborhood(const Graph& g,
                                                           const VertexSet& m,
                                                           std::size_t cap = 20) {
  detail::check_cap(g, cap);
  if (m.empty()) return false;
  const auto nbr = detail::neighbor_masks(g);
  const detail::Mask target = detail::to_mask(m);
  // Enumerate submasks of M.
  for (detail::Mask f = target; f; f = (f - 1) & target) {
    if (detail::closed_nbhd(nbr, f) == target && detail::mask_is_fort(nbr, f)) return true;
  }
  return false;
}

struct WeightedFortNeighborhood {
  Rational weight;
  VertexSet vertices;
};

/// Exact minimum of the total weight over all fort neighborhoods, optionally
/// restricted to those containing `required`. Ties go to the smaller set, then
/// the lexicographically smaller one. Empty only if no fort neighborhood
/// contains `required` (or the graph is empty).
[[nodiscard]] inline std::optional<WeightedFortNeighborhood>
min_weight_fort_neighborhood_oracle(const Graph& g, const Weights& w,
                                    std::optional<Vertex> required = std::nullopt,
                                    std::size_t cap = 20) {
  detail::check_cap(g, cap);
  if (w.size() != g.vertex_count()) throw std::invalid_argument("weight vector size mismatch");
  const auto nbr = detail::neighbor_masks(g);
  const detail::Mask limit = detail::Mask{1} << g.vertex_count();
  std::set<detail::Mask> family;
  for (detail::Mask f = 1; f < limit; ++f) {
    if (detail::mask_is_fort(nbr, f)) family.insert(detail::closed_nbhd(nbr, f));
  }
  std::optional<WeightedFortNeighborhood> best;
  for (detail::Mask m : family) {
    if (required && !(m >> *required & 1)) continue;
    VertexSet set = detail::to_set(m);
    Rational weight = total_weight(w, set);
    bool better = !best || weight < best->weight ||
                  (weight == best->weight &&
                   (set.size() < best->vertices.size() ||
                    (set.size() == best->vertices.size() && set < best->vertices)));
    if (better) best = WeightedFortNeighborhood{weight, std::move(set)};
  }
  return best;
}

// ---------------------------------------------------------------------------
// 3-SAT reduction

/// A 3-CNF formula. Literals are signed, 1-based variable indices.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Reads DIMACS CNF ("p cnf <vars> <clauses>", clauses terminated by 0).
/// Every clause must have exactly three literals.
[[nodiscard]] inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> pending;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first == "c" || first[0] == 'c' || first == "%") continue;
    if (first == "p") {
      std::string kind;
      if (!(fields >> kind >> f.variable_count >> declared) || kind != "cnf" ||
          f.variable_count < 0) {
        throw ParseError(line_no, "malformed problem line");
      }
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before 'p cnf' header");
    std::istringstream literals(line);
    long lit = 0;
    std::string token;
    while (literals >> token) {
      char* end = nullptr;
      lit = std::strtol(token.c_str(), &end, 10);
      if (*end != '\0') throw ParseError(line_no, "bad literal '" + token + "'");
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(line_no, "clause has " + std::to_string(pending.size()) +
                                        " literals, expected 3");
        }
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (std::labs(lit) > f.variable_count) {
        throw ParseError(line_no, "literal " + token + " out of range");
      }
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(line_no, "unterminated clause");
  if (f.clauses.size() != declared) {
    throw ParseError(line_no, "header declares " + std::to_string(declared) +
                                  " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

[[nodiscard]] inline CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

/// Truth-table satisfiability.
[[nodiscard]] inline bool is_satisfiable(const CnfFormula& f) {
  const int k = f.variable_count;
  if (k > 24) throw std::invalid_argument("truth table limited to 24 variables");
  for (std::uint32_t assign = 0; assign < (1u << k); ++assign) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool value = assign >> (std::abs(lit) - 1) & 1;
        if ((lit > 0) == value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Weighted graph built from a 3-CNF formula: the formula is satisfiable iff
/// some fort neighborhood contains `target` and weighs less than `threshold`.
struct ReductionInstance {
  Graph graph;
  Weights weights;
  Vertex target = kNoVertex;  // u_m
  Rational threshold;         // k + 1
};

/// Vertex order: for each variable i, (v_i, not-v_i, hat-v_i); then clause
/// vertices c_1..c_l; then u_m, u_mbar, u_f1, u_f2. A literal repeated inside
/// one clause contributes a single edge.
[[nodiscard]] inline ReductionInstance build_sat_reduction(const CnfFormula& f) {
  const int k = f.variable_count;
  const auto l = static_cast<int>(f.clauses.size());
  std::vector<std::string> labels;
  for (int i = 1; i <= k; ++i) {
    labels.push_back("v" + std::to_string(i));
    labels.push_back("nv" + std::to_string(i));
    labels.push_back("hv" + std::to_string(i));
  }
  for (int j = 1; j <= l; ++j) labels.push_back("c" + std::to_string(j));
  const Vertex um = 3 * k + l;
  const Vertex umbar = um + 1;
  const Vertex uf1 = um + 2;
  const Vertex uf2 = um + 3;
  labels.insert(labels.end(), {"um", "umbar", "uf1", "uf2"});

  auto positive = [](int i) { return static_cast<Vertex>(3 * (i - 1)); };
  auto negative = [](int i) { return static_cast<Vertex>(3 * (i - 1) + 1); };
  auto hat = [](int i) { return static_cast<Vertex>(3 * (i - 1) + 2); };
  auto clause = [k](int j) { return static_cast<Vertex>(3 * k + j); };

  std::set<std::pair<Vertex, Vertex>> edge_set;
  auto add = [&](Vertex a, Vertex b) { edge_set.emplace(std::min(a, b), std::max(a, b)); };
  for (int j = 0; j < l; ++j) {
    for (int lit : f.clauses[j]) {
      if (lit == 0 || std::abs(lit) > k) throw std::invalid_argument("literal out of range");
      add(lit > 0 ? positive(lit) : negative(-lit), clause(j));
    }
  }
  for (int i = 1; i <= k; ++i) {
    add(hat(i), positive(i));
    add(hat(i), negative(i));
    add(hat(i), umbar);
    add(hat(i), uf2);
  }
  for (int j = 0; j < l; ++j) {
    add(clause(j), umbar);
    add(clause(j), uf2);
  }
  add(umbar, um);
  add(um, uf2);
  add(um, uf1);

  ReductionInstance out;
  const std::size_t n = labels.size();
  out.graph = Graph(n, {edge_set.begin(), edge_set.end()}, std::move(labels));
  out.weights.assign(n, Rational(0));
  for (int i = 1; i <= k; ++i) {
    out.weights[positive(i)] = Rational(1);
    out.weights[negative(i)] = Rational(1);
  }
  out.weights[umbar] = Rational(k + 1);
  out.target = um;
  out.threshold = Rational(k + 1);
  return out;
}

/// Decides the restricted instance by exhaustive search: is there a fort
/// neighborhood containing the target with weight below the threshold?
[[nodiscard]] inline bool restricted_min_m_brute_force(const ReductionInstance& inst,
                                                       std::size_t cap = 24) {
  auto best = min_weight_fort_neighborhood_oracle(inst.graph, inst.weights, inst.target, cap);
  return best && best->weight < inst.threshold;
}

}  // namespace fortcover

#endif  // FORTCOVER_ORACLE_HPP
