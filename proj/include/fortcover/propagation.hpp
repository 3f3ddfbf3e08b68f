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

#ifndef FORTCOVER_PROPAGATION_HPP
#define FORTCOVER_PROPAGATION_HPP

#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "fortcover/graph.hpp"
#include "fortcover/junction.hpp"

namespace fortcover {

/// A forcing step: `forcer` colors `forced`, its only uncolored neighbor.
struct Force {
  Vertex forcer;
  Vertex forced;

  friend bool operator==(const Force&, const Force&) = default;
};

/// Result of running a color-change rule to its fixed point.
struct ColorClosure {
  VertexSet colored;
  VertexSet dominated;  // colored before any force (N[S], or S for zero forcing)
  std::vector<Force> force_sequence;

  [[nodiscard]] bool is_complete(const Graph& g) const {
    return colored.size() == g.vertex_count();
  }
};

namespace detail {

// Forces from the initial coloring until no colored vertex has exactly one
// uncolored neighbor. The lowest-index eligible forcer always acts first, so
// the certificate is deterministic; the closure itself is order independent.
inline ColorClosure propagate(const Graph& g, std::vector<char> colored) {
  const std::size_t n = g.vertex_count();
  ColorClosure out;
  out.dominated = VertexSet::from_flags(colored);

  std::vector<std::size_t> uncolored(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) uncolored[v] += colored[u] ? 0 : 1;
  }

  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (colored[v] && uncolored[v] == 1) ready.push(static_cast<Vertex>(v));
  }

  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    if (uncolored[v] != 1) continue;  // stale entry
    Vertex target = kNoVertex;
    for (Vertex u : g.neighbors(v)) {
      if (!colored[u]) {
        target = u;
        break;
      }
    }
    colored[target] = 1;
    out.force_sequence.push_back({v, target});
    for (Vertex u : g.neighbors(target)) {
      --uncolored[u];
      if (colored[u] && uncolored[u] == 1) ready.push(u);
    }
    if (uncolored[target] == 1) ready.push(target);
  }
  out.colored = VertexSet::from_flags(colored);
  return out;
}

}  // namespace detail

/// cl_P(S): color N[S], then propagate.
[[nodiscard]] inline ColorClosure power_domination_closure(const Graph& g,
                                                           const VertexSet& s) {
  return detail::propagate(g, closed_neighborhood(g, s).to_flags(g.vertex_count()));
}

[[nodiscard]] inline bool is_power_dominating(const Graph& g, const VertexSet& s) {
  return power_domination_closure(g, s).is_complete(g);
}

/// Zero forcing closure of S (propagation only).
[[nodiscard]] inline VertexSet zero_forcing_closure(const Graph& g, const VertexSet& s) {
  return detail::propagate(g, s.to_flags(g.vertex_count())).colored;
}

/// Replays a certificate from N[S] and checks every force obeys the rule and
/// that the replay ends exactly at `closure.colored`.
[[nodiscard]] inline bool verify_closure_certificate(const Graph& g, const VertexSet& s,
                                                     const ColorClosure& closure) {
  std::vector<char> colored = closed_neighborhood(g, s).to_flags(g.vertex_count());
  if (VertexSet::from_flags(colored) != closure.dominated) return false;
  for (const Force& f : closure.force_sequence) {
    if (f.forcer < 0 || f.forced < 0 ||
        static_cast<std::size_t>(f.forcer) >= g.vertex_count() ||
        static_cast<std::size_t>(f.forced) >= g.vertex_count()) {
      return false;
    }
    if (!colored[f.forcer] || colored[f.forced] || !g.adjacent(f.forcer, f.forced)) {
      return false;
    }
    for (Vertex u : g.neighbors(f.forcer)) {
      if (u != f.forced && !colored[u]) return false;
    }
    colored[f.forced] = 1;
  }
  return VertexSet::from_flags(colored) == closure.colored;
}

/// A nonempty F is a fort when every vertex outside F with a neighbor in F has
/// at least two neighbors in F.
[[nodiscard]] inline bool is_fort(const Graph& g, const VertexSet& f) {
  if (f.empty()) return false;
  std::vector<char> inside = f.to_flags(g.vertex_count());
  std::vector<int> hits(g.vertex_count(), 0);
  for (Vertex v : f) {
    for (Vertex u : g.neighbors(v)) {
      if (!inside[u]) ++hits[u];
    }
  }
  for (int h : hits) {
    if (h == 1) return false;
  }
  return true;
}

/// A vertex set M together with its decomposition into junctions and junction
/// paths and a fort F with N[F] = M.
struct FortNeighborhood {
  VertexSet vertices;
  VertexSet junctions_in;
  std::vector<int> paths_in;
  VertexSet boundary;  // junctions of M with a neighbor outside M
  VertexSet interior_fort;

  [[nodiscard]] std::size_t size() const { return vertices.size(); }
};

/// Decides whether M is the closed neighborhood of some fort, using only the
/// junction partition: M must be a union of junctions and whole junction paths,
/// every junction adjacent to a chosen path must be in M, and every boundary
/// junction needs two neighbors in M that are not boundary junctions.
/// Runs in time linear in the size of M's neighborhood.
[[nodiscard]] inline std::optional<FortNeighborhood> is_fort_neighborhood(
    const Graph& g, const JunctionPartition& partition, const VertexSet& m) {
  if (m.empty()) return std::nullopt;
  const std::size_t n = g.vertex_count();
  std::vector<char> inside = m.to_flags(n);

  FortNeighborhood out;
  out.vertices = m;
  std::vector<Vertex> junctions_in;
  std::vector<char> path_seen(partition.path_count(), 0);
  for (Vertex v : m) {
    if (partition.is_junction(v)) {
      junctions_in.push_back(v);
      continue;
    }
    const int p = partition.path_of(v);
    if (path_seen[p]) continue;
    path_seen[p] = 1;
    const JunctionPath& path = partition.path(p);
    for (Vertex u : path.vertices) {
      if (!inside[u]) return std::nullopt;  // M would cut through a path
    }
    for (Vertex u : path.neighborhood) {
      if (!inside[u]) return std::nullopt;
    }
    out.paths_in.push_back(p);
  }
  out.junctions_in = VertexSet(junctions_in);

  std::vector<char> boundary(n, 0);
  for (Vertex v : out.junctions_in) {
    for (Vertex u : g.neighbors(v)) {
      if (!inside[u]) {
        boundary[v] = 1;
        break;
      }
    }
  }
  for (Vertex v : out.junctions_in) {
    if (!boundary[v]) continue;
    int support = 0;
    for (Vertex u : g.neighbors(v)) support += (inside[u] && !boundary[u]) ? 1 : 0;
    if (support < 2) return std::nullopt;
  }
  out.boundary = VertexSet::from_flags(boundary);
  out.interior_fort = set_difference(m, out.boundary);
  return out;
}

/// When S is not power dominating, the uncolored set F = V \ cl_P(S) is a fort
/// avoiding N[S], so N[F] is a fort neighborhood disjoint from S.
[[nodiscard]] inline std::optional<FortNeighborhood> complement_fort_separation(
    const Graph& g, const JunctionPartition& partition, const VertexSet& s) {
  ColorClosure closure = power_domination_closure(g, s);
  if (closure.is_complete(g)) return std::nullopt;
  VertexSet uncolored = set_difference(g.all_vertices(), closure.colored);
  auto certificate =
      is_fort_neighborhood(g, partition, closed_neighborhood(g, uncolored));
  // The uncolored set is a fort, so the check above cannot fail.
  if (!certificate) {
    throw std::logic_error("closure complement failed fort neighborhood check");
  }
  return certificate;
}

[[nodiscard]] inline std::optional<FortNeighborhood> complement_fort_separation(
    const Graph& g, const VertexSet& s) {
  return complement_fort_separation(g, junction_partition(g), s);
}

}  // namespace fortcover

#endif  // FORTCOVER_PROPAGATION_HPP
