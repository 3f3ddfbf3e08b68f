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

#ifndef FORTCOVER_JUNCTION_HPP
#define FORTCOVER_JUNCTION_HPP

#include <cstddef>
#include <vector>

#include "fortcover/graph.hpp"

namespace fortcover {

/// Vertex set of one component of G - J(G). Vertices are listed in walk order
/// v_1..v_p so consecutive entries are adjacent. A cyclic path is a whole
/// component of G that is a cycle; it has no neighborhood.
struct JunctionPath {
  std::vector<Vertex> vertices;
  VertexSet members;
  VertexSet neighborhood;
  bool cyclic = false;

  [[nodiscard]] std::size_t size() const { return vertices.size(); }
  [[nodiscard]] Vertex front() const { return vertices.front(); }
  [[nodiscard]] Vertex back() const { return vertices.back(); }
};

/// J(G) and the junction paths. Every vertex is either a junction or lies on
/// exactly one path.
class JunctionPartition {
 public:
  static constexpr int kJunction = -1;

  JunctionPartition() = default;

  [[nodiscard]] const VertexSet& junctions() const { return junctions_; }
  [[nodiscard]] const std::vector<JunctionPath>& paths() const { return paths_; }
  [[nodiscard]] const JunctionPath& path(std::size_t i) const { return paths_[i]; }
  [[nodiscard]] std::size_t path_count() const { return paths_.size(); }
  [[nodiscard]] std::size_t vertex_count() const { return vertex_class_.size(); }

  [[nodiscard]] bool is_junction(Vertex v) const {
    return vertex_class_[static_cast<std::size_t>(v)] == kJunction;
  }
  /// Path index of a non-junction vertex, kJunction for junctions.
  [[nodiscard]] int path_of(Vertex v) const {
    return vertex_class_[static_cast<std::size_t>(v)];
  }

  /// Position of v within junctions(), or -1.
  [[nodiscard]] int junction_index(Vertex v) const {
    return junction_index_[static_cast<std::size_t>(v)];
  }

  friend JunctionPartition junction_partition(const Graph& g);

 private:
  VertexSet junctions_;
  std::vector<JunctionPath> paths_;
  std::vector<int> vertex_class_;
  std::vector<int> junction_index_;
};

/// Computes J(G) = {v : deg(v) >= 3} and one JunctionPath per component of
/// G[V \ J(G)]. Paths are discovered in index order of their smallest vertex.
[[nodiscard]] inline JunctionPartition junction_partition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  JunctionPartition out;
  out.vertex_class_.assign(n, JunctionPartition::kJunction);
  out.junction_index_.assign(n, -1);

  std::vector<Vertex> junctions;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.degree(static_cast<Vertex>(v)) >= 3) {
      out.junction_index_[v] = static_cast<int>(junctions.size());
      junctions.push_back(static_cast<Vertex>(v));
    }
  }
  out.junctions_ = VertexSet(junctions);

  auto is_path_vertex = [&](Vertex v) { return g.degree(v) < 3; };
  std::vector<char> assigned(n, 0);

  for (std::size_t start = 0; start < n; ++start) {
    const auto s = static_cast<Vertex>(start);
    if (!is_path_vertex(s) || assigned[start]) continue;

    // Collect the component of G - J(G) containing s.
    std::vector<Vertex> comp;
    std::vector<Vertex> stack{s};
    assigned[start] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (is_path_vertex(u) && !assigned[u]) {
          assigned[u] = 1;
          stack.push_back(u);
        }
      }
    }

    auto inner_degree = [&](Vertex v) {
      std::size_t d = 0;
      for (Vertex u : g.neighbors(v)) d += is_path_vertex(u) ? 1 : 0;
      return d;
    };

    JunctionPath path;
    path.members = VertexSet(comp);

    // Walk from an end (inner degree <= 1); a cycle has no end.
    Vertex head = kNoVertex;
    for (Vertex v : path.members) {
      if (inner_degree(v) <= 1) {
        head = v;
        break;
      }
    }
    path.cyclic = head == kNoVertex;
    if (path.cyclic) head = path.members[0];

    Vertex prev = kNoVertex;
    Vertex cur = head;
    while (cur != kNoVertex) {
      path.vertices.push_back(cur);
      Vertex next = kNoVertex;
      for (Vertex u : g.neighbors(cur)) {
        if (is_path_vertex(u) && u != prev && u != head) {
          next = u;
          break;
        }
      }
      prev = cur;
      cur = next;
    }

    // Only the two ends can reach outside the path.
    std::vector<Vertex> nbhd;
    for (Vertex end : {path.front(), path.back()}) {
      for (Vertex u : g.neighbors(end)) {
        if (!path.members.contains(u)) nbhd.push_back(u);
      }
    }
    path.neighborhood = VertexSet(std::move(nbhd));

    const int index = static_cast<int>(out.paths_.size());
    for (Vertex v : path.vertices) out.vertex_class_[v] = index;
    out.paths_.push_back(std::move(path));
  }
  return out;
}

}  // namespace fortcover

#endif  // FORTCOVER_JUNCTION_HPP
