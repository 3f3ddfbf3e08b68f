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

#ifndef FORTCOVER_GENERATORS_HPP
#define FORTCOVER_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fortcover/graph.hpp"

namespace fortcover {

/// K_k with every edge subdivided once and a pendant leaf on each original
/// vertex. Vertices: originals "v1".."vk", subdividers "v<i>_<j>" (i < j),
/// leaves "u1".."uk". n = 2k + k(k-1)/2.
[[nodiscard]] inline Graph generate_gk(int k) {
  if (k < 3) throw StructuralError("G_k requires k >= 3, got " + std::to_string(k));
  std::vector<std::string> labels;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i <= k; ++i) labels.push_back("v" + std::to_string(i));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      auto mid = static_cast<Vertex>(labels.size());
      labels.push_back("v" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      edges.emplace_back(i, mid);
      edges.emplace_back(mid, j);
    }
  }
  for (int i = 0; i < k; ++i) {
    auto leaf = static_cast<Vertex>(labels.size());
    labels.push_back("u" + std::to_string(i + 1));
    edges.emplace_back(i, leaf);
  }
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

/// Erdos-Renyi G(n, p) with a fixed seed.
[[nodiscard]] inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph(n, edges);
}

/// G(n, p) conditioned on connectivity: resamples (deterministically from the
/// seed) until connected, then, if still disconnected after `attempts`, links
/// consecutive components by their smallest vertices.
[[nodiscard]] inline Graph random_connected_graph(std::size_t n, double p,
                                                  std::uint64_t seed, int attempts = 64) {
  for (int a = 0; a < attempts; ++a) {
    Graph g = random_graph(n, p, seed * 1000003ULL + static_cast<std::uint64_t>(a));
    if (is_connected(g)) return g;
  }
  Graph g = random_graph(n, p, seed);
  auto edges = g.edges();
  auto comps = components(g);
  for (std::size_t i = 1; i < comps.size(); ++i) edges.emplace_back(comps[i - 1][0], comps[i][0]);
  return Graph(n, edges);
}

/// Disjoint union; labels of the second graph are suffixed with "'" when they
/// collide with the first.
[[nodiscard]] inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::string> labels = a.labels();
  auto offset = static_cast<Vertex>(a.vertex_count());
  for (const auto& l : b.labels()) {
    std::string label = l;
    while (a.find_label(label) != kNoVertex) label += "'";
    labels.push_back(label);
  }
  auto edges = a.edges();
  for (auto [u, v] : b.edges()) edges.emplace_back(u + offset, v + offset);
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

[[nodiscard]] inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
  return Graph(n, edges);
}

[[nodiscard]] inline Graph cycle_graph(std::size_t n) {
  auto edges = path_graph(n).edges();
  if (n >= 3) edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph(n, edges);
}

[[nodiscard]] inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(n, edges);
}

/// K_{1,leaves}; the center is vertex 0.
[[nodiscard]] inline Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.emplace_back(0, static_cast<Vertex>(v));
  return Graph(leaves + 1, edges);
}

}  // namespace fortcover

#endif  // FORTCOVER_GENERATORS_HPP
