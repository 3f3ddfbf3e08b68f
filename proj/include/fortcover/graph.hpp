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

#ifndef FORTCOVER_GRAPH_HPP
#define FORTCOVER_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace fortcover {

/// Dense vertex index in [0, n).
using Vertex = std::int32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Raised for malformed input text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a graph would contain a loop or a parallel edge.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's structural precondition does not hold
/// (junction-free graph passed to a junction model, bad generator argument).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  using value_type = Vertex;
  using const_iterator = std::vector<Vertex>::const_iterator;

  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> items) : items_(items) { normalize(); }
  explicit VertexSet(std::vector<Vertex> items) : items_(std::move(items)) {
    normalize();
  }

  /// Collects the indices whose flag is set.
  template <typename Flags>
  static VertexSet from_flags(const Flags& flags) {
    VertexSet out;
    for (std::size_t v = 0; v < flags.size(); ++v) {
      if (flags[v]) out.items_.push_back(static_cast<Vertex>(v));
    }
    return out;
  }

  [[nodiscard]] const_iterator begin() const { return items_.begin(); }
  [[nodiscard]] const_iterator end() const { return items_.end(); }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return items_[i]; }
  [[nodiscard]] const std::vector<Vertex>& items() const { return items_; }

  [[nodiscard]] bool contains(Vertex v) const {
    return std::binary_search(items_.begin(), items_.end(), v);
  }

  void insert(Vertex v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) items_.insert(it, v);
  }

  [[nodiscard]] bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  [[nodiscard]] bool intersects(const VertexSet& other) const {
    auto a = begin();
    auto b = other.begin();
    while (a != end() && b != other.end()) {
      if (*a == *b) return true;
      if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
    return false;
  }

  /// Membership flags over [0, n).
  [[nodiscard]] std::vector<char> to_flags(std::size_t n) const {
    std::vector<char> flags(n, 0);
    for (Vertex v : items_) flags[static_cast<std::size_t>(v)] = 1;
    return flags;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.items_ <=> b.items_;
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<Vertex> items_;
};

[[nodiscard]] inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

[[nodiscard]] inline VertexSet set_difference(const VertexSet& a,
                                              const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return VertexSet(std::move(out));
}

[[nodiscard]] inline VertexSet set_intersection(const VertexSet& a,
                                                const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return VertexSet(std::move(out));
}

/// Immutable simple undirected graph. Vertices are dense indices; string labels
/// are kept for I/O only.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on n vertices labelled "0".."n-1" (or the supplied labels).
  /// Throws ValidationError on loops, parallel edges or out-of-range endpoints.
  Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
        std::vector<std::string> labels = {})
      : adjacency_(n), labels_(std::move(labels)) {
    if (labels_.empty()) {
      labels_.reserve(n);
      for (std::size_t v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
    }
    if (labels_.size() != n) {
      throw ValidationError("label count does not match vertex count");
    }
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
          static_cast<std::size_t>(v) >= n) {
        throw ValidationError("edge endpoint out of range");
      }
      if (u == v) {
        throw ValidationError("loop at vertex '" + labels_[u] + "'");
      }
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto& nbrs = adjacency_[v];
      std::sort(nbrs.begin(), nbrs.end());
      auto dup = std::adjacent_find(nbrs.begin(), nbrs.end());
      if (dup != nbrs.end()) {
        throw ValidationError("parallel edge '" + labels_[v] + "' -- '" +
                              labels_[*dup] + "'");
      }
    }
    edge_count_ = edges.size();
  }

  [[nodiscard]] std::size_t vertex_count() const { return adjacency_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }

  [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const {
    const auto& nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  [[nodiscard]] std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
    return best;
  }

  [[nodiscard]] const std::string& label(Vertex v) const {
    return labels_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label, or kNoVertex.
  [[nodiscard]] Vertex find_label(const std::string& label) const {
    for (std::size_t v = 0; v < labels_.size(); ++v) {
      if (labels_[v] == label) return static_cast<Vertex>(v);
    }
    return kNoVertex;
  }

  /// Each edge once, as (u, v) with u < v, in index order.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
      for (Vertex v : adjacency_[u]) {
        if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
      }
    }
    return out;
  }

  [[nodiscard]] VertexSet all_vertices() const {
    std::vector<Vertex> all(vertex_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
    return VertexSet(std::move(all));
  }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

/// N[S]: the set together with all its neighbors.
[[nodiscard]] inline VertexSet closed_neighborhood(const Graph& g,
                                                   const VertexSet& s) {
  std::vector<char> flags = s.to_flags(g.vertex_count());
  for (Vertex v : s) {
    for (Vertex u : g.neighbors(v)) flags[u] = 1;
  }
  return VertexSet::from_flags(flags);
}

/// N(S) = N[S] \ S.
[[nodiscard]] inline VertexSet open_neighborhood(const Graph& g,
                                                 const VertexSet& s) {
  return set_difference(closed_neighborhood(g, s), s);
}

/// Parses a whitespace-separated edge list. Labels are interned in order of
/// first appearance; blank lines and lines starting with '#' are skipped.
[[nodiscard]] inline Graph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, Vertex> index;
  std::vector<std::string> labels;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::size_t> edge_lines;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<Vertex>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError(line_no, "expected two vertex labels, got '" + line + "'");
    }
    if (a == b) {
      throw ValidationError("line " + std::to_string(line_no) + ": loop at vertex '" +
                            a + "'");
    }
    const Vertex u = intern(a);
    const Vertex v = intern(b);
    edges.emplace_back(u, v);
    edge_lines.push_back(line_no);
  }

  // Report the offending line for duplicates before the constructor sees them.
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    auto key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
               static_cast<std::uint32_t>(std::max(u, v));
    auto [it, inserted] = seen.emplace(key, edge_lines[i]);
    if (!inserted) {
      throw ValidationError("line " + std::to_string(edge_lines[i]) +
                            ": parallel edge '" + labels[u] + "' -- '" + labels[v] +
                            "' (first seen on line " + std::to_string(it->second) +
                            ")");
    }
  }
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

[[nodiscard]] inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

/// Writes the graph back in edge-list form using its labels.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

/// Connected components, each sorted, ordered by smallest contained index.
[[nodiscard]] inline std::vector<VertexSet> components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> comp;
    seen[start] = 1;
    stack.push_back(static_cast<Vertex>(start));
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

/// Components of the induced subgraph G[S], ordered by smallest index.
[[nodiscard]] inline std::vector<VertexSet> induced_components(const Graph& g,
                                                               const VertexSet& s) {
  std::vector<char> inside = s.to_flags(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex start : s) {
    if (seen[start]) continue;
    std::vector<Vertex> comp;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (inside[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

[[nodiscard]] inline bool is_connected(const Graph& g) {
  return g.vertex_count() <= 1 || components(g).size() == 1;
}

/// G[S] relabelled to 0..|S|-1 in index order; labels are carried over.
/// `original` receives the map from new index to old index.
[[nodiscard]] inline Graph induced_subgraph(const Graph& g, const VertexSet& s,
                                            std::vector<Vertex>* original = nullptr) {
  std::vector<Vertex> local(g.vertex_count(), kNoVertex);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.size(); ++i) {
    local[s[i]] = static_cast<Vertex>(i);
    labels.push_back(g.label(s[i]));
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : s) {
    for (Vertex u : g.neighbors(v)) {
      if (local[u] != kNoVertex && v < u) edges.emplace_back(local[v], local[u]);
    }
  }
  if (original) *original = s.items();
  return Graph(s.size(), edges, std::move(labels));
}

/// {nodes: [labels], edges: [[i, j], ...]}
[[nodiscard]] inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"nodes", g.labels()}, {"edges", std::move(edges)}};
}

[[nodiscard]] inline std::vector<std::string> labels_of(const Graph& g,
                                                        const VertexSet& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

}  // namespace fortcover

#endif  // FORTCOVER_GRAPH_HPP
