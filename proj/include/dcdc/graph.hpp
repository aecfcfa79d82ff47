#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcdc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (graph6, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = -1;
  VertexId v = -1;
};

/// A directed traversal of an edge. dir == 0 runs u -> v, dir == 1 runs v -> u.
struct Dart {
  EdgeId edge = -1;
  int dir = 0;

  [[nodiscard]] Dart reversed() const { return {edge, 1 - dir}; }
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

using Walk = std::vector<Dart>;

/// Undirected multigraph with dense vertex ids and stable edge ids.
///
/// The library only ever deals with graphs of maximum degree three, but the
/// container itself does not enforce that; callers use `is_cubic` and
/// `max_degree` to check the regime they need.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : incidence_(static_cast<std::size_t>(n)) {}

  VertexId add_vertex() {
    incidence_.emplace_back();
    return static_cast<VertexId>(incidence_.size()) - 1;
  }

  EdgeId add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw PreconditionError("loops are not allowed");
    edges_.push_back({u, v});
    const auto e = static_cast<EdgeId>(edges_.size()) - 1;
    incidence_[u].push_back(e);
    incidence_[v].push_back(e);
    return e;
  }

  [[nodiscard]] int num_vertices() const { return static_cast<int>(incidence_.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  [[nodiscard]] std::span<const EdgeId> incident(VertexId v) const { return incidence_.at(v); }
  [[nodiscard]] int degree(VertexId v) const { return static_cast<int>(incidence_.at(v).size()); }

  [[nodiscard]] VertexId other(EdgeId e, VertexId v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }

  [[nodiscard]] VertexId tail(Dart d) const { return d.dir == 0 ? edges_.at(d.edge).u : edges_.at(d.edge).v; }
  [[nodiscard]] VertexId head(Dart d) const { return d.dir == 0 ? edges_.at(d.edge).v : edges_.at(d.edge).u; }

  /// The dart leaving `from` along `e`.
  [[nodiscard]] Dart dart_from(EdgeId e, VertexId from) const { return {e, edges_.at(e).u == from ? 0 : 1}; }

  [[nodiscard]] std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (EdgeId e : incident(v)) out.push_back(other(e, v));
    return out;
  }

  /// Incident edges of `v` ordered by neighbor id (ties by edge id). This is
  /// the canonical local slot order used by hexagon graphs and rotations.
  [[nodiscard]] std::vector<EdgeId> ordered_incidence(VertexId v) const {
    std::vector<EdgeId> out(incident(v).begin(), incident(v).end());
    std::sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
      return std::pair(other(a, v), a) < std::pair(other(b, v), b);
    });
    return out;
  }

  [[nodiscard]] std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    for (EdgeId e : incident(u))
      if (other(e, u) == v) return e;
    return std::nullopt;
  }
  [[nodiscard]] bool adjacent(VertexId u, VertexId v) const { return find_edge(u, v).has_value(); }

  [[nodiscard]] int max_degree() const {
    int d = 0;
    for (const auto& inc : incidence_) d = std::max(d, static_cast<int>(inc.size()));
    return d;
  }

  [[nodiscard]] bool is_regular(int d) const {
    return std::all_of(incidence_.begin(), incidence_.end(),
                       [d](const auto& inc) { return static_cast<int>(inc.size()) == d; });
  }
  [[nodiscard]] bool is_cubic() const { return num_vertices() > 0 && is_regular(3); }

  [[nodiscard]] bool has_parallel_edges() const {
    for (VertexId v = 0; v < num_vertices(); ++v) {
      auto nb = neighbors(v);
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return true;
    }
    return false;
  }
  [[nodiscard]] bool is_simple() const { return !has_parallel_edges(); }

  /// Graph induced by `keep` (in the given order); returns the graph and the
  /// old -> new vertex map (-1 for dropped vertices).
  [[nodiscard]] std::pair<Graph, std::vector<VertexId>> induced(std::span<const VertexId> keep) const {
    std::vector<VertexId> map(static_cast<std::size_t>(num_vertices()), -1);
    Graph g(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) map[keep[i]] = static_cast<VertexId>(i);
    for (const Edge& e : edges_)
      if (map[e.u] >= 0 && map[e.v] >= 0) g.add_edge(map[e.u], map[e.v]);
    return {std::move(g), std::move(map)};
  }

  [[nodiscard]] Graph without_vertices(std::span<const VertexId> drop) const {
    std::vector<bool> gone(static_cast<std::size_t>(num_vertices()), false);
    for (VertexId v : drop) gone.at(v) = true;
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < num_vertices(); ++v)
      if (!gone[v]) keep.push_back(v);
    return induced(keep).first;
  }

  /// Sorted (min, max) endpoint list; handy for equality checks in tests.
  [[nodiscard]] std::vector<std::pair<VertexId, VertexId>> edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const Edge& e : edges_) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= num_vertices()) throw PreconditionError("vertex id out of range: " + std::to_string(v));
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

inline Graph graph_from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph graph_from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
  return graph_from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

}  // namespace dcdc
