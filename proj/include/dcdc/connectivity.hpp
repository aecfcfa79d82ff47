#pragma once

#include <functional>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

inline bool is_connected(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.other(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

namespace detail {

/// Low-link DFS shared by bridge and articulation point detection. Parallel
/// edges are handled by skipping only the parent edge id, not the parent.
struct LowLink {
  const Graph& g;
  std::vector<int> order, low;
  std::vector<bool> cut_vertex;
  std::vector<EdgeId> bridges;
  int timer = 0;

  explicit LowLink(const Graph& graph)
      : g(graph),
        order(static_cast<std::size_t>(graph.num_vertices()), -1),
        low(static_cast<std::size_t>(graph.num_vertices()), -1),
        cut_vertex(static_cast<std::size_t>(graph.num_vertices()), false) {
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (order[v] < 0) visit(v, -1);
  }

  void visit(VertexId v, EdgeId via) {
    order[v] = low[v] = timer++;
    int children = 0;
    for (EdgeId e : g.incident(v)) {
      if (e == via) continue;
      const VertexId w = g.other(e, v);
      if (order[w] < 0) {
        ++children;
        visit(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > order[v]) bridges.push_back(e);
        if (via >= 0 && low[w] >= order[v]) cut_vertex[v] = true;
      } else {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (via < 0 && children > 1) cut_vertex[v] = true;
  }
};

}  // namespace detail

/// Edges whose removal disconnects their component, sorted by id.
inline std::vector<EdgeId> find_bridges(const Graph& g) {
  detail::LowLink ll(g);
  std::sort(ll.bridges.begin(), ll.bridges.end());
  return ll.bridges;
}

inline bool is_bridgeless(const Graph& g) { return find_bridges(g).empty(); }

inline std::vector<VertexId> articulation_points(const Graph& g) {
  detail::LowLink ll(g);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (ll.cut_vertex[v]) out.push_back(v);
  return out;
}

/// Connected with no cut vertex. Requires at least three vertices.
inline bool is_two_connected(const Graph& g) {
  if (g.num_vertices() < 3) throw PreconditionError("is_two_connected needs at least 3 vertices");
  return is_connected(g) && articulation_points(g).empty();
}

/// Base cycle followed by open ears. Vertex sequences list path vertices in
/// order; the base cycle is listed once around (first vertex not repeated).
struct EarDecomposition {
  std::vector<VertexId> base_cycle;
  std::vector<EdgeId> base_cycle_edges;
  std::vector<std::vector<VertexId>> ears;
  std::vector<std::vector<EdgeId>> ear_edges;

  [[nodiscard]] int num_ears() const { return static_cast<int>(ears.size()); }
};

/// Chain decomposition (DFS tree plus back edges, chains walked toward the
/// root). For a 2-connected graph the first chain is a cycle and every later
/// chain is an open path whose two endpoints lie on earlier chains.
inline EarDecomposition ear_decomposition(const Graph& g) {
  if (g.num_vertices() < 3 || !is_two_connected(g)) throw PreconditionError("ear_decomposition needs a 2-connected graph");
  const int n = g.num_vertices();
  std::vector<int> order(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> parent(static_cast<std::size_t>(n), -1), by_order;
  std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<bool> tree_edge(static_cast<std::size_t>(g.num_edges()), false);

  std::function<void(VertexId)> dfs = [&](VertexId v) {
    order[v] = static_cast<int>(by_order.size());
    by_order.push_back(v);
    for (EdgeId e : g.ordered_incidence(v)) {
      const VertexId w = g.other(e, v);
      if (order[w] < 0) {
        parent[w] = v;
        parent_edge[w] = e;
        tree_edge[e] = true;
        dfs(w);
      }
    }
  };
  dfs(0);

  EarDecomposition out;
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<bool> edge_used(static_cast<std::size_t>(g.num_edges()), false);
  for (VertexId v : by_order) {
    for (EdgeId e : g.ordered_incidence(v)) {
      const VertexId w = g.other(e, v);
      // back edge from descendant w up to v
      if (tree_edge[e] || edge_used[e] || order[w] <= order[v]) continue;
      edge_used[e] = true;
      visited[v] = true;
      std::vector<VertexId> verts{v};
      std::vector<EdgeId> es{e};
      VertexId cur = w;
      while (!visited[cur]) {
        visited[cur] = true;
        verts.push_back(cur);
        es.push_back(parent_edge[cur]);
        edge_used[parent_edge[cur]] = true;
        cur = parent[cur];
      }
      verts.push_back(cur);
      if (out.base_cycle.empty()) {
        verts.pop_back();  // closes at v
        out.base_cycle = std::move(verts);
        out.base_cycle_edges = std::move(es);
      } else {
        out.ears.push_back(std::move(verts));
        out.ear_edges.push_back(std::move(es));
      }
    }
  }
  return out;
}

}  // namespace dcdc
