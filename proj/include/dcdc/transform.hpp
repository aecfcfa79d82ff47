#pragma once

#include <array>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

struct YDeltaResult {
  Graph graph;
  std::array<VertexId, 3> triangle{};  ///< v itself plus two appended vertices
};

/// Replace a degree-3 vertex by a triangle. The vertex keeps its id and its
/// first neighbor (slot order); two new vertices are appended.
inline YDeltaResult y_delta(const Graph& g, VertexId v) {
  if (v < 0 || v >= g.num_vertices() || g.degree(v) != 3) throw PreconditionError("y_delta needs a degree-3 vertex");
  const auto slots = g.ordered_incidence(v);
  const int n = g.num_vertices();
  YDeltaResult out{Graph(n + 2), {v, n, n + 1}};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.u != v && ed.v != v) out.graph.add_edge(ed.u, ed.v);
  }
  for (int k = 0; k < 3; ++k) out.graph.add_edge(out.triangle[k], g.other(slots[k], v));
  out.graph.add_edge(out.triangle[0], out.triangle[1]);
  out.graph.add_edge(out.triangle[1], out.triangle[2]);
  out.graph.add_edge(out.triangle[2], out.triangle[0]);
  return out;
}

struct DeltaYResult {
  Graph graph;
  VertexId center = -1;
  std::vector<VertexId> vertex_map;  ///< old id -> new id, -1 for removed vertices
};

/// Contract a triangle whose vertices each have one outside neighbor into a
/// single vertex. The lowest triangle vertex becomes the center; the other
/// two are removed and ids compacted.
inline DeltaYResult delta_y(const Graph& g, std::array<VertexId, 3> tri) {
  std::sort(tri.begin(), tri.end());
  for (VertexId t : tri)
    if (t < 0 || t >= g.num_vertices() || g.degree(t) != 3) throw PreconditionError("delta_y needs three degree-3 vertices");
  if (tri[0] == tri[1] || tri[1] == tri[2]) throw PreconditionError("delta_y needs three distinct vertices");
  if (!g.adjacent(tri[0], tri[1]) || !g.adjacent(tri[1], tri[2]) || !g.adjacent(tri[0], tri[2]))
    throw PreconditionError("delta_y: vertices do not form a triangle");
  std::array<VertexId, 3> outside{};
  for (int k = 0; k < 3; ++k) {
    int found = 0;
    for (VertexId w : g.neighbors(tri[k])) {
      if (w == tri[0] || w == tri[1] || w == tri[2]) continue;
      outside[k] = w;
      ++found;
    }
    if (found != 1) throw PreconditionError("delta_y: triangle vertex must have exactly one outside neighbor");
  }
  if (outside[0] == outside[1] || outside[1] == outside[2] || outside[0] == outside[2])
    throw PreconditionError("delta_y would create parallel edges");

  DeltaYResult out;
  out.vertex_map.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  int next = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (v != tri[1] && v != tri[2]) out.vertex_map[v] = next++;
  out.graph = Graph(next);
  out.center = out.vertex_map[tri[0]];
  auto in_tri = [&](VertexId v) { return v == tri[0] || v == tri[1] || v == tri[2]; };
  for (const Edge& e : g.edges()) {
    if (in_tri(e.u) && in_tri(e.v)) continue;
    const VertexId u = in_tri(e.u) ? tri[0] : e.u;
    const VertexId w = in_tri(e.v) ? tri[0] : e.v;
    out.graph.add_edge(out.vertex_map[u], out.vertex_map[w]);
  }
  return out;
}

}  // namespace dcdc
