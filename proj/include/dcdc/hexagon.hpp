#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "dcdc/connectivity.hpp"
#include "dcdc/graph.hpp"
#include "dcdc/matching.hpp"

namespace dcdc {

enum class EdgeColor : std::uint8_t { blue, red, white };

/// Hexagon graph of a simple cubic graph. Sub-cubic input is accepted; the
/// unused slots then carry no white edge (white_mate == -1).
///
/// Vertex (v, i) has id 6v + i. Even indices form class X, odd indices class
/// Y. The neighbor of v in slot k (see Graph::ordered_incidence) gets index
/// i_{v(u)} = k, so the pair {v_k, v_{k+3}} serves that edge: its X member
/// is `out_vertex(v, k)` and its Y member `in_vertex(v, k)`. The dart v -> u
/// corresponds to the white edge {out_vertex(v, k), in_vertex(u, k')}.
class HexagonGraph {
 public:
  explicit HexagonGraph(const Graph& g) : g_(g) {
    if (g.num_vertices() == 0 || g.max_degree() > 3) throw PreconditionError("hexagon graph needs a (sub)cubic graph");
    if (g.has_parallel_edges()) throw PreconditionError("hexagon graph needs a simple graph");
    const int n = g.num_vertices();
    slots_.assign(static_cast<std::size_t>(n), {-1, -1, -1});
    slot_of_.assign(static_cast<std::size_t>(g.num_edges()), {-1, -1});
    for (VertexId v = 0; v < n; ++v) {
      const auto inc = g.ordered_incidence(v);
      for (int k = 0; k < static_cast<int>(inc.size()); ++k) {
        slots_[v][k] = inc[k];
        slot_of_[inc[k]][g.edge(inc[k]).u == v ? 0 : 1] = k;
      }
    }
    h_ = Graph(6 * n);
    for (VertexId v = 0; v < n; ++v)
      for (int i = 0; i < 6; ++i) add(6 * v + i, 6 * v + (i + 1) % 6, EdgeColor::blue);
    for (VertexId v = 0; v < n; ++v)
      for (int i = 0; i < 3; ++i) add(6 * v + i, 6 * v + i + 3, EdgeColor::red);
    white_mate_.assign(static_cast<std::size_t>(6 * n), -1);
    white_source_.assign(static_cast<std::size_t>(6 * n), -1);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const VertexId v = g.edge(e).u, u = g.edge(e).v;
      const int iv = slot_of_[e][0], iu = slot_of_[e][1];
      int a1, b1, a2, b2;  // e_uv = v_{a1} u_{b1}, ebar_uv = v_{a2} u_{b2}
      if (iv % 2 == iu % 2) {
        a1 = iv, b1 = iu + 3, a2 = iv + 3, b2 = iu;
      } else {
        a1 = iv, b1 = iu, a2 = iv + 3, b2 = iu + 3;
      }
      add_white(6 * v + a1, 6 * u + b1, e);
      add_white(6 * v + a2, 6 * u + b2, e);
    }
  }

  [[nodiscard]] const Graph& base() const { return g_; }
  [[nodiscard]] const Graph& graph() const { return h_; }
  [[nodiscard]] int num_hexagons() const { return g_.num_vertices(); }
  [[nodiscard]] EdgeColor color(EdgeId e) const { return colors_.at(e); }

  [[nodiscard]] static VertexId vertex(VertexId v, int i) { return 6 * v + ((i % 6) + 6) % 6; }
  [[nodiscard]] static VertexId hexagon_of(VertexId x) { return x / 6; }
  [[nodiscard]] static int index_of(VertexId x) { return x % 6; }
  [[nodiscard]] static VertexId bar(VertexId x) { return 6 * (x / 6) + (x % 6 + 3) % 6; }
  [[nodiscard]] static bool in_x(VertexId x) { return x % 2 == 0; }

  /// X member of the red pair serving slot k.
  [[nodiscard]] static VertexId out_vertex(VertexId v, int k) { return 6 * v + kOut[k]; }
  /// Y member of the red pair serving slot k.
  [[nodiscard]] static VertexId in_vertex(VertexId v, int k) { return 6 * v + kIn[k]; }
  /// Slot served by a hexagon vertex (index i and i+3 share a slot).
  [[nodiscard]] static int slot_of_vertex(VertexId x) { return x % 6 % 3; }

  /// Edge of G in slot k of v.
  [[nodiscard]] EdgeId slot_edge(VertexId v, int k) const { return slots_.at(v)[k]; }
  /// i_{v(u)} for the edge e at endpoint v.
  [[nodiscard]] int slot(EdgeId e, VertexId v) const { return slot_of_.at(e)[g_.edge(e).u == v ? 0 : 1]; }

  [[nodiscard]] VertexId white_mate(VertexId x) const { return white_mate_.at(x); }
  /// The G-edge a white edge at x stems from.
  [[nodiscard]] EdgeId white_source(VertexId x) const { return white_source_.at(x); }
  /// The G-dart encoded by the white edge at x, oriented from its X end.
  [[nodiscard]] Dart white_dart(VertexId x) const {
    const VertexId from = in_x(x) ? x : white_mate_[x];
    return g_.dart_from(white_source_[x], hexagon_of(from));
  }

  [[nodiscard]] std::vector<EdgeId> edges_of_color(EdgeColor c) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < h_.num_edges(); ++e)
      if (colors_[e] == c) out.push_back(e);
    return out;
  }

  /// DOT rendering with colour attributes.
  [[nodiscard]] std::string to_dot() const {
    std::ostringstream os;
    os << "graph H {\n  node [shape=circle, width=0.3, fontsize=8];\n";
    for (VertexId x = 0; x < h_.num_vertices(); ++x)
      os << "  " << x << " [label=\"" << hexagon_of(x) << "_" << index_of(x) << "\", style=filled, fillcolor="
         << (in_x(x) ? "white" : "gray30") << "];\n";
    static constexpr const char* names[] = {"blue", "red", "black"};
    for (EdgeId e = 0; e < h_.num_edges(); ++e)
      os << "  " << h_.edge(e).u << " -- " << h_.edge(e).v << " [color=" << names[static_cast<int>(colors_[e])]
         << "];\n";
    os << "}\n";
    return os.str();
  }

  static constexpr std::array<int, 3> kOut{0, 4, 2};
  static constexpr std::array<int, 3> kIn{3, 1, 5};

 private:
  void add(VertexId a, VertexId b, EdgeColor c) {
    h_.add_edge(a, b);
    colors_.push_back(c);
  }
  void add_white(VertexId a, VertexId b, EdgeId source) {
    add(a, b, EdgeColor::white);
    white_mate_[a] = b;
    white_mate_[b] = a;
    white_source_[a] = white_source_[b] = source;
  }

  Graph g_;
  Graph h_;
  std::vector<EdgeColor> colors_;
  std::vector<std::array<EdgeId, 3>> slots_;
  std::vector<std::array<int, 2>> slot_of_;
  std::vector<VertexId> white_mate_, white_source_;
};

inline HexagonGraph build_hexagon_graph(const Graph& g) { return HexagonGraph(g); }

/// Brace test by exhaustive extension checks: connected, balanced, and every
/// matching of size at most two extends to a perfect matching. `side[v]` is
/// 0 for one colour class and 1 for the other.
inline bool is_brace(const Graph& h, const std::vector<int>& side) {
  const int n = h.num_vertices();
  std::vector<int> local(static_cast<std::size_t>(n));
  int nl = 0, nr = 0;
  for (VertexId v = 0; v < n; ++v) local[v] = side.at(v) == 0 ? nl++ : nr++;
  if (nl != nr) throw PreconditionError("is_brace needs a balanced bipartition");
  for (const Edge& e : h.edges())
    if (side[e.u] == side[e.v]) throw PreconditionError("is_brace: edge inside a colour class");
  if (!is_connected(h)) return false;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nl));
  for (const Edge& e : h.edges()) {
    const VertexId l = side[e.u] == 0 ? e.u : e.v, r = side[e.u] == 0 ? e.v : e.u;
    adj[local[l]].push_back(local[r]);
  }
  BipartiteMatcher m(nl, nr, std::move(adj));
  auto toggle = [&](const Edge& e, bool on) {
    for (VertexId v : {e.u, e.v}) (side[v] == 0 ? m.set_left(local[v], on) : m.set_right(local[v], on));
  };
  if (m.solve() != nl) return false;
  const auto& es = h.edges();
  for (std::size_t a = 0; a < es.size(); ++a) {
    toggle(es[a], false);
    if (m.solve() != nl - 1) return false;
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      const Edge &ea = es[a], &eb = es[b];
      if (eb.u == ea.u || eb.u == ea.v || eb.v == ea.u || eb.v == ea.v) continue;
      toggle(eb, false);
      const bool ok = m.solve() == nl - 2;
      toggle(eb, true);
      if (!ok) return false;
    }
    toggle(es[a], true);
  }
  return true;
}

inline bool is_brace(const HexagonGraph& hg) {
  std::vector<int> side(static_cast<std::size_t>(hg.graph().num_vertices()));
  for (VertexId x = 0; x < hg.graph().num_vertices(); ++x) side[x] = HexagonGraph::in_x(x) ? 0 : 1;
  return is_brace(hg.graph(), side);
}

}  // namespace dcdc
