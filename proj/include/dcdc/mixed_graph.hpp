#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

/// A vertex of a mixed graph has three ports, inherited from the slots of
/// the underlying cubic graph. An edge port holds an undirected edge; an arc
/// port holds the arc entering and the arc leaving the vertex through it.
struct Port {
  enum class Kind : std::uint8_t { edge, arc };
  Kind kind = Kind::edge;
  int edge = -1;
  int in_arc = -1;
  int out_arc = -1;
};

struct MixedEdge {
  VertexId u = -1, v = -1;
  EdgeId source = -1;  ///< edge of the original cubic graph
  bool alive = true;
};

struct Arc {
  VertexId tail = -1, head = -1;
  Walk provenance;  ///< directed walk of original edges from tail to head
  bool alive = true;
};

/// Mixed graph (V, E, A, R) in port form. Vertex and edge ids are those of
/// the original cubic graph; deleted elements stay allocated with alive = false.
class MixedGraph {
 public:
  MixedGraph() = default;

  static MixedGraph from_cubic(const Graph& g) {
    if (!g.is_cubic()) throw PreconditionError("mixed graph needs a cubic graph");
    MixedGraph m;
    m.base_ = g;
    m.alive_.assign(static_cast<std::size_t>(g.num_vertices()), true);
    m.ports_.resize(static_cast<std::size_t>(g.num_vertices()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) m.edges_.push_back({g.edge(e).u, g.edge(e).v, e, true});
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto inc = g.ordered_incidence(v);
      for (int k = 0; k < 3; ++k) m.ports_[v][k] = {Port::Kind::edge, inc[k], -1, -1};
    }
    return m;
  }

  [[nodiscard]] const Graph& base() const { return base_; }
  [[nodiscard]] int capacity() const { return static_cast<int>(alive_.size()); }
  [[nodiscard]] bool alive(VertexId v) const { return alive_.at(v); }
  [[nodiscard]] const std::array<Port, 3>& ports(VertexId v) const { return ports_.at(v); }
  [[nodiscard]] const std::vector<MixedEdge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& forbidden_pairs() const { return forbidden_; }

  [[nodiscard]] std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < capacity(); ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  [[nodiscard]] int edge_degree(VertexId v) const {
    int d = 0;
    for (const Port& p : ports_.at(v)) d += p.kind == Port::Kind::edge ? 1 : 0;
    return d;
  }

  [[nodiscard]] int port_of_edge(VertexId v, int e) const {
    for (int k = 0; k < 3; ++k)
      if (ports_[v][k].kind == Port::Kind::edge && ports_[v][k].edge == e) return k;
    return -1;
  }
  [[nodiscard]] int port_of_in_arc(VertexId v, int a) const {
    for (int k = 0; k < 3; ++k)
      if (ports_[v][k].kind == Port::Kind::arc && ports_[v][k].in_arc == a) return k;
    return -1;
  }
  [[nodiscard]] int port_of_out_arc(VertexId v, int a) const {
    for (int k = 0; k < 3; ++k)
      if (ports_[v][k].kind == Port::Kind::arc && ports_[v][k].out_arc == a) return k;
    return -1;
  }

  /// Empty string when every mixed-graph invariant holds, otherwise the
  /// first violation.
  [[nodiscard]] std::string check_invariants() const {
    for (VertexId v : vertices()) {
      const int d = edge_degree(v);
      if (d < 2) return "vertex " + std::to_string(v) + " has edge-degree " + std::to_string(d);
      for (const Port& p : ports_[v]) {
        if (p.kind == Port::Kind::edge) {
          const MixedEdge& e = edges_.at(p.edge);
          if (!e.alive || (e.u != v && e.v != v)) return "vertex " + std::to_string(v) + " holds a stale edge";
          continue;
        }
        const Arc& in = arcs_.at(p.in_arc);
        const Arc& out = arcs_.at(p.out_arc);
        if (!in.alive || !out.alive || in.head != v || out.tail != v)
          return "vertex " + std::to_string(v) + " has an inconsistent arc port";
      }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const MixedEdge& e = edges_[i];
      if (!e.alive) continue;
      if (!alive_[e.u] || !alive_[e.v]) return "edge " + std::to_string(i) + " touches a deleted vertex";
      if (port_of_edge(e.u, static_cast<int>(i)) < 0 || port_of_edge(e.v, static_cast<int>(i)) < 0)
        return "edge " + std::to_string(i) + " is missing from a port";
    }
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const Arc& a = arcs_[i];
      if (!a.alive) continue;
      if (!alive_[a.tail] || !alive_[a.head]) return "arc " + std::to_string(i) + " touches a deleted vertex";
      if (a.provenance.empty() || base_.tail(a.provenance.front()) != a.tail || base_.head(a.provenance.back()) != a.head)
        return "arc " + std::to_string(i) + " has provenance with wrong ends";
      for (std::size_t k = 0; k + 1 < a.provenance.size(); ++k)
        if (base_.head(a.provenance[k]) != base_.tail(a.provenance[k + 1]))
          return "arc " + std::to_string(i) + " has a broken provenance walk";
    }
    return {};
  }

  /// Structural fingerprint (ports, edges, arc endpoints) ignoring provenance.
  [[nodiscard]] std::vector<int> structure_key() const {
    std::vector<int> key;
    for (VertexId v = 0; v < capacity(); ++v) {
      key.push_back(alive_[v] ? 1 : 0);
      if (!alive_[v]) continue;
      for (const Port& p : ports_[v]) {
        if (p.kind == Port::Kind::edge) {
          key.push_back(-1 - p.edge);
        } else {
          key.push_back(arcs_[p.in_arc].tail);
          key.push_back(arcs_[p.out_arc].head);
        }
      }
    }
    return key;
  }

 private:
  friend struct MixedReducer;

  Graph base_;
  std::vector<bool> alive_;
  std::vector<std::array<Port, 3>> ports_;
  std::vector<MixedEdge> edges_;
  std::vector<Arc> arcs_;
  std::vector<std::pair<int, int>> forbidden_;
};

/// Slot rotations available at a reduced vertex: entering through port k,
/// leave through port kRotation[bit][k].
inline constexpr std::array<std::array<int, 3>, 2> kPortRotation{{{2, 0, 1}, {1, 2, 0}}};

struct MixedReduction {
  MixedGraph graph;
  std::vector<Walk> cycles;          ///< closed directed walks in the original graph
  std::vector<std::uint8_t> bits;    ///< rotation choice per vertex of S (in sorted order)
  std::vector<VertexId> reduced;     ///< S, sorted
};

/// Evaluates and applies wirings of a vertex set.
struct MixedReducer {
  struct Item {
    VertexId tail, head;
    int arrive_port, depart_port;
    bool is_arc;   ///< element of A_S (otherwise of A')
    int id;        ///< arc id, or edge id for A' items
    int dir;       ///< for A' items: 0 runs edge.u -> edge.v
  };

  const MixedGraph& m;
  std::vector<VertexId> s;
  std::vector<int> pos;  // vertex -> index in s, or -1
  std::vector<Item> items;
  std::vector<int> edge_item;  // 2e+dir -> item
  std::vector<int> arc_item;   // arc -> item

  MixedReducer(const MixedGraph& graph, std::vector<VertexId> set) : m(graph), s(std::move(set)) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    pos.assign(static_cast<std::size_t>(m.capacity()), -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= m.capacity() || !m.alive(s[i])) throw PreconditionError("reduction set has a dead vertex");
      pos[s[i]] = static_cast<int>(i);
    }
    edge_item.assign(2 * m.edges_.size(), -1);
    arc_item.assign(m.arcs_.size(), -1);
    for (std::size_t e = 0; e < m.edges_.size(); ++e) {
      const MixedEdge& ed = m.edges_[e];
      if (!ed.alive || (pos[ed.u] < 0 && pos[ed.v] < 0)) continue;
      for (int d = 0; d < 2; ++d) {
        const VertexId t = d == 0 ? ed.u : ed.v, h = d == 0 ? ed.v : ed.u;
        edge_item[2 * e + d] = static_cast<int>(items.size());
        items.push_back({t, h, m.port_of_edge(h, static_cast<int>(e)), m.port_of_edge(t, static_cast<int>(e)), false,
                         static_cast<int>(e), d});
      }
    }
    for (std::size_t a = 0; a < m.arcs_.size(); ++a) {
      const Arc& arc = m.arcs_[a];
      if (!arc.alive || (pos[arc.tail] < 0 && pos[arc.head] < 0)) continue;
      arc_item[a] = static_cast<int>(items.size());
      items.push_back({arc.tail, arc.head, m.port_of_in_arc(arc.head, static_cast<int>(a)),
                       m.port_of_out_arc(arc.tail, static_cast<int>(a)), true, static_cast<int>(a), 0});
    }
  }

  [[nodiscard]] int next(int item, const std::vector<std::uint8_t>& bits) const {
    const Item& it = items[item];
    const VertexId h = it.head;
    const int k = kPortRotation[bits[pos[h]]][it.arrive_port];
    const Port& p = m.ports_[h][k];
    if (p.kind == Port::Kind::arc) return arc_item[p.out_arc];
    const MixedEdge& e = m.edges_[p.edge];
    return edge_item[2 * p.edge + (e.u == h ? 0 : 1)];
  }

  struct Trail {
    std::vector<int> items;
    bool closed = false;
  };

  /// Paths (starting outside S) then cycles, or nullopt if some trail is
  /// unsafe: more than one element of A_S, or both arcs of one edge.
  [[nodiscard]] std::optional<std::vector<Trail>> trails(const std::vector<std::uint8_t>& bits) const {
    std::vector<Trail> out;
    std::vector<bool> used(items.size(), false);
    auto walk = [&](int start, bool closed) -> bool {
      Trail t;
      t.closed = closed;
      int arcs = 0;
      int cur = start;
      for (;;) {
        used[cur] = true;
        t.items.push_back(cur);
        if (items[cur].is_arc) ++arcs;
        if (pos[items[cur].head] < 0) break;
        cur = next(cur, bits);
        if (cur == start) break;
      }
      if (arcs > 1) return false;
      std::vector<int> edges;
      for (int i : t.items)
        if (!items[i].is_arc) edges.push_back(items[i].id);
      std::sort(edges.begin(), edges.end());
      if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return false;
      out.push_back(std::move(t));
      return true;
    };
    for (std::size_t i = 0; i < items.size(); ++i)
      if (pos[items[i].tail] < 0 && !walk(static_cast<int>(i), false)) return std::nullopt;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!used[i] && !walk(static_cast<int>(i), true)) return std::nullopt;
    return out;
  }

  [[nodiscard]] Walk provenance(const Trail& t) const {
    Walk w;
    for (int i : t.items) {
      const Item& it = items[i];
      if (it.is_arc) {
        const Walk& p = m.arcs_[it.id].provenance;
        w.insert(w.end(), p.begin(), p.end());
      } else {
        w.push_back({m.edges_[it.id].source, m.base_.edge(m.edges_[it.id].source).u == it.tail ? 0 : 1});
      }
    }
    return w;
  }

  [[nodiscard]] MixedReduction apply(const std::vector<Trail>& ts, const std::vector<std::uint8_t>& bits) const {
    MixedReduction r{m, {}, bits, s};
    MixedGraph& g = r.graph;
    for (VertexId v : s) g.alive_[v] = false;
    for (const Item& it : items) (it.is_arc ? g.arcs_[it.id].alive : g.edges_[it.id].alive) = false;
    for (const Trail& t : ts) {
      if (t.closed) {
        r.cycles.push_back(provenance(t));
        continue;
      }
      const Item& first = items[t.items.front()];
      const Item& last = items[t.items.back()];
      const int id = static_cast<int>(g.arcs_.size());
      g.arcs_.push_back({first.tail, last.head, provenance(t), true});
      Port& out = g.ports_[first.tail][first.depart_port];
      out.kind = Port::Kind::arc;
      out.edge = -1;
      out.out_arc = id;
      Port& in = g.ports_[last.head][last.arrive_port];
      in.kind = Port::Kind::arc;
      in.edge = -1;
      in.in_arc = id;
    }
    std::erase_if(g.forbidden_, [&](auto pr) { return !g.arcs_[pr.first].alive || !g.arcs_[pr.second].alive; });
    return r;
  }
};

/// Evaluate one wiring; nullopt when unsafe.
inline std::optional<MixedReduction> reduce_mixed_with(const MixedGraph& m, const std::vector<VertexId>& s,
                                                       const std::vector<std::uint8_t>& bits) {
  MixedReducer red(m, s);
  if (bits.size() != red.s.size()) throw PreconditionError("one rotation bit per reduced vertex expected");
  auto ts = red.trails(bits);
  if (!ts) return std::nullopt;
  return red.apply(*ts, bits);
}

/// First safe wiring in lexicographic bit order, or nullopt if none exists.
inline std::optional<MixedReduction> safe_reduce_mixed(const MixedGraph& m, const std::vector<VertexId>& s) {
  MixedReducer red(m, s);
  const std::size_t k = red.s.size();
  if (k > 24) throw LimitError("safe_reduce_mixed: reduction set too large");
  std::vector<std::uint8_t> bits(k, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << k); ++code) {
    for (std::size_t i = 0; i < k; ++i) bits[i] = static_cast<std::uint8_t>((code >> (k - 1 - i)) & 1);
    if (auto ts = red.trails(bits)) return red.apply(*ts, bits);
  }
  return std::nullopt;
}

/// Boundary of S: edges and arcs with exactly one end in S.
struct Boundary {
  int edges = 0;
  int arcs = 0;
};

inline Boundary boundary(const MixedGraph& m, const std::vector<VertexId>& s) {
  std::vector<bool> in(static_cast<std::size_t>(m.capacity()), false);
  for (VertexId v : s) in.at(v) = true;
  Boundary b;
  for (const MixedEdge& e : m.edges())
    if (e.alive && in[e.u] != in[e.v]) ++b.edges;
  for (const Arc& a : m.arcs())
    if (a.alive && in[a.tail] != in[a.head]) ++b.arcs;
  return b;
}

/// Whether a pairing of E_S and A_S exists with every edge in exactly two
/// pairs, every arc in exactly one, no arc-arc pair and no pair repeating an
/// element. Counting the slots (two per edge, one per arc) decides it.
inline bool pairing_exists(int edges, int arcs) {
  if (arcs % 2 != 0 || arcs > 2 * edges) return false;
  return !(edges == 1 && arcs == 0);
}

inline bool cut_obstacle(const MixedGraph& m, const std::vector<VertexId>& s) {
  if (s.empty()) throw PreconditionError("cut_obstacle needs a nonempty set");
  const Boundary b = boundary(m, s);
  return !pairing_exists(b.edges, b.arcs);
}

}  // namespace dcdc
