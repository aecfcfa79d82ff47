#pragma once

#include <set>
#include <string>
#include <vector>

#include "dcdc/connectivity.hpp"
#include "dcdc/fork.hpp"
#include "dcdc/graph.hpp"

namespace dcdc {

/// Induced-subdivision witness: branch vertices of G map to vertices of the
/// host, edges of G to host paths (vertex sequences from image(u) to image(v)).
struct SubdivisionMap {
  std::vector<VertexId> vertex_image;
  std::vector<std::vector<VertexId>> edge_path;
};

struct SubdivisionCheck {
  bool ok = false;
  std::string message;
};

inline SubdivisionCheck check_induced_subdivision(const Graph& g, const Graph& host, const SubdivisionMap& m) {
  auto fail = [](std::string msg) { return SubdivisionCheck{false, std::move(msg)}; };
  if (static_cast<int>(m.vertex_image.size()) != g.num_vertices()) return fail("vertex map has the wrong size");
  if (static_cast<int>(m.edge_path.size()) != g.num_edges()) return fail("edge map has the wrong size");
  std::vector<int> used(static_cast<std::size_t>(host.num_vertices()), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const VertexId x = m.vertex_image[v];
    if (x < 0 || x >= host.num_vertices()) return fail("vertex image out of range");
    if (used[x]++) return fail("vertex map is not injective");
  }
  std::set<std::pair<VertexId, VertexId>> path_edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& p = m.edge_path[e];
    if (p.size() < 2 || p.front() != m.vertex_image[g.edge(e).u] || p.back() != m.vertex_image[g.edge(e).v])
      return fail("path of edge " + std::to_string(e) + " has wrong endpoints");
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (p[i + 1] < 0 || p[i + 1] >= host.num_vertices() || !host.adjacent(p[i], p[i + 1]))
        return fail("path of edge " + std::to_string(e) + " is not a host path");
      path_edges.insert(std::minmax(p[i], p[i + 1]));
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (used[p[i]]++) return fail("path interiors overlap at host vertex " + std::to_string(p[i]));
  }
  for (const Edge& e : host.edges())
    if (used[e.u] && used[e.v] && !path_edges.count(std::minmax(e.u, e.v)))
      return fail("host edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is a chord of the subdivision");
  if (path_edges.size() != [&] {
        std::size_t n = 0;
        for (const auto& p : m.edge_path) n += p.size() - 1;
        return n;
      }())
    return fail("paths share an edge");
  return {true, ""};
}

struct EmbedResult {
  BuildingSequence sequence;
  Graph host;
  SubdivisionMap map;
  int m = 0;  ///< highest big-fork level in Step 1 is m - 1
  int seeds = 0;
  int subforks = 0;
  int dots = 0;
  int step_two_start = 0;  ///< index of the first Step 2 step
};

namespace detail {

/// One Step 2 operation on G, before host ids are known.
struct EmbedOp {
  enum class Type : std::uint8_t { seed, pair, dot } type = Type::dot;
  EdgeId edge = -1;     ///< seed / pair: the edge realised by the subfork
  VertexId vertex = -1; ///< dot: the vertex placed
};

class EmbedPlanner {
 public:
  explicit EmbedPlanner(const Graph& g) : g_(g), placed_(g.num_vertices(), false), stub_(g.num_edges(), {false, false}) {}

  std::vector<EmbedOp> run() {
    std::vector<EmbedOp> ops;
    int seeds = 0;
    for (int placed = 0; placed < g_.num_vertices();) {
      EmbedOp op;
      if (seeds < 2) {
        op = seed();
      } else if (auto v = vertex_with_stubs(3)) {
        op = {EmbedOp::Type::dot, -1, *v};
      } else if (auto e = pair_edge()) {
        op = {EmbedOp::Type::pair, *e, -1};
      } else if (auto w = vertex_with_stubs(2)) {
        op = {EmbedOp::Type::dot, -1, *w};
      } else {
        op = seed();
      }
      switch (op.type) {
        case EmbedOp::Type::seed:
          ++seeds;
          stub_[op.edge] = {true, true};
          break;
        case EmbedOp::Type::pair:
          place(g_.edge(op.edge).u, op.edge);
          place(g_.edge(op.edge).v, op.edge);
          placed += 2;
          break;
        case EmbedOp::Type::dot:
          place(op.vertex, -1);
          ++placed;
          break;
      }
      ops.push_back(op);
    }
    return ops;
  }

 private:
  int end(EdgeId e, VertexId v) const { return g_.edge(e).u == v ? 0 : 1; }
  bool stubbed_at(EdgeId e, VertexId v) const { return stub_[e][end(e, v)]; }

  int stubs(VertexId v, EdgeId skip = -1) const {
    int c = 0;
    for (EdgeId e : g_.incident(v)) c += e != skip && stubbed_at(e, v);
    return c;
  }

  std::optional<VertexId> vertex_with_stubs(int k) const {
    for (VertexId v = 0; v < g_.num_vertices(); ++v)
      if (!placed_[v] && stubs(v) == k) return v;
    return std::nullopt;
  }

  bool open(EdgeId e) const {
    const Edge& ed = g_.edge(e);
    return !placed_[ed.u] && !placed_[ed.v] && !stub_[e][0] && !stub_[e][1];
  }

  std::optional<EdgeId> pair_edge() const {
    for (EdgeId e = 0; e < g_.num_edges(); ++e)
      if (open(e) && stubs(g_.edge(e).u, e) == 1 && stubs(g_.edge(e).v, e) == 1) return e;
    return std::nullopt;
  }

  // Prefers a seed after which a paired subfork applies, then stub count.
  EmbedOp seed() {
    EdgeId best = -1;
    std::pair<bool, int> score{false, -1};
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      if (!open(e)) continue;
      stub_[e] = {true, true};
      const bool pairs = pair_edge().has_value();
      stub_[e] = {false, false};
      const std::pair<bool, int> sc{pairs, stubs(g_.edge(e).u) + stubs(g_.edge(e).v)};
      if (sc > score) best = e, score = sc;
    }
    if (best < 0) throw Error("embed: no edge left to seed");
    return {EmbedOp::Type::seed, best, -1};
  }

  // Placing v realises its stubbed edges and stubs the rest at the far end.
  void place(VertexId v, EdgeId internal) {
    placed_[v] = true;
    for (EdgeId e : g_.incident(v)) {
      if (e == internal) continue;
      auto& s = stub_[e];
      if (s[end(e, v)]) {
        s[end(e, v)] = false;
      } else {
        s[1 - end(e, v)] = true;
      }
    }
    if (internal >= 0) stub_[internal] = {false, false};
  }

  const Graph& g_;
  std::vector<bool> placed_;
  std::vector<std::array<bool, 2>> stub_;
};

}  // namespace detail

/// Lean fork graph containing G as an induced subdivision. Step 1 grows the
/// triangle by a bold fork and bold big forks until it offers m + 3 ports;
/// Step 2 assembles G from bold subforks and bold dots.
inline EmbedResult embed_in_lean_fork(const Graph& g) {
  if (!g.is_cubic() || !g.is_simple()) throw PreconditionError("embed: G must be simple and cubic");
  if (!is_two_connected(g)) throw PreconditionError("embed: G must be 2-connected");
  const std::vector<detail::EmbedOp> ops = detail::EmbedPlanner(g).run();

  EmbedResult out;
  for (const auto& op : ops) {
    out.seeds += op.type == detail::EmbedOp::Type::seed;
    out.subforks += op.type != detail::EmbedOp::Type::dot;
    out.dots += op.type == detail::EmbedOp::Type::dot;
  }
  out.m = 2 * out.seeds - 3;

  ForkState s;
  BuildingSequence& seq = out.sequence;
  auto add = [&](Step st) {
    const int index = static_cast<int>(seq.steps.size()) + 1;
    if (const std::string err = detail::apply_step(s, st, index); !err.empty())
      throw Error("embed: step " + std::to_string(index) + ": " + err);
    seq.steps.push_back(std::move(st));
  };
  auto member = [](MemberKind k, std::vector<VertexId> attach, int dot = 3) {
    Step st;
    st.kind = k;
    st.bold.dot_half_edges = dot;
    st.attach = std::move(attach);
    return st;
  };

  add(member({Kind::fork}, {0, 1, 2}));
  for (int i = 2; i <= out.m; ++i) add(member({Kind::big_fork, i - 1, 1}, detail::ports(s.graph)));
  std::vector<VertexId> pool = detail::ports(s.graph);
  if (static_cast<int>(pool.size()) != out.m + 3) throw Error("embed: Step 1 left the wrong number of ports");
  out.step_two_start = static_cast<int>(seq.steps.size());

  // Host stub per (edge, end) and path under construction, oriented u -> v.
  std::vector<std::array<VertexId, 2>> stub(static_cast<std::size_t>(g.num_edges()), {-1, -1});
  std::vector<std::vector<VertexId>> path(static_cast<std::size_t>(g.num_edges()));
  std::vector<VertexId> image(static_cast<std::size_t>(g.num_vertices()), -1);
  auto end = [&](EdgeId e, VertexId v) { return g.edge(e).u == v ? 0 : 1; };
  auto extend = [&](EdgeId e, VertexId v, VertexId x) {
    auto& p = path[e];
    if (end(e, v) == 0) p.insert(p.begin(), x);
    else p.push_back(x);
  };
  // Host vertex x becomes image(v); returns the stubs it must attach to.
  auto settle = [&](VertexId v, VertexId x, EdgeId internal) {
    image[v] = x;
    std::vector<VertexId> targets;
    for (EdgeId e : g.incident(v)) {
      if (e == internal) continue;
      auto& st = stub[e];
      if (st[end(e, v)] >= 0) {
        targets.push_back(st[end(e, v)]);
        st[end(e, v)] = -1;
      } else {
        st[1 - end(e, v)] = x;
      }
      extend(e, v, x);
    }
    return targets;
  };

  std::size_t next_pool = 0;
  for (const auto& op : ops) {
    const VertexId base = s.graph.num_vertices();
    switch (op.type) {
      case detail::EmbedOp::Type::seed: {
        add(member({Kind::subfork}, {pool[next_pool], pool[next_pool + 1]}));
        next_pool += 2;
        stub[op.edge] = {base, base + 1};
        path[op.edge] = {base, base + 1};
        break;
      }
      case detail::EmbedOp::Type::pair: {
        const Edge& e = g.edge(op.edge);
        auto a = settle(e.u, base, op.edge);
        auto b = settle(e.v, base + 1, op.edge);
        path[op.edge] = {base, base + 1};
        add(member({Kind::subfork}, {a.at(0), b.at(0)}));
        break;
      }
      case detail::EmbedOp::Type::dot: {
        auto t = settle(op.vertex, base, -1);
        add(member({Kind::dot}, t, static_cast<int>(t.size())));
        break;
      }
    }
  }
  if (next_pool != pool.size()) throw Error("embed: pool ports left over");
  if (!s.graph.is_cubic()) throw Error("embed: host is not cubic");
  out.host = s.graph;
  out.map.vertex_image = image;
  out.map.edge_path = path;
  return out;
}

}  // namespace dcdc
