#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "dcdc/fork.hpp"
#include "dcdc/pseudohex.hpp"

namespace dcdc {

/// Derived white edge with at least one end in V(L_K), named by its X end.
struct NoEdge {
  VertexId x = -1, y = -1;
  int inside = 0;  ///< ends in V(L_K): 1 or 2
};

struct PotentialPair {
  VertexId e = -1, f = -1;
  bool red_connected = false;
};

struct ConfigurationFlags {
  MemberKind kind;
  std::vector<NoEdge> no_edges;
  std::vector<PotentialPair> potential_pairs;
  int l_edges = 0;
  bool L_obstacle = false;
  bool all_pairs_red_connected = false;
  bool P_danger = false;
  bool P_bad = false;
  bool F_abad = false;
  bool F_bbad = false;
  bool B_obstacle = false;

  /// Local conditions expected to guarantee a safe reduction of the member.
  [[nodiscard]] bool hypotheses_hold() const {
    switch (kind.kind) {
      case Kind::dot:
      case Kind::subfork:
      case Kind::star_fork:
      case Kind::p_fork: return true;
      case Kind::three_ear: return !L_obstacle && !P_danger;
      case Kind::fork: return !L_obstacle && !F_abad && !F_bbad;
      case Kind::big_fork: return !B_obstacle;
    }
    return false;
  }

  friend bool operator==(const ConfigurationFlags& a, const ConfigurationFlags& b) {
    auto key = [](const ConfigurationFlags& f) {
      std::vector<std::array<int, 3>> ne, pp;
      for (const NoEdge& e : f.no_edges) ne.push_back({e.x, e.y, e.inside});
      for (const PotentialPair& p : f.potential_pairs) pp.push_back({p.e, p.f, p.red_connected});
      return std::tuple(ne, pp, f.l_edges, f.L_obstacle, f.P_danger, f.P_bad, f.F_abad, f.F_bbad, f.B_obstacle);
    };
    return a.kind == b.kind && key(a) == key(b);
  }
};

namespace detail {

inline VertexId x_end(VertexId a, VertexId b) { return HexagonGraph::in_x(a) ? a : b; }

/// Vertices of the listed hexagons.
inline std::vector<char> vertex_mask(const Pseudohex& k, const std::vector<VertexId>& hexes) {
  std::vector<char> in(static_cast<std::size_t>(6 * k.capacity()), 0);
  for (VertexId h : hexes)
    for (int i = 0; i < 6; ++i) in[6 * h + i] = 1;
  return in;
}

}  // namespace detail

/// Obstacle taxonomy of a member whose hexagons are listed in template
/// vertex order.
inline ConfigurationFlags classify_configuration(const Pseudohex& k, const std::vector<VertexId>& hexes,
                                                 MemberKind kind) {
  const MemberTemplate t = member_template(kind);
  if (static_cast<int>(hexes.size()) != t.graph.num_vertices())
    throw PreconditionError("classify: " + std::to_string(hexes.size()) + " hexagons do not match a " + kind.name());
  for (VertexId h : hexes)
    if (h < 0 || h >= k.capacity() || !k.alive(h)) throw PreconditionError("classify: hexagon not in the pseudohex");
  ConfigurationFlags f;
  f.kind = kind;
  const auto in = detail::vertex_mask(k, hexes);

  std::set<VertexId> seen;
  for (VertexId h : hexes)
    for (int i = 0; i < 6; ++i) {
      const VertexId v = 6 * h + i, w = k.mate(v);
      if (w < 0) throw PreconditionError("classify: white matching is not perfect");
      const VertexId x = detail::x_end(v, w);
      if (!seen.insert(x).second) continue;
      if (k.is_real(x)) {
        ++f.l_edges;
        continue;
      }
      f.no_edges.push_back({x, k.mate(x), in[x] + in[k.mate(x)]});
    }
  f.L_obstacle = !f.no_edges.empty() &&
                 std::all_of(f.no_edges.begin(), f.no_edges.end(), [](const NoEdge& e) { return e.inside == 1; });

  auto inner = [&](const NoEdge& e) { return in[e.x] ? e.x : e.y; };
  for (std::size_t i = 0; i < f.no_edges.size(); ++i)
    for (std::size_t j = i + 1; j < f.no_edges.size(); ++j) {
      const NoEdge &a = f.no_edges[i], &b = f.no_edges[j];
      if (a.inside != 1 || b.inside != 1) continue;
      if (HexagonGraph::in_x(inner(a)) == HexagonGraph::in_x(inner(b))) continue;
      f.potential_pairs.push_back({a.x, b.x, red_connected(k, a.x, b.x)});
    }
  f.all_pairs_red_connected = std::all_of(f.potential_pairs.begin(), f.potential_pairs.end(),
                                          [](const PotentialPair& p) { return p.red_connected; });

  auto hex_of = [&](const char* label) { return hexes[t.find(label)]; };
  auto in_hexes = [&](VertexId v, std::initializer_list<VertexId> hs) {
    return std::any_of(hs.begin(), hs.end(), [&](VertexId h) { return v / 6 == h; });
  };

  if (kind.kind == Kind::three_ear) {
    const VertexId hx = hex_of("x"), hy = hex_of("y"), hz = hex_of("z");
    const NoEdge* xy = nullptr;
    const NoEdge* xz = nullptr;
    std::vector<const NoEdge*> cross;
    int others = 0;
    for (const NoEdge& e : f.no_edges) {
      const bool ax = in_hexes(e.x, {hx, hy}), ay = in_hexes(e.y, {hx, hy});
      const bool zx = in_hexes(e.x, {hz}), zy = in_hexes(e.y, {hz});
      if (ax && ay && !xy) xy = &e;
      else if (((ax && zy) || (zx && ay)) && !xz) xz = &e;
      else if (e.inside == 1) cross.push_back(&e);
      else ++others;
    }
    f.P_danger = xy && xz && cross.size() == 2 && others == 0;
    if (f.P_danger) {
      for (const NoEdge* c : cross)
        if (inner(*c) / 6 == hz && red_connected(k, xy->x, c->x)) f.P_bad = true;
    }
  }

  if (kind.kind == Kind::fork) {
    const VertexId hx = hex_of("x"), hy = hex_of("y"), hz = hex_of("z"), ha = hex_of("a"), hb = hex_of("b");
    const bool e_in_xy = std::any_of(f.no_edges.begin(), f.no_edges.end(), [&](const NoEdge& e) {
      return in_hexes(e.x, {hx, hy}) && in_hexes(e.y, {hx, hy});
    });
    // Derived ends of h: both must lead into x, z, y (`inward`) or out of F_K.
    auto free_ends = [&](VertexId h, bool inward) {
      int n = 0;
      for (const NoEdge& e : f.no_edges)
        for (VertexId v : {e.x, e.y}) {
          if (v / 6 != h) continue;
          const VertexId o = v == e.x ? e.y : e.x;
          const bool ok = inward ? in_hexes(o, {hx, hy, hz}) : !in[o];
          if (!ok) return false;
          ++n;
        }
      return n == 2;
    };
    f.F_abad = e_in_xy && free_ends(ha, true) && free_ends(hb, false);
    f.F_bbad = e_in_xy && free_ends(hb, true) && free_ends(ha, false);
  }

  if (kind.kind == Kind::big_fork) {
    f.B_obstacle = static_cast<int>(f.no_edges.size()) == 2 * (4 + kind.j);
  }
  return f;
}

/// Template vertex order in which hexagons are decided: the stage order of
/// the case analyses (star before fork, {a, b} before {x, y, z}).
inline std::vector<int> stage_order(MemberKind kind) {
  const MemberTemplate t = member_template(kind);
  const int n = t.graph.num_vertices();
  std::vector<int> order;
  auto fork_part = [&] {
    for (const char* v : {"a", "b", "z", "x", "y"}) order.push_back(t.find(v));
  };
  switch (kind.kind) {
    case Kind::fork: fork_part(); break;
    case Kind::three_ear:
      for (const char* v : {"x", "z", "y"}) order.push_back(t.find(v));
      break;
    case Kind::big_fork:
      for (int level = kind.j; level >= 1; --level)
        for (const char* v : {"z", "x", "y", "b"}) order.push_back(t.find(v + std::to_string(level)));
      fork_part();
      break;
    default:
      for (int v = 0; v < n; ++v) order.push_back(v);
  }
  return order;
}

struct GuidedStats {
  long evaluations = 0;
  long pruned = 0;
};

/// Depth-first search over blue matchings in the given hexagon order, calling
/// `visit` on every safe and correct plan until it returns true. A prefix
/// whose joint reduction is already unsafe is cut: every contracted path of a
/// prefix lies inside a contracted path of any completion.
inline bool for_each_safe_plan(const Pseudohex& k, const std::vector<VertexId>& order,
                               const std::function<bool(const ReductionPlan&)>& visit,
                               GuidedStats* stats = nullptr) {
  const int n = static_cast<int>(order.size());
  if (n == 0) return visit(ReductionPlan{});
  std::vector<JointReducer> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  for (int d = 1; d <= n; ++d) prefix.emplace_back(k, std::vector<VertexId>(order.begin(), order.begin() + d));
  std::vector<int> bits;
  GuidedStats local;
  std::function<bool()> dfs = [&]() -> bool {
    const int d = static_cast<int>(bits.size());
    for (int b = 0; b < 2; ++b) {
      bits.push_back(b);
      ++local.evaluations;
      auto [safe, correct] = prefix[d].evaluate(bits);
      if (!safe) ++local.pruned;
      if (safe && d + 1 < n && dfs()) return true;
      if (safe && d + 1 == n && correct) {
        ReductionPlan p;
        for (int i = 0; i < n; ++i) p.choice[order[i]] = bits[i];
        if (visit(p)) return true;
      }
      bits.pop_back();
    }
    return false;
  };
  const bool stopped = dfs();
  if (stats) *stats = local;
  return stopped;
}

/// First safe and correct plan in the given hexagon order.
inline std::optional<ReductionPlan> staged_reduce(const Pseudohex& k, const std::vector<VertexId>& order,
                                                  GuidedStats* stats = nullptr) {
  std::optional<ReductionPlan> found;
  for_each_safe_plan(
      k, order,
      [&](const ReductionPlan& p) {
        found = p;
        return true;
      },
      stats);
  return found;
}

/// Safe and correct reduction of a member's hexagons (template order).
inline std::optional<ReductionPlan> guided_reduce_member(const Pseudohex& k, const std::vector<VertexId>& hexes,
                                                         MemberKind kind, GuidedStats* stats = nullptr) {
  if (static_cast<int>(hexes.size()) != member_template(kind).graph.num_vertices())
    throw PreconditionError("guided: hexagon count does not match a " + kind.name());
  std::vector<VertexId> order;
  for (int v : stage_order(kind)) order.push_back(hexes[v]);
  return staged_reduce(k, order, stats);
}

}  // namespace dcdc
