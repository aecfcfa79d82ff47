#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dcdc/catalog.hpp"
#include "dcdc/connectivity.hpp"
#include "dcdc/graph.hpp"
#include "dcdc/maxflow.hpp"
#include "dcdc/transform.hpp"

namespace dcdc {

enum class Kind : std::uint8_t { dot, subfork, three_ear, star_fork, fork, p_fork, big_fork };

/// Member of the extended fork-collection. For big forks `j` is the level
/// and `attach` picks the fork pair the first star hangs from:
/// 0 = {x, y}, 1 = {x, b}, 2 = {y, b}.
struct MemberKind {
  Kind kind = Kind::dot;
  int j = 0;
  int attach = 1;

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case Kind::dot: return "dot";
      case Kind::subfork: return "subfork";
      case Kind::three_ear: return "three_ear";
      case Kind::star_fork: return "star_fork";
      case Kind::fork: return "fork";
      case Kind::p_fork: return "p_fork";
      case Kind::big_fork: return std::to_string(j) + "-big_fork";
    }
    return "?";
  }
  friend bool operator==(const MemberKind&, const MemberKind&) = default;
};

inline Kind parse_kind(const std::string& s) {
  static const std::pair<const char*, Kind> names[] = {
      {"dot", Kind::dot},   {"subfork", Kind::subfork}, {"three_ear", Kind::three_ear}, {"star_fork", Kind::star_fork},
      {"fork", Kind::fork}, {"p_fork", Kind::p_fork},   {"big_fork", Kind::big_fork}};
  for (auto [n, k] : names)
    if (s == n) return k;
  throw ParseError("unknown member kind: " + s);
}

inline const char* kind_name(Kind k) {
  static const char* names[] = {"dot", "subfork", "three_ear", "star_fork", "fork", "p_fork", "big_fork"};
  return names[static_cast<int>(k)];
}

/// Member graph with named vertices and the vertices that receive the
/// mandatory half-edges of the bold rules.
struct MemberTemplate {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<VertexId> anchors;
  std::vector<VertexId> connecting;  ///< C(B) for big forks

  [[nodiscard]] VertexId find(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<VertexId>(i);
    throw PreconditionError("template has no vertex " + label);
  }
};

namespace detail {

struct TemplateBuilder {
  MemberTemplate t;
  VertexId add(std::string label) {
    t.labels.push_back(std::move(label));
    return t.graph.add_vertex();
  }
  void edge(VertexId a, VertexId b) { t.graph.add_edge(a, b); }
};

inline void add_fork(TemplateBuilder& b) {
  const VertexId x = b.add("x"), y = b.add("y"), z = b.add("z"), a = b.add("a"), bb = b.add("b");
  b.edge(x, z);
  b.edge(y, z);
  b.edge(z, a);
  b.edge(a, bb);
}

inline std::array<VertexId, 4> add_star(TemplateBuilder& b, const std::string& suffix) {
  const VertexId z = b.add("z" + suffix), x = b.add("x" + suffix), y = b.add("y" + suffix), l = b.add("b" + suffix);
  b.edge(z, x);
  b.edge(z, y);
  b.edge(z, l);
  return {z, x, y, l};
}

}  // namespace detail

/// Concrete adjacency of every member kind.
inline MemberTemplate member_template(MemberKind k, int dot_half_edges = 3) {
  detail::TemplateBuilder b;
  switch (k.kind) {
    case Kind::dot: {
      if (dot_half_edges != 2 && dot_half_edges != 3) throw PreconditionError("a bold dot has 2 or 3 half-edges");
      const VertexId v = b.add("v");
      b.t.anchors.assign(static_cast<std::size_t>(dot_half_edges), v);
      break;
    }
    case Kind::subfork: {
      const VertexId p = b.add("p"), q = b.add("q");
      b.edge(p, q);
      b.t.anchors = {p, q};
      break;
    }
    case Kind::three_ear: {
      const VertexId x = b.add("x"), z = b.add("z"), y = b.add("y");
      b.edge(x, z);
      b.edge(z, y);
      b.t.anchors = {x, y};
      break;
    }
    case Kind::star_fork: {
      auto s = detail::add_star(b, "'");
      b.t.anchors = {s[1], s[2], s[3]};
      break;
    }
    case Kind::fork: {
      detail::add_fork(b);
      b.t.anchors = {b.t.find("x"), b.t.find("y"), b.t.find("b")};
      break;
    }
    case Kind::p_fork: {
      // Petersen graph minus vertices 0 and 2 (distance two, common neighbour 1).
      static const std::pair<int, const char*> keep[] = {{1, "c"}, {3, "w1"}, {4, "x"}, {5, "y"},
                                                         {6, "p"}, {7, "w2"}, {8, "q"}, {9, "r"}};
      std::vector<int> map(10, -1);
      for (auto [v, label] : keep) map[v] = b.add(label);
      const Graph pg = petersen_graph();
      for (const Edge& e : pg.edges())
        if (map[e.u] >= 0 && map[e.v] >= 0) b.edge(map[e.u], map[e.v]);
      b.t.anchors = {b.t.find("c"), b.t.find("x"), b.t.find("y")};
      break;
    }
    case Kind::big_fork: {
      if (k.j < 1) throw PreconditionError("big fork level must be at least 1");
      if (k.attach < 0 || k.attach > 2) throw PreconditionError("big fork attachment kind must be 0, 1 or 2");
      detail::add_fork(b);
      static const std::array<std::array<const char*, 2>, 3> pairs{{{"x", "y"}, {"x", "b"}, {"y", "b"}}};
      auto s = detail::add_star(b, "1");
      b.edge(s[1], b.t.find(pairs[k.attach][0]));
      b.edge(s[2], b.t.find(pairs[k.attach][1]));
      std::vector<VertexId> c{b.t.find("x"), b.t.find("a"), b.t.find("y"), s[3]};
      for (int level = 2; level <= k.j; ++level) {
        std::vector<VertexId> eligible;
        for (VertexId v = 0; v < b.t.graph.num_vertices() && eligible.size() < 2; ++v) {
          const bool in_c = std::find(c.begin(), c.end(), v) != c.end();
          if (b.t.graph.degree(v) == 2 && !in_c) eligible.push_back(v);
        }
        if (eligible.size() < 2) throw Error("big fork construction ran out of attachment vertices");
        auto t = detail::add_star(b, std::to_string(level));
        b.edge(t[1], eligible[0]);
        b.edge(t[2], eligible[1]);
        c.push_back(t[3]);
      }
      b.t.connecting = c;
      b.t.anchors = c;
      break;
    }
  }
  return b.t;
}

/// Half-edges beyond the mandatory ones.
struct BoldSpec {
  int dot_half_edges = 3;
  std::vector<VertexId> extra_half_edges;
  std::vector<std::pair<VertexId, VertexId>> extra_edges;
  friend bool operator==(const BoldSpec&, const BoldSpec&) = default;
};

/// Template vertices carrying a half-edge, in attachment order.
inline std::vector<VertexId> bold_anchors(MemberKind k, const BoldSpec& spec) {
  std::vector<VertexId> a = member_template(k, spec.dot_half_edges).anchors;
  a.insert(a.end(), spec.extra_half_edges.begin(), spec.extra_half_edges.end());
  return a;
}

struct Step {
  enum class Type : std::uint8_t { member, y_delta, delta_y };
  Type type = Type::member;
  MemberKind kind;
  BoldSpec bold;
  std::vector<VertexId> attach;  ///< degree-2 targets, aligned with bold_anchors
  VertexId vertex = -1;          ///< y_delta
  std::array<VertexId, 3> triangle{};  ///< delta_y
  friend bool operator==(const Step&, const Step&) = default;
};

struct BuildingSequence {
  std::vector<Step> steps;
  friend bool operator==(const BuildingSequence&, const BuildingSequence&) = default;
};

/// Replay state. owner[v] is the 1-based index of the step that created v
/// (0 for the initial triangle); edge_step[e] likewise for edges.
struct ForkState {
  Graph graph = triangle_graph();
  std::vector<int> owner{0, 0, 0};
  std::vector<int> edge_step{0, 0, 0};
};

namespace detail {

inline std::string apply_step(ForkState& s, const Step& st, int index) {
  Graph& g = s.graph;
  switch (st.type) {
    case Step::Type::member: {
      const MemberTemplate t = member_template(st.kind, st.bold.dot_half_edges);
      const auto anchors = bold_anchors(st.kind, st.bold);
      if (anchors.size() != st.attach.size()) return "attachment count does not match the bold member";
      for (std::size_t i = 0; i < st.attach.size(); ++i) {
        const VertexId v = st.attach[i];
        if (v < 0 || v >= g.num_vertices()) return "attachment target out of range";
        if (g.degree(v) != 2) return "attachment target " + std::to_string(v) + " does not have degree 2";
        for (std::size_t k = 0; k < i; ++k)
          if (st.attach[k] == v) return "attachment targets are not distinct";
      }
      for (VertexId a : anchors)
        if (a < 0 || a >= t.graph.num_vertices()) return "half-edge anchor out of range";
      const int base = g.num_vertices();
      for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
        g.add_vertex();
        s.owner.push_back(index);
      }
      auto link = [&](VertexId a, VertexId b) {
        g.add_edge(a, b);
        s.edge_step.push_back(index);
      };
      for (const Edge& e : t.graph.edges()) link(base + e.u, base + e.v);
      for (auto [a, b] : st.bold.extra_edges) {
        if (a < 0 || b < 0 || a >= t.graph.num_vertices() || b >= t.graph.num_vertices() || a == b)
          return "extra edge out of range";
        if (g.adjacent(base + a, base + b)) return "extra edge duplicates an edge";
        link(base + a, base + b);
      }
      for (std::size_t i = 0; i < anchors.size(); ++i) link(base + anchors[i], st.attach[i]);
      if (g.max_degree() > 3) return "degree exceeds three";
      break;
    }
    case Step::Type::y_delta: {
      if (st.vertex < 0 || st.vertex >= g.num_vertices() || g.degree(st.vertex) != 3)
        return "y_delta needs a degree-3 vertex";
      const auto slots = g.ordered_incidence(st.vertex);
      YDeltaResult r = y_delta(g, st.vertex);
      std::vector<int> es;
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).u != st.vertex && g.edge(e).v != st.vertex) es.push_back(s.edge_step[e]);
      for (int k = 0; k < 3; ++k) es.push_back(s.edge_step[slots[k]]);
      es.insert(es.end(), {index, index, index});
      s.owner.push_back(s.owner[st.vertex]);
      s.owner.push_back(s.owner[st.vertex]);
      s.edge_step = std::move(es);
      g = std::move(r.graph);
      break;
    }
    case Step::Type::delta_y: {
      DeltaYResult r;
      try {
        r = delta_y(g, st.triangle);
      } catch (const PreconditionError& e) {
        return e.what();
      }
      auto tri = st.triangle;
      std::sort(tri.begin(), tri.end());
      auto in_tri = [&](VertexId v) { return v == tri[0] || v == tri[1] || v == tri[2]; };
      std::vector<int> es;
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (!(in_tri(g.edge(e).u) && in_tri(g.edge(e).v))) es.push_back(s.edge_step[e]);
      std::vector<int> owner(static_cast<std::size_t>(r.graph.num_vertices()));
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (r.vertex_map[v] >= 0) owner[r.vertex_map[v]] = s.owner[v];
      owner[r.center] = std::min({s.owner[tri[0]], s.owner[tri[1]], s.owner[tri[2]]});
      s.owner = std::move(owner);
      s.edge_step = std::move(es);
      g = std::move(r.graph);
      break;
    }
  }
  if (!is_two_connected(g)) return "graph is not 2-connected";
  return "";
}

}  // namespace detail

/// Attach a bold member to a graph.
inline Graph add_bold(const Graph& prev, MemberKind kind, const BoldSpec& spec, const std::vector<VertexId>& attach) {
  ForkState s;
  s.graph = prev;
  s.owner.assign(static_cast<std::size_t>(prev.num_vertices()), 0);
  s.edge_step.assign(static_cast<std::size_t>(prev.num_edges()), 0);
  Step st;
  st.kind = kind;
  st.bold = spec;
  st.attach = attach;
  if (const std::string err = detail::apply_step(s, st, 1); !err.empty()) throw PreconditionError("add_bold: " + err);
  return s.graph;
}

struct ForkBuild {
  bool ok = false;
  int failed_step = -1;  ///< 1-based
  std::string message;
  ForkState state;
  std::vector<Graph> stages;  ///< G_0 .. G_n
};

/// Replays a sequence and checks every clause of the fork-graph definition.
/// `extended` admits 3-ear members.
inline ForkBuild validate_building_sequence(const BuildingSequence& seq, bool extended = false) {
  ForkBuild out;
  out.stages.push_back(out.state.graph);
  int forks = 0;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const Step& st = seq.steps[i];
    const int index = static_cast<int>(i) + 1;
    std::string err;
    if (st.type == Step::Type::member) {
      if (st.kind.kind == Kind::fork && ++forks > 1) err = "more than one fork";
      if (st.kind.kind == Kind::three_ear && !extended) err = "the 3-ear is not in the exclusive fork-collection";
    }
    if (err.empty()) {
      try {
        err = detail::apply_step(out.state, st, index);
      } catch (const PreconditionError& e) {
        err = e.what();
      }
    }
    if (!err.empty()) {
      out.failed_step = index;
      out.message = "step " + std::to_string(index) + ": " + err;
      return out;
    }
    out.stages.push_back(out.state.graph);
  }
  if (!out.state.graph.is_cubic()) {
    out.failed_step = static_cast<int>(seq.steps.size());
    out.message = "final graph is not cubic";
    return out;
  }
  out.ok = true;
  return out;
}

struct LeanReport {
  bool lean = true;
  int violating_step = -1;  ///< 1-based
  std::vector<std::pair<int, int>> paths;  ///< (step, max disjoint paths) per big-fork step
  std::string message;
};

/// Menger test of every big-fork step against j + 3.
inline LeanReport lean_report(const BuildingSequence& seq) {
  const ForkBuild b = validate_building_sequence(seq, true);
  if (!b.ok) throw PreconditionError("is_lean: invalid sequence: " + b.message);
  LeanReport r;
  const ForkState& s = b.state;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const Step& st = seq.steps[i];
    if (st.type != Step::Type::member || st.kind.kind != Kind::big_fork) continue;
    const int index = static_cast<int>(i) + 1;
    std::vector<VertexId> src, dst;
    for (VertexId v = 0; v < s.graph.num_vertices(); ++v) {
      if (s.owner[v] == index) src.push_back(v);
      else if (s.owner[v] < index) dst.push_back(v);
    }
    const int p = max_vertex_disjoint_paths(s.graph, src, dst, [&](EdgeId e) { return s.edge_step[e] > index; });
    r.paths.emplace_back(index, p);
    if (p > st.kind.j + 3 && r.lean) {
      r.lean = false;
      r.violating_step = index;
      r.message = "step " + std::to_string(index) + " (" + st.kind.name() + ") has " + std::to_string(p) +
                  " disjoint outside paths, more than " + std::to_string(st.kind.j + 3);
    }
  }
  return r;
}

inline bool is_lean(const BuildingSequence& seq) { return lean_report(seq).lean; }

inline bool is_lean(const BuildingSequence& seq, const Graph& g) {
  const ForkBuild b = validate_building_sequence(seq, true);
  if (!b.ok || b.state.graph.edge_list() != g.edge_list()) throw PreconditionError("is_lean: sequence does not build g");
  return is_lean(seq);
}

/// Triangle, bold p-fork, bold dot, then Delta-Y at the initial triangle.
inline std::pair<BuildingSequence, Graph> petersen_example() {
  BuildingSequence seq;
  Step p;
  p.kind = {Kind::p_fork};
  p.attach = {0, 1, 2};
  seq.steps.push_back(p);
  // p-fork vertices start at 3; its degree-2 vertices are c, w1, w2.
  const MemberTemplate t = member_template({Kind::p_fork});
  Step d;
  d.kind = {Kind::dot};
  d.attach = {3 + t.find("c"), 3 + t.find("w1"), 3 + t.find("w2")};
  seq.steps.push_back(d);
  Step dy;
  dy.type = Step::Type::delta_y;
  dy.triangle = {0, 1, 2};
  seq.steps.push_back(dy);
  const ForkBuild b = validate_building_sequence(seq);
  if (!b.ok) throw Error("petersen_example: " + b.message);
  return {seq, b.state.graph};
}

/// A non-lean sequence (extended mode): after the fork and enough 3-ears, a 1-big-fork
/// is added and dots join each of its j + 4 ports to an older port, giving
/// j + 4 disjoint paths back into the earlier graph.
inline BuildingSequence planted_non_lean_example() {
  BuildingSequence seq;
  ForkState s;
  auto free_ports = [&] {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < s.graph.num_vertices(); ++v)
      if (s.graph.degree(v) == 2) out.push_back(v);
    return out;
  };
  auto add = [&](Step st) {
    if (const std::string err = detail::apply_step(s, st, static_cast<int>(seq.steps.size()) + 1); !err.empty())
      throw Error("planted_non_lean_example: " + err);
    if (seq.steps.size() > 64) throw Error("planted_non_lean_example: too many steps");
    seq.steps.push_back(std::move(st));
  };
  auto member = [&](MemberKind k) {
    Step st;
    st.kind = k;
    const auto p = free_ports();
    st.attach.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(member_template(k).anchors.size()));
    add(st);
  };
  member({Kind::fork});
  while (free_ports().size() < 9) member({Kind::three_ear});
  member({Kind::big_fork, 1, 1});
  const int big = static_cast<int>(seq.steps.size());
  std::vector<VertexId> mine, old;
  for (VertexId v : free_ports()) (s.owner[v] == big ? mine : old).push_back(v);
  for (std::size_t i = 0; i < mine.size(); ++i) {
    Step d;
    d.kind = {Kind::dot};
    d.bold.dot_half_edges = 2;
    d.attach = {mine[i], old.at(i)};
    add(d);
  }
  for (auto p = free_ports(); !p.empty(); p = free_ports()) {
    Step d;
    d.kind = {Kind::dot};
    d.bold.dot_half_edges = p.size() % 3 == 0 ? 3 : 2;
    d.attach.assign(p.begin(), p.begin() + d.bold.dot_half_edges);
    add(d);
  }
  return seq;
}

struct ForkGenParams {
  int steps = 5;               ///< member steps before closing with dots
  int max_vertices = 40;
  std::array<double, 6> weights{1, 1, 1, 1, 1, 1};  ///< dot, subfork, star_fork, p_fork, 1-big, 2-big
  double fork_probability = 0.3;
  double three_ear_probability = 0.0;  ///< extended collection only
  bool lean = false;
  std::optional<MemberKind> require;  ///< reject sequences without this member
  int retries = 1000;
};

namespace detail {

inline std::vector<VertexId> ports(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 2) out.push_back(v);
  return out;
}

/// Degree-2 vertices a bold member leaves behind, net of those it consumes.
inline int port_gain(const Step& st) {
  const MemberTemplate t = member_template(st.kind, st.bold.dot_half_edges);
  std::vector<int> deg(static_cast<std::size_t>(t.graph.num_vertices()));
  for (VertexId v = 0; v < t.graph.num_vertices(); ++v) deg[v] = t.graph.degree(v);
  for (auto [a, b] : st.bold.extra_edges) ++deg[a], ++deg[b];
  for (VertexId a : bold_anchors(st.kind, st.bold)) ++deg[a];
  return static_cast<int>(std::count(deg.begin(), deg.end(), 2)) - static_cast<int>(bold_anchors(st.kind, st.bold).size());
}

template <class Rng>
std::optional<BuildingSequence> try_generate(const ForkGenParams& p, Rng& rng) {
  BuildingSequence seq;
  ForkState s;
  auto uniform = [&](double hi) { return std::uniform_real_distribution<double>(0, hi)(rng); };
  auto push = [&](Step st) -> bool {
    auto pts = ports(s.graph);
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto anchors = bold_anchors(st.kind, st.bold);
    if (anchors.size() > pts.size()) return false;
    st.attach.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(anchors.size()));
    ForkState next = s;
    if (!apply_step(next, st, static_cast<int>(seq.steps.size()) + 1).empty()) return false;
    s = std::move(next);
    seq.steps.push_back(std::move(st));
    return true;
  };
  bool fork_used = false;
  const int fork_at = uniform(1.0) < p.fork_probability ? static_cast<int>(rng() % std::max(1, p.steps)) : -1;
  for (int i = 0; i < p.steps; ++i) {
    Step st;
    if (i == fork_at && !fork_used) {
      st.kind = {Kind::fork};
      fork_used = true;
    } else if (uniform(1.0) < p.three_ear_probability) {
      st.kind = {Kind::three_ear};
    } else {
      double total = 0;
      for (double w : p.weights) total += w;
      double r = uniform(total);
      int pick = 0;
      while (pick < 5 && r >= p.weights[pick]) r -= p.weights[pick++];
      static const Kind kinds[] = {Kind::dot, Kind::subfork, Kind::star_fork, Kind::p_fork, Kind::big_fork, Kind::big_fork};
      st.kind = {kinds[pick]};
      if (pick >= 4) {
        st.kind.j = pick - 3;
        st.kind.attach = static_cast<int>(rng() % 3);
        if (st.kind.attach == 0) st.bold.extra_half_edges = {member_template(st.kind).find("b")};
      }
      if (pick == 0) st.bold.dot_half_edges = 2;
    }
    const int have = static_cast<int>(ports(s.graph).size());
    const int need = static_cast<int>(bold_anchors(st.kind, st.bold).size());
    const int size = member_template(st.kind, st.bold.dot_half_edges).graph.num_vertices();
    if (need > have || have + port_gain(st) < 3 || s.graph.num_vertices() + size + 2 > p.max_vertices) continue;
    push(std::move(st));
  }
  for (int c = static_cast<int>(ports(s.graph).size()); c > 0; c = static_cast<int>(ports(s.graph).size())) {
    Step st;
    st.kind = {Kind::dot};
    st.bold.dot_half_edges = c % 3 == 0 ? 3 : 2;
    if (c < 3 || !push(std::move(st))) return std::nullopt;
  }
  if (s.graph.num_vertices() > p.max_vertices) return std::nullopt;
  return seq;
}

}  // namespace detail

/// Seed-deterministic random fork-graph building sequence.
inline BuildingSequence random_fork_graph(const ForkGenParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < p.retries; ++attempt) {
    auto seq = detail::try_generate(p, rng);
    if (!seq) continue;
    if (p.require && std::none_of(seq->steps.begin(), seq->steps.end(), [&](const Step& st) {
          return st.type == Step::Type::member && st.kind.kind == p.require->kind &&
                 (st.kind.kind != Kind::big_fork || st.kind.j == p.require->j);
        }))
      continue;
    if (p.lean && !is_lean(*seq)) continue;
    return *seq;
  }
  throw LimitError("random_fork_graph: no valid sequence within the retry budget");
}

}  // namespace dcdc
