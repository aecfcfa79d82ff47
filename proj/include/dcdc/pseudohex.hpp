#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcdc/connectivity.hpp"
#include "dcdc/graph.hpp"
#include "dcdc/hexagon.hpp"

namespace dcdc {

/// Red edge stored with its smaller endpoint first.
using RedEdge = std::pair<VertexId, VertexId>;

/// Blue partner of hexagon vertex x under matching bit b: 0 = {01,23,45}, 1 = {12,34,50}.
inline VertexId blue_partner(VertexId x, int bit) {
  const int i = x % 6;
  const bool up = (i % 2 == 0) == (bit == 0);
  return 6 * (x / 6) + (up ? (i + 1) % 6 : (i + 5) % 6);
}

/// Tri-coloured structure of blue hexagons, red edges and a white perfect
/// matching. Vertex ids follow the hexagon graph it came from (6h + i), so
/// X = even ids, Y = odd ids and bar() is unchanged. Chords {x, bar x} of
/// alive hexagons are implicit; every other red edge, duplicated chords
/// included, is stored in a sorted multiset.
class Pseudohex {
 public:
  Pseudohex() = default;

  Pseudohex(std::shared_ptr<const Graph> base, std::vector<char> alive, std::vector<VertexId> mate,
            std::vector<char> real, std::vector<Walk> provenance, std::vector<RedEdge> red)
      : base_(std::move(base)), alive_(std::move(alive)), mate_(std::move(mate)), real_(std::move(real)),
        prov_(std::move(provenance)), red_(std::move(red)) {
    normalize_red();
  }

  /// Unused slots of a sub-cubic base stay unmatched; check_invariants flags them.
  static Pseudohex from_hexagon_graph(const HexagonGraph& hg) {
    const int n = hg.num_hexagons();
    Pseudohex k;
    k.base_ = std::make_shared<const Graph>(hg.base());
    k.alive_.assign(static_cast<std::size_t>(n), 1);
    k.mate_.assign(static_cast<std::size_t>(6 * n), -1);
    k.real_.assign(static_cast<std::size_t>(6 * n), 0);
    k.prov_.assign(static_cast<std::size_t>(6 * n), {});
    for (VertexId x = 0; x < 6 * n; ++x) {
      k.mate_[x] = hg.white_mate(x);
      if (HexagonGraph::in_x(x) && k.mate_[x] >= 0) k.prov_[x] = {hg.white_dart(x)};
    }
    k.normalize_red();
    k.refresh_real_flags();
    return k;
  }

  [[nodiscard]] const Graph& base() const { return *base_; }
  [[nodiscard]] const std::shared_ptr<const Graph>& base_ptr() const { return base_; }
  [[nodiscard]] int capacity() const { return static_cast<int>(alive_.size()); }
  [[nodiscard]] bool alive(VertexId h) const { return alive_.at(h) != 0; }
  [[nodiscard]] bool vertex_alive(VertexId x) const { return alive_.at(x / 6) != 0; }
  [[nodiscard]] bool empty() const { return std::none_of(alive_.begin(), alive_.end(), [](char c) { return c; }); }

  [[nodiscard]] std::vector<VertexId> hexagons() const {
    std::vector<VertexId> out;
    for (VertexId h = 0; h < capacity(); ++h)
      if (alive_[h]) out.push_back(h);
    return out;
  }
  [[nodiscard]] std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (VertexId h : hexagons())
      for (int i = 0; i < 6; ++i) out.push_back(6 * h + i);
    return out;
  }

  [[nodiscard]] VertexId mate(VertexId x) const { return mate_.at(x); }
  /// Stored real flag of the white edge at x.
  [[nodiscard]] bool is_real(VertexId x) const { return real_.at(x) != 0; }
  /// Provenance of the white edge at x, oriented from its X end to its Y end.
  [[nodiscard]] const Walk& provenance(VertexId x) const { return prov_.at(HexagonGraph::in_x(x) ? x : mate_.at(x)); }
  [[nodiscard]] const std::vector<RedEdge>& extra_red() const { return red_; }
  [[nodiscard]] int extra_red_degree(VertexId x) const { return red_deg_.at(x); }

  /// All red edges incident to x, the chord first.
  [[nodiscard]] std::vector<VertexId> red_neighbors(VertexId x) const {
    std::vector<VertexId> out{HexagonGraph::bar(x)};
    for (auto [a, b] : red_) {
      if (a == x) out.push_back(b);
      else if (b == x) out.push_back(a);
    }
    return out;
  }

  /// Real-edge test straight from the definition.
  [[nodiscard]] bool compute_real(VertexId x) const {
    const VertexId y = mate_.at(x);
    if (y < 0) return false;
    const VertexId bx = HexagonGraph::bar(x), by = HexagonGraph::bar(y);
    if (bx == y || mate_[bx] != by) return false;
    return red_deg_[x] == 0 && red_deg_[y] == 0 && red_deg_[bx] == 0 && red_deg_[by] == 0;
  }

  [[nodiscard]] bool flags_consistent() const {
    for (VertexId x : vertices())
      if (is_real(x) != compute_real(x)) return false;
    return true;
  }

  void refresh_real_flags() {
    for (VertexId x = 0; x < static_cast<VertexId>(real_.size()); ++x) real_[x] = vertex_alive(x) && compute_real(x);
  }

  /// Adds an extra red edge between two alive vertices of different classes.
  void add_red_edge(VertexId a, VertexId b) {
    if (!vertex_alive(a) || !vertex_alive(b) || HexagonGraph::in_x(a) == HexagonGraph::in_x(b))
      throw PreconditionError("red edge must join alive vertices of different classes");
    red_.emplace_back(a, b);
    normalize_red();
    refresh_real_flags();
  }

  /// Empty string when every structural invariant holds, else the first violation.
  [[nodiscard]] std::string check_invariants() const {
    const int n = static_cast<int>(mate_.size());
    if (n != 6 * capacity() || real_.size() != mate_.size() || prov_.size() != mate_.size())
      return "array sizes disagree";
    for (VertexId x = 0; x < n; ++x) {
      const VertexId y = mate_[x];
      if (!vertex_alive(x)) {
        if (y >= 0) return "dead vertex " + std::to_string(x) + " has a white edge";
        continue;
      }
      if (y < 0 || y >= n || !vertex_alive(y)) return "vertex " + std::to_string(x) + " lacks a white edge";
      if (mate_[y] != x) return "white edges at " + std::to_string(x) + " are not a matching";
      if (HexagonGraph::in_x(x) == HexagonGraph::in_x(y)) return "white edge inside a class at " + std::to_string(x);
      if (is_real(x) != compute_real(x)) return "stale real flag at " + std::to_string(x);
      if (HexagonGraph::in_x(x) && base_) {
        const Walk& w = prov_[x];
        if (w.empty()) return "white edge at " + std::to_string(x) + " has no provenance";
        if (base_->tail(w.front()) != x / 6 || base_->head(w.back()) != y / 6)
          return "provenance of " + std::to_string(x) + " has wrong endpoints";
        for (std::size_t i = 1; i < w.size(); ++i)
          if (base_->head(w[i - 1]) != base_->tail(w[i])) return "provenance of " + std::to_string(x) + " breaks";
      }
    }
    for (auto [a, b] : red_) {
      if (a < 0 || b >= n || !vertex_alive(a) || !vertex_alive(b)) return "red edge at a dead vertex";
      if (HexagonGraph::in_x(a) == HexagonGraph::in_x(b)) return "red edge inside a class";
    }
    return "";
  }

  friend bool operator==(const Pseudohex& a, const Pseudohex& b) {
    return a.alive_ == b.alive_ && a.mate_ == b.mate_ && a.real_ == b.real_ && a.prov_ == b.prov_ && a.red_ == b.red_;
  }

 private:
  friend struct JointReducer;

  void normalize_red() {
    for (auto& r : red_)
      if (r.first > r.second) std::swap(r.first, r.second);
    std::sort(red_.begin(), red_.end());
    red_deg_.assign(mate_.size(), 0);
    for (auto [a, b] : red_) ++red_deg_.at(a), ++red_deg_.at(b);
  }

  std::shared_ptr<const Graph> base_;
  std::vector<char> alive_;
  std::vector<VertexId> mate_;
  std::vector<char> real_;
  std::vector<Walk> prov_;
  std::vector<RedEdge> red_;
  std::vector<int> red_deg_;
};

inline Pseudohex from_hexagon_graph(const HexagonGraph& hg) { return Pseudohex::from_hexagon_graph(hg); }

/// True iff some red edge is parallel to a white edge.
inline bool has_end(const Pseudohex& k) {
  for (VertexId x : k.vertices())
    if (k.mate(x) == HexagonGraph::bar(x)) return true;
  for (auto [a, b] : k.extra_red())
    if (k.mate(a) == b) return true;
  return false;
}

/// Two white edges (named by one endpoint each) are red-connected if some red
/// edge touches both.
inline bool red_connected(const Pseudohex& k, VertexId e, VertexId f) {
  const VertexId e2 = k.mate(e), f2 = k.mate(f);
  if (e2 < 0 || f2 < 0) throw PreconditionError("red_connected needs white edges");
  auto in_f = [&](VertexId v) { return v == f || v == f2; };
  for (VertexId end : {e, e2})
    for (VertexId other : k.red_neighbors(end))
      if (in_f(other) || in_f(end)) return true;
  return false;
}

/// G^K: one vertex per hexagon, one edge per pair of real white edges.
struct Skeleton {
  Graph graph;
  std::vector<VertexId> hexagon;  ///< skeleton vertex -> hexagon id
  std::vector<int> index;         ///< hexagon id -> skeleton vertex, -1 if absent
  int loops = 0;
};

inline Skeleton skeleton(const Pseudohex& k) {
  Skeleton s;
  s.index.assign(static_cast<std::size_t>(k.capacity()), -1);
  s.hexagon = k.hexagons();
  for (std::size_t i = 0; i < s.hexagon.size(); ++i) s.index[s.hexagon[i]] = static_cast<int>(i);
  s.graph = Graph(static_cast<int>(s.hexagon.size()));
  for (VertexId x : k.vertices()) {
    if (!HexagonGraph::in_x(x) || !k.is_real(x)) continue;
    const VertexId y = k.mate(x);
    if (x > HexagonGraph::bar(y)) continue;
    if (x / 6 == y / 6) {
      ++s.loops;
      continue;
    }
    s.graph.add_edge(s.index[x / 6], s.index[y / 6]);
  }
  return s;
}

struct ProperReport {
  bool has_end = false;
  bool two_connected = false;
  bool has_two_cycle = false;
  bool proper = false;
};

inline ProperReport properness_report(const Pseudohex& k) {
  ProperReport r;
  r.has_end = has_end(k);
  const Skeleton s = skeleton(k);
  r.has_two_cycle = s.loops > 0 || s.graph.has_parallel_edges();
  r.two_connected = s.graph.num_vertices() >= 3 && is_two_connected(s.graph);
  r.proper = !r.has_end && r.two_connected && !r.has_two_cycle;
  return r;
}

/// Hexagon -> blue matching bit for every hexagon being reduced.
struct ReductionPlan {
  std::map<VertexId, int> choice;

  [[nodiscard]] std::vector<VertexId> hexagons() const {
    std::vector<VertexId> out;
    for (auto [h, b] : choice) out.push_back(h);
    return out;
  }
  friend bool operator==(const ReductionPlan&, const ReductionPlan&) = default;
};

/// An alternating white/blue component of a joint reduction. Paths run from
/// their X end to their Y end; cycles start at their smallest X vertex.
struct ContractedPath {
  bool closed = false;
  std::vector<VertexId> vertices;
  int derived = 0;
  bool red_pair = false;  ///< closed and containing both ends of a red edge
};

struct ReductionOutcome {
  Pseudohex result;
  std::vector<ContractedPath> contracted;
  bool safe = false;
  bool correct = false;
  std::vector<Walk> cycles;

  [[nodiscard]] bool ok() const { return safe && correct; }
};

/// Transitive contraction of a set of hexagons. Reusable across plans on the
/// same pseudohex and hexagon set; `evaluate` skips building the result.
struct JointReducer {
  JointReducer(const Pseudohex& k, std::vector<VertexId> hexes) : k_(k), hexes_(std::move(hexes)) {
    const int n = static_cast<int>(k.mate_.size());
    bit_.assign(static_cast<std::size_t>(k.capacity()), -1);
    for (VertexId h : hexes_) {
      if (!k.alive(h)) throw PreconditionError("hexagon " + std::to_string(h) + " is not in the pseudohex");
      bit_[h] = 0;
    }
    for (VertexId x : k.vertices())
      if (k.mate_[x] < 0) throw PreconditionError("reduction needs a perfect white matching");
    comp_.assign(static_cast<std::size_t>(n), -1);
    img_.assign(static_cast<std::size_t>(n), -1);
    newmate_ = k.mate_;
    red_at_.assign(static_cast<std::size_t>(n), {});
    for (std::size_t i = 0; i < k.red_.size(); ++i) {
      red_at_[k.red_[i].first].push_back(static_cast<int>(i));
      red_at_[k.red_[i].second].push_back(static_cast<int>(i));
    }
    for (auto [a, b] : k.red_)
      if (k.mate_[a] == b && !in_s(a) && !in_s(b)) old_end_ = true;
    for (VertexId x : k.vertices())
      if (!in_s(x) && k.mate_[x] == HexagonGraph::bar(x)) old_end_ = true;
  }

  [[nodiscard]] const std::vector<VertexId>& hexagons() const { return hexes_; }

  /// Safe and correct verdicts for the given bits (aligned with hexagons()).
  std::pair<bool, bool> evaluate(const std::vector<int>& bits) {
    run(bits);
    return {safe_, correct_};
  }

  ReductionOutcome reduce(const std::vector<int>& bits) {
    run(bits);
    ReductionOutcome out;
    out.safe = safe_;
    out.correct = correct_;
    out.contracted = parts_;
    Pseudohex r;
    r.base_ = k_.base_;
    r.alive_ = k_.alive_;
    for (VertexId h : hexes_) r.alive_[h] = 0;
    r.mate_ = newmate_;
    r.prov_ = k_.prov_;
    for (VertexId h : hexes_)
      for (int i = 0; i < 6; ++i) r.mate_[6 * h + i] = -1, r.prov_[6 * h + i].clear();
    for (const ContractedPath& p : parts_) {
      Walk w;
      for (std::size_t i = 0; i + 1 < p.vertices.size(); i += 2) {
        const Walk& piece = k_.prov_[p.vertices[i]];
        w.insert(w.end(), piece.begin(), piece.end());
      }
      if (p.closed) out.cycles.push_back(std::move(w));
      else r.prov_[p.vertices.front()] = std::move(w);
    }
    r.red_ = new_red_;
    r.real_.assign(r.mate_.size(), 0);
    r.normalize_red();
    r.refresh_real_flags();
    for (VertexId x : r.vertices())
      if (r.real_[x] && (!k_.real_[x] || k_.mate_[x] != r.mate_[x]))
        throw Error("reduction created a real white edge at " + std::to_string(x));
    out.result = std::move(r);
    return out;
  }

 private:
  [[nodiscard]] bool in_s(VertexId x) const { return bit_[x / 6] >= 0; }
  [[nodiscard]] VertexId partner(VertexId x) const { return blue_partner(x, bit_[x / 6]); }

  void run(const std::vector<int>& bits) {
    if (bits.size() != hexes_.size()) throw PreconditionError("plan size mismatch");
    for (std::size_t i = 0; i < hexes_.size(); ++i) bit_[hexes_[i]] = bits[i];
    for (VertexId x : touched_) comp_[x] = img_[x] = -1, newmate_[x] = k_.mate_[x];
    touched_.clear();
    parts_.clear();
    new_red_.clear();
    ends_.clear();
    safe_ = true;

    for (VertexId h : hexes_)
      for (int i = 0; i < 6; i += 2) {
        const VertexId a = k_.mate_[6 * h + i + 1];
        if (!in_s(a)) trace_path(a);
      }
    for (VertexId h : hexes_)
      for (int i = 0; i < 6; i += 2)
        if (comp_[6 * h + i] < 0) trace_cycle(6 * h + i);

    for (VertexId h : hexes_)
      for (int i = 0; i < 6; i += 2) rewire(6 * h + i, HexagonGraph::bar(6 * h + i));
    for (VertexId h : hexes_)
      for (int i = 0; i < 6; ++i)
        for (int r : red_at_[6 * h + i]) rewire_once(r);
    for (const ContractedPath& p : parts_)
      if (p.derived > 1 || p.red_pair) safe_ = false;

    correct_ = !old_end_;
    for (auto [a, b] : new_red_)
      if (newmate_[a] == b) correct_ = false;
    for (VertexId p : ends_) {
      if (newmate_[p] == HexagonGraph::bar(p)) correct_ = false;
      for (int r : red_at_[p]) {
        auto [a, b] = k_.red_[r];
        if (!in_s(a) && !in_s(b) && newmate_[a] == b) correct_ = false;
      }
    }
    for (std::size_t i = 0; i < k_.red_.size(); ++i) {
      auto [a, b] = k_.red_[i];
      if (!in_s(a) && !in_s(b)) new_red_.push_back(k_.red_[i]);
    }
    seen_red_.clear();
  }

  void trace_path(VertexId a) {
    ContractedPath p;
    const int id = static_cast<int>(parts_.size());
    VertexId x = a;
    p.vertices.push_back(a);
    for (;;) {
      const VertexId y = k_.mate_[x];
      p.derived += !k_.real_[x];
      p.vertices.push_back(y);
      if (!in_s(y)) break;
      const VertexId w = partner(y);
      p.vertices.push_back(w);
      x = w;
    }
    const VertexId b = p.vertices.back();
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
      const VertexId w = p.vertices[i];
      comp_[w] = id;
      img_[w] = HexagonGraph::in_x(w) ? a : b;
      touched_.push_back(w);
    }
    newmate_[a] = b, newmate_[b] = a;
    touched_.push_back(a), touched_.push_back(b);
    ends_.push_back(a), ends_.push_back(b);
    parts_.push_back(std::move(p));
  }

  void trace_cycle(VertexId start) {
    ContractedPath p;
    p.closed = true;
    const int id = static_cast<int>(parts_.size());
    VertexId x = start;
    do {
      const VertexId y = k_.mate_[x];
      p.derived += !k_.real_[x];
      p.vertices.push_back(x);
      p.vertices.push_back(y);
      comp_[x] = comp_[y] = id;
      touched_.push_back(x), touched_.push_back(y);
      x = partner(y);
    } while (x != start);
    parts_.push_back(std::move(p));
  }

  void rewire_once(int r) {
    if (std::find(seen_red_.begin(), seen_red_.end(), r) != seen_red_.end()) return;
    seen_red_.push_back(r);
    rewire(k_.red_[r].first, k_.red_[r].second);
  }

  void rewire(VertexId u, VertexId w) {
    auto image = [&](VertexId v) { return in_s(v) ? img_[v] : v; };
    const VertexId pu = image(u), pw = image(w);
    if (pu >= 0 && pw >= 0) new_red_.emplace_back(pu, pw);
    else if (pu >= 0) new_red_.emplace_back(pu, HexagonGraph::bar(pu));
    else if (pw >= 0) new_red_.emplace_back(pw, HexagonGraph::bar(pw));
    else if (comp_[u] == comp_[w]) parts_[comp_[u]].red_pair = true;
  }

  const Pseudohex& k_;
  std::vector<VertexId> hexes_;
  std::vector<int> bit_;
  std::vector<int> comp_;
  std::vector<VertexId> img_, newmate_, touched_, ends_;
  std::vector<std::vector<int>> red_at_;
  std::vector<int> seen_red_;
  std::vector<ContractedPath> parts_;
  std::vector<RedEdge> new_red_;
  bool old_end_ = false, safe_ = true, correct_ = true;
};

inline ReductionOutcome joint_reduce(const Pseudohex& k, const ReductionPlan& plan) {
  JointReducer r(k, plan.hexagons());
  std::vector<int> bits;
  for (auto [h, b] : plan.choice) bits.push_back(b);
  return r.reduce(bits);
}

inline ReductionOutcome reduce_hexagon(const Pseudohex& k, VertexId h, int bit) {
  return joint_reduce(k, ReductionPlan{{{h, bit}}});
}

/// Oracle: first plan in lexicographic order (smallest hexagon most
/// significant, bit 0 before bit 1) that is safe and correct.
inline std::optional<ReductionPlan> find_safe_reduction(const Pseudohex& k, std::vector<VertexId> hexes,
                                                        int cap = 20) {
  std::sort(hexes.begin(), hexes.end());
  hexes.erase(std::unique(hexes.begin(), hexes.end()), hexes.end());
  const int n = static_cast<int>(hexes.size());
  if (n > cap) throw LimitError("find_safe_reduction: " + std::to_string(n) + " hexagons exceed cap " + std::to_string(cap));
  JointReducer r(k, hexes);
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int i = 0; i < n; ++i) bits[i] = static_cast<int>((mask >> (n - 1 - i)) & 1);
    if (auto [safe, correct] = r.evaluate(bits); safe && correct) {
      ReductionPlan p;
      for (int i = 0; i < n; ++i) p.choice[hexes[i]] = bits[i];
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace dcdc
