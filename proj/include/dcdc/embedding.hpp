#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dcdc/connectivity.hpp"
#include "dcdc/hexagon.hpp"

namespace dcdc {

/// One bit per hexagon: 0 selects {01,23,45}, 1 selects {12,34,50}.
struct BlueMatching {
  std::vector<std::uint8_t> bits;

  friend bool operator==(const BlueMatching&, const BlueMatching&) = default;

  /// Blue partner of a hexagon vertex under this matching.
  [[nodiscard]] VertexId partner(VertexId x) const {
    const int i = HexagonGraph::index_of(x);
    const bool up = (i % 2 == 0) == (bits[HexagonGraph::hexagon_of(x)] == 0);
    return HexagonGraph::vertex(HexagonGraph::hexagon_of(x), up ? i + 1 : i - 1);
  }
};

/// Per-vertex cyclic order of incident edges, stored as (e, pi(e), pi^2(e))
/// starting from the slot-0 edge.
struct RotationSystem {
  std::vector<std::array<EdgeId, 3>> order;

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;

  [[nodiscard]] EdgeId next(VertexId v, EdgeId e) const {
    const auto& o = order.at(v);
    for (int k = 0; k < 3; ++k)
      if (o[k] == e) return o[(k + 1) % 3];
    throw PreconditionError("rotation: edge not incident to vertex");
  }
};

/// Slot permutation sigma(k) induced on a hexagon by each matching choice:
/// entering through in_vertex(k), the blue edge leads to out_vertex(sigma(k)).
inline constexpr std::array<std::array<int, 3>, 2> kSlotSuccessor{{{2, 0, 1}, {1, 2, 0}}};

inline RotationSystem rotation_of_matching(const HexagonGraph& hg, const BlueMatching& m) {
  RotationSystem r;
  r.order.resize(static_cast<std::size_t>(hg.num_hexagons()));
  for (VertexId v = 0; v < hg.num_hexagons(); ++v) {
    const auto& s = kSlotSuccessor[m.bits.at(v)];
    r.order[v] = {hg.slot_edge(v, 0), hg.slot_edge(v, s[0]), hg.slot_edge(v, s[s[0]])};
  }
  return r;
}

inline BlueMatching matching_of_rotation(const HexagonGraph& hg, const RotationSystem& r) {
  BlueMatching m;
  m.bits.resize(static_cast<std::size_t>(hg.num_hexagons()));
  for (VertexId v = 0; v < hg.num_hexagons(); ++v) {
    const EdgeId after0 = r.order.at(v)[1];
    if (after0 == hg.slot_edge(v, kSlotSuccessor[0][0])) m.bits[v] = 0;
    else if (after0 == hg.slot_edge(v, kSlotSuccessor[1][0])) m.bits[v] = 1;
    else throw PreconditionError("rotation does not match the hexagon graph");
  }
  return m;
}

/// Lazily enumerates all 2^n blue matchings, in Gray-code or lexicographic
/// order. Bit j of the index drives hexagon j.
class BlueMatchingEnumerator {
 public:
  enum class Order { gray, lex };

  BlueMatchingEnumerator(int n, Order order, int cap) : n_(n), order_(order) {
    if (n > cap || n > 62) throw LimitError("matching enumeration: " + std::to_string(n) + " hexagons exceed cap");
  }

  [[nodiscard]] std::uint64_t size() const { return std::uint64_t{1} << n_; }

  [[nodiscard]] std::uint64_t code(std::uint64_t index) const { return order_ == Order::gray ? index ^ (index >> 1) : index; }

  [[nodiscard]] BlueMatching at(std::uint64_t index) const {
    BlueMatching m;
    m.bits.resize(static_cast<std::size_t>(n_));
    const std::uint64_t c = code(index);
    for (int j = 0; j < n_; ++j) m.bits[j] = static_cast<std::uint8_t>((c >> j) & 1);
    return m;
  }

  /// Advance; returns false once exhausted.
  bool next(BlueMatching& out) {
    if (pos_ >= size()) return false;
    out = at(pos_++);
    return true;
  }

 private:
  int n_;
  Order order_;
  std::uint64_t pos_ = 0;
};

struct Face {
  std::vector<VertexId> hex_cycle;  ///< hexagon-graph vertices, starting at an X vertex, white edge first
  Walk walk;                        ///< induced closed walk in G
};

struct FaceSet {
  std::vector<Face> faces;
  [[nodiscard]] int size() const { return static_cast<int>(faces.size()); }
};

/// Cycles of M u W (M and W are disjoint perfect matchings, so M delta W =
/// M u W), each with its induced directed walk in G.
inline FaceSet faces_of_matching(const HexagonGraph& hg, const BlueMatching& m) {
  if (!hg.base().is_cubic()) throw PreconditionError("faces_of_matching needs the hexagon graph of a cubic graph");
  const int nh = hg.graph().num_vertices();
  std::vector<bool> seen(static_cast<std::size_t>(nh), false);
  FaceSet fs;
  for (VertexId start = 0; start < nh; start += 2) {
    if (seen[start]) continue;
    Face f;
    VertexId x = start;
    do {
      const VertexId y = hg.white_mate(x);
      seen[x] = seen[y] = true;
      f.hex_cycle.push_back(x);
      f.hex_cycle.push_back(y);
      f.walk.push_back(hg.white_dart(x));
      x = m.partner(y);
    } while (x != start);
    fs.faces.push_back(std::move(f));
  }
  return fs;
}

/// Edmonds face tracing: arriving at w along e, leave along pi_w(e).
inline FaceSet trace_faces(const Graph& g, const RotationSystem& r) {
  if (!g.is_cubic()) throw PreconditionError("trace_faces needs a cubic graph");
  std::vector<std::array<bool, 2>> used(static_cast<std::size_t>(g.num_edges()), {false, false});
  FaceSet fs;
  for (EdgeId e0 = 0; e0 < g.num_edges(); ++e0)
    for (int d0 = 0; d0 < 2; ++d0) {
      if (used[e0][d0]) continue;
      Face f;
      Dart d{e0, d0};
      do {
        used[d.edge][d.dir] = true;
        f.walk.push_back(d);
        const VertexId w = g.head(d);
        d = g.dart_from(r.next(w, d.edge), w);
      } while (!(d == Dart{e0, d0}));
      fs.faces.push_back(std::move(f));
    }
  return fs;
}

/// Faces as a canonical set of cyclic dart sequences (each rotated to start
/// at its smallest dart), for comparing partitions.
inline std::vector<Walk> canonical_faces(const FaceSet& fs) {
  std::vector<Walk> out;
  for (const Face& f : fs.faces) {
    Walk w = f.walk;
    std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_dual_loop(const HexagonGraph& hg, const BlueMatching& m) {
  const auto fs = faces_of_matching(hg, m);
  std::vector<int> face(static_cast<std::size_t>(hg.graph().num_vertices()), -1);
  for (int i = 0; i < fs.size(); ++i)
    for (VertexId x : fs.faces[i].hex_cycle) face[x] = i;
  for (VertexId x = 0; x < hg.graph().num_vertices(); ++x)
    if (face[x] == face[HexagonGraph::bar(x)]) return true;
  return false;
}

inline int genus_of(const Graph& g, const FaceSet& faces) {
  const int twice = 2 - g.num_vertices() + g.num_edges() - faces.size();
  if (twice < 0 || twice % 2 != 0) throw Error("genus_of: Euler characteristic is inconsistent");
  return twice / 2;
}

struct DirectedCycleCover {
  std::vector<Walk> walks;
  int genus = -1;  ///< genus of the embedding the cover came from, -1 if unknown
};

/// Number of walks that revisit a vertex (reported, never enforced).
inline int count_nonsimple_walks(const Graph& g, const DirectedCycleCover& c) {
  int bad = 0;
  for (const Walk& w : c.walks) {
    std::vector<VertexId> vs;
    for (Dart d : w) vs.push_back(g.tail(d));
    std::sort(vs.begin(), vs.end());
    bad += std::adjacent_find(vs.begin(), vs.end()) != vs.end() ? 1 : 0;
  }
  return bad;
}

inline DirectedCycleCover extract_dcdc(const HexagonGraph& hg, const BlueMatching& m) {
  if (has_dual_loop(hg, m)) throw PreconditionError("extract_dcdc: matching has a dual loop");
  const auto fs = faces_of_matching(hg, m);
  DirectedCycleCover c;
  for (const Face& f : fs.faces) {
    std::vector<bool> on(static_cast<std::size_t>(hg.base().num_edges()), false);
    for (Dart d : f.walk) {
      if (on[d.edge]) throw Error("extract_dcdc: face traverses an edge twice");
      on[d.edge] = true;
    }
    c.walks.push_back(f.walk);
  }
  c.genus = genus_of(hg.base(), fs);
  return c;
}

struct CoverReport {
  bool ok = false;
  EdgeId first_bad_edge = -1;
  int bad_walk = -1;
  std::string message;
  std::vector<std::array<int, 2>> tally;  ///< traversals per edge in dir 0 / dir 1
};

inline CoverReport verify_dcdc(const Graph& g, const DirectedCycleCover& c) {
  CoverReport r;
  r.tally.assign(static_cast<std::size_t>(g.num_edges()), {0, 0});
  for (std::size_t i = 0; i < c.walks.size(); ++i) {
    const Walk& w = c.walks[i];
    if (w.empty()) {
      r.bad_walk = static_cast<int>(i);
      r.message = "walk " + std::to_string(i) + " is empty";
      return r;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Dart d = w[k];
      if (d.edge < 0 || d.edge >= g.num_edges() || (d.dir != 0 && d.dir != 1)) {
        r.bad_walk = static_cast<int>(i);
        r.message = "walk " + std::to_string(i) + " references an invalid dart";
        return r;
      }
      if (g.head(d) != g.tail(w[(k + 1) % w.size()])) {
        r.bad_walk = static_cast<int>(i);
        r.message = "walk " + std::to_string(i) + " is not closed at step " + std::to_string(k);
        return r;
      }
      r.tally[d.edge][d.dir]++;
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (r.tally[e][0] != 1 || r.tally[e][1] != 1) {
      r.first_bad_edge = e;
      r.message = "edge " + std::to_string(e) + " (" + std::to_string(g.edge(e).u) + "," +
                  std::to_string(g.edge(e).v) + ") covered " + std::to_string(r.tally[e][0]) + "/" +
                  std::to_string(r.tally[e][1]) + " times";
      return r;
    }
  r.ok = true;
  return r;
}

inline int default_search_cap() {
  if (const char* s = std::getenv("DCDC_SEARCH_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v <= 62) return static_cast<int>(v);
  }
  return 26;
}

enum class SearchStrategy { exhaustive, pruned };

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::pruned;
  int cap = default_search_cap();
  int threads = 1;
  BlueMatchingEnumerator::Order order = BlueMatchingEnumerator::Order::gray;
};

struct SearchResult {
  BlueMatching matching;
  DirectedCycleCover cover;
  int faces = 0;
  std::uint64_t visited = 0;  ///< matchings (exhaustive) or search nodes (pruned) examined
};

namespace detail {

/// Dart-level kernel shared by both strategies. Dart 2e+d is edge e in
/// direction d; succ[v][k] picks the outgoing slot when entering v at slot k.
class DualLoopKernel {
 public:
  explicit DualLoopKernel(const HexagonGraph& hg) : g_(hg.base()) {
    const int m = g_.num_edges();
    head_.resize(static_cast<std::size_t>(2 * m));
    head_slot_.resize(static_cast<std::size_t>(2 * m));
    out_.resize(static_cast<std::size_t>(g_.num_vertices()));
    for (EdgeId e = 0; e < m; ++e)
      for (int d = 0; d < 2; ++d) {
        const Dart dt{e, d};
        head_[2 * e + d] = g_.head(dt);
        head_slot_[2 * e + d] = hg.slot(e, g_.head(dt));
      }
    for (VertexId v = 0; v < g_.num_vertices(); ++v)
      for (int k = 0; k < 3; ++k) {
        const EdgeId e = hg.slot_edge(v, k);
        out_[v][k] = 2 * e + (g_.edge(e).u == v ? 0 : 1);
      }
    mark_.assign(static_cast<std::size_t>(m), 0);
  }

  [[nodiscard]] int next(int dart, const std::vector<std::uint8_t>& bits) const {
    const VertexId w = head_[dart];
    return out_[w][kSlotSuccessor[bits[w]][head_slot_[dart]]];
  }

  /// True iff some face uses both darts of an edge.
  bool dual_loop(const std::vector<std::uint8_t>& bits) {
    const int nd = static_cast<int>(head_.size());
    std::vector<bool> used(static_cast<std::size_t>(nd), false);
    for (int s = 0; s < nd; ++s) {
      if (used[s]) continue;
      ++stamp_;
      int d = s;
      do {
        used[d] = true;
        if (mark_[d >> 1] == stamp_) return true;
        mark_[d >> 1] = stamp_;
        d = next(d, bits);
      } while (d != s);
    }
    return false;
  }

  int count_faces(const std::vector<std::uint8_t>& bits) const {
    const int nd = static_cast<int>(head_.size());
    std::vector<bool> used(static_cast<std::size_t>(nd), false);
    int f = 0;
    for (int s = 0; s < nd; ++s) {
      if (used[s]) continue;
      ++f;
      for (int d = s; !used[d]; d = next(d, bits)) used[d] = true;
    }
    return f;
  }

  /// Check every face through v that closes using only assigned vertices.
  /// Returns false if such a face holds both darts of an edge.
  bool closed_faces_ok(VertexId v, const std::vector<std::uint8_t>& bits, const std::vector<bool>& assigned) {
    for (int k = 0; k < 3; ++k) {
      const int s = out_[v][k];
      ++stamp_;
      int d = s;
      bool closed = true, loop = false;
      do {
        if (mark_[d >> 1] == stamp_) loop = true;
        mark_[d >> 1] = stamp_;
        if (!assigned[head_[d]]) {
          closed = false;
          break;
        }
        d = next(d, bits);
      } while (d != s);
      if (closed && loop) return false;
    }
    return true;
  }

 private:
  const Graph& g_;
  std::vector<VertexId> head_;
  std::vector<int> head_slot_;
  std::vector<std::array<int, 3>> out_;
  std::vector<int> mark_;
  int stamp_ = 0;
};

inline std::vector<VertexId> bfs_order(const Graph& g) {
  std::vector<VertexId> order{0};
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (EdgeId e : g.ordered_incidence(order[i])) {
      const VertexId w = g.other(e, order[i]);
      if (!seen[w]) {
        seen[w] = true;
        order.push_back(w);
      }
    }
  return order;
}

/// First dual-loop-free matching within [lo, hi) of the enumeration.
inline std::optional<std::uint64_t> scan_range(const HexagonGraph& hg, const BlueMatchingEnumerator& en,
                                               std::uint64_t lo, std::uint64_t hi, std::atomic<std::uint64_t>& best,
                                               std::atomic<std::uint64_t>& visited) {
  DualLoopKernel k(hg);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(hg.num_hexagons()));
  std::uint64_t local = 0;
  for (std::uint64_t i = lo; i < hi; ++i) {
    if ((i & 1023) == 0 && best.load() < lo) break;
    const std::uint64_t c = en.code(i);
    for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = static_cast<std::uint8_t>((c >> j) & 1);
    ++local;
    if (!k.dual_loop(bits)) {
      visited += local;
      return i;
    }
  }
  visited += local;
  return std::nullopt;
}

struct PrunedSearch {
  const HexagonGraph& hg;
  DualLoopKernel kernel;
  std::vector<VertexId> order;
  std::vector<std::uint8_t> bits;
  std::vector<bool> assigned;
  std::uint64_t nodes = 0;

  PrunedSearch(const HexagonGraph& h, std::vector<VertexId> ord)
      : hg(h), kernel(h), order(std::move(ord)),
        bits(static_cast<std::size_t>(h.num_hexagons()), 0),
        assigned(static_cast<std::size_t>(h.num_hexagons()), false) {}

  bool dfs(std::size_t depth) {
    if (depth == order.size()) return true;
    const VertexId v = order[depth];
    assigned[v] = true;
    for (std::uint8_t b = 0; b < 2; ++b) {
      ++nodes;
      bits[v] = b;
      if (kernel.closed_faces_ok(v, bits, assigned) && dfs(depth + 1)) return true;
    }
    assigned[v] = false;
    bits[v] = 0;
    return false;
  }
};

}  // namespace detail

/// Search for a dual-loop-free blue matching and return its verified cover.
inline std::optional<SearchResult> search_dcdc(const Graph& g, const SearchOptions& opt = {}) {
  if (!g.is_cubic()) throw PreconditionError("search_dcdc needs a cubic graph");
  if (g.num_vertices() > opt.cap)
    throw LimitError("search_dcdc: " + std::to_string(g.num_vertices()) + " vertices exceed cap " +
                     std::to_string(opt.cap));
  if (!is_bridgeless(g)) throw PreconditionError("search_dcdc: graph has a bridge");
  const HexagonGraph hg(g);
  SearchResult res;
  if (opt.strategy == SearchStrategy::exhaustive) {
    const BlueMatchingEnumerator en(g.num_vertices(), opt.order, opt.cap);
    const int threads = std::max(1, opt.threads);
    const std::uint64_t total = en.size();
    const std::uint64_t chunks = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(threads) * 16);
    std::atomic<std::uint64_t> best{total}, visited{0}, next_chunk{0};
    auto worker = [&] {
      for (;;) {
        const std::uint64_t c = next_chunk++;
        if (c >= chunks) return;
        const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
        if (best.load() < lo) return;
        if (auto hit = detail::scan_range(hg, en, lo, hi, best, visited)) {
          std::uint64_t cur = best.load();
          while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    res.visited = visited.load();
    if (best.load() == total) return std::nullopt;
    res.matching = en.at(best.load());
  } else {
    detail::PrunedSearch ps(hg, detail::bfs_order(g));
    const bool found = ps.dfs(0);
    res.visited = ps.nodes;
    if (!found) return std::nullopt;
    res.matching.bits = ps.bits;
  }
  res.cover = extract_dcdc(hg, res.matching);
  res.faces = static_cast<int>(res.cover.walks.size());
  if (!verify_dcdc(g, res.cover).ok) throw Error("search_dcdc: extracted cover failed verification");
  return res;
}

}  // namespace dcdc
