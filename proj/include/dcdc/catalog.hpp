#pragma once

#include <map>
#include <mutex>
#include <random>
#include <vector>

#include "dcdc/connectivity.hpp"
#include "dcdc/graph.hpp"
#include "dcdc/isomorphism.hpp"

namespace dcdc {

inline Graph triangle_graph() { return graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph k4_graph() { return graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline Graph k33_graph() {
  Graph g(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) g.add_edge(a, b);
  return g;
}

/// Triangular prism (K4 after one Y-Delta).
inline Graph prism_graph() {
  return graph_from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, i + 5);
  }
  return g;
}

/// Smallest cubic graph with a bridge: two copies of K4 with one edge
/// subdivided, the subdivision vertices joined by the bridge (edge id 14).
inline Graph bridged_cubic_graph() {
  Graph g(10);
  for (int off : {0, 5}) {
    // K4 on off..off+3 minus edge (off, off+1), subdivided by off+4
    g.add_edge(off + 0, off + 2);
    g.add_edge(off + 0, off + 3);
    g.add_edge(off + 1, off + 2);
    g.add_edge(off + 1, off + 3);
    g.add_edge(off + 2, off + 3);
    g.add_edge(off + 0, off + 4);
    g.add_edge(off + 1, off + 4);
  }
  g.add_edge(4, 9);
  return g;
}

namespace detail {

/// Sorted per-vertex distance profiles; a cheap but sharp invariant for
/// bucketing small cubic graphs before exact isomorphism checks.
inline std::vector<std::vector<int>> distance_profile(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> prof;
  for (VertexId s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1), queue{s};
    dist[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (VertexId w : g.neighbors(queue[i]))
        if (dist[w] < 0) {
          dist[w] = dist[queue[i]] + 1;
          queue.push_back(w);
        }
    std::vector<int> counts(static_cast<std::size_t>(n + 1), 0);
    for (int d : dist) counts[d < 0 ? n : d]++;
    prof.push_back(std::move(counts));
  }
  std::sort(prof.begin(), prof.end());
  return prof;
}

class CubicEnumerator {
 public:
  explicit CubicEnumerator(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  std::vector<Graph> run() {
    if (n_ < 4 || n_ % 2 != 0) return {};
    next_label_ = 1;
    fill(0, 0, -1);
    return std::move(out_);
  }

 private:
  int smallest_unsaturated() const {
    for (int v = 0; v < next_label_; ++v)
      if (adj_[v].size() < 3) return v;
    return -1;
  }

  // Fill remaining slots of v with increasing neighbor labels; u == next_label_
  // introduces a fresh vertex, which keeps every generated graph connected.
  void fill(int v, int placed, int last) {
    if (adj_[v].size() == 3) {
      const int w = smallest_unsaturated();
      if (w < 0) {
        if (next_label_ == n_) emit();
        return;
      }
      fill(w, 0, -1);
      return;
    }
    const int limit = std::min(next_label_, n_ - 1);
    for (int u = std::max(last + 1, v + 1); u <= limit; ++u) {
      if (adj_[u].size() >= 3) continue;
      if (std::find(adj_[v].begin(), adj_[v].end(), u) != adj_[v].end()) continue;
      const bool fresh = (u == next_label_);
      if (u == next_label_ && next_label_ >= n_) continue;
      if (fresh) ++next_label_;
      adj_[v].push_back(u);
      adj_[u].push_back(v);
      fill(v, placed + 1, u);
      adj_[v].pop_back();
      adj_[u].pop_back();
      if (fresh) --next_label_;
    }
  }

  void emit() {
    Graph g(n_);
    for (int v = 0; v < n_; ++v)
      for (int u : adj_[v])
        if (u > v) g.add_edge(v, u);
    auto key = distance_profile(g);
    auto& bucket = buckets_[key];
    for (int idx : bucket)
      if (is_isomorphic(out_[idx], g)) return;
    bucket.push_back(static_cast<int>(out_.size()));
    out_.push_back(std::move(g));
  }

  int n_;
  int next_label_ = 1;
  std::vector<std::vector<int>> adj_;
  std::vector<Graph> out_;
  std::map<std::vector<std::vector<int>>, std::vector<int>> buckets_;
};

}  // namespace detail

/// All connected simple cubic graphs on n vertices, one per isomorphism class.
/// Results are memoised per n.
inline std::vector<Graph> connected_cubic_graphs(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Graph>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::CubicEnumerator(n).run()).first;
  return it->second;
}

/// Connected simple cubic graphs with at most max_n vertices, in order of size.
inline std::vector<Graph> cubic_catalog(int max_n, bool bridgeless_only) {
  std::vector<Graph> out;
  for (int n = 4; n <= max_n; n += 2)
    for (auto& g : connected_cubic_graphs(n))
      if (!bridgeless_only || is_bridgeless(g)) out.push_back(std::move(g));
  return out;
}

/// Uniform-ish random simple cubic graph via the pairing model with
/// rejection. n must be even and >= 4.
template <class Rng>
Graph random_cubic_graph(int n, Rng& rng, bool require_bridgeless = true) {
  if (n < 4 || n % 2 != 0) throw PreconditionError("random_cubic_graph needs even n >= 4");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> points(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < 3 * n; ++i) points[i] = i / 3;
    std::shuffle(points.begin(), points.end(), rng);
    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      const int a = points[i], b = points[i + 1];
      if (a == b || g.adjacent(a, b)) ok = false;
      else g.add_edge(a, b);
    }
    if (!ok || !is_connected(g)) continue;
    if (require_bridgeless && !is_bridgeless(g)) continue;
    return g;
  }
  throw Error("random_cubic_graph: rejection sampling failed");
}

/// Apply a vertex permutation.
inline Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
  Graph h(g.num_vertices());
  for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v]);
  return h;
}

}  // namespace dcdc
