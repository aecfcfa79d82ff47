#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

inline constexpr int kMaxIsomorphismVertices = 256;

namespace detail {

struct UnionGraph {
  int n1 = 0;
  std::vector<std::vector<int>> adj;
};

inline UnionGraph make_union(const Graph& a, const Graph& b) {
  UnionGraph u;
  u.n1 = a.num_vertices();
  u.adj.resize(static_cast<std::size_t>(a.num_vertices() + b.num_vertices()));
  for (const Edge& e : a.edges()) {
    u.adj[e.u].push_back(e.v);
    u.adj[e.v].push_back(e.u);
  }
  for (const Edge& e : b.edges()) {
    u.adj[u.n1 + e.u].push_back(u.n1 + e.v);
    u.adj[u.n1 + e.v].push_back(u.n1 + e.u);
  }
  return u;
}

/// Colour refinement to the coarsest equitable partition; colours are
/// renumbered canonically from sorted signatures so both sides agree.
inline void refine(const std::vector<std::vector<int>>& adj, std::vector<int>& colors) {
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v) {
      auto& s = sig[v].first;
      s.push_back(colors[v]);
      std::vector<int> nb;
      for (int w : adj[v]) nb.push_back(colors[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v].second = static_cast<int>(v);
    }
    std::map<std::vector<int>, int> ids;
    for (auto& [s, v] : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (auto& [s, v] : sig) colors[v] = ids[s];
    if (ids.size() == classes) return;
    classes = ids.size();
  }
}

inline bool iso_search(const UnionGraph& u, std::vector<int> colors) {
  refine(u.adj, colors);
  const int total = static_cast<int>(colors.size());
  const int ncol = *std::max_element(colors.begin(), colors.end()) + 1;
  std::vector<int> c1(static_cast<std::size_t>(ncol), 0), c2(static_cast<std::size_t>(ncol), 0);
  for (int v = 0; v < total; ++v) (v < u.n1 ? c1 : c2)[colors[v]]++;
  if (c1 != c2) return false;

  int best = -1;
  for (int c = 0; c < ncol; ++c)
    if (c1[c] > 1 && (best < 0 || c1[c] < c1[best])) best = c;

  if (best < 0) {
    std::vector<int> map(static_cast<std::size_t>(u.n1), -1);
    std::vector<int> by_color(static_cast<std::size_t>(ncol), -1);
    for (int v = u.n1; v < total; ++v) by_color[colors[v]] = v - u.n1;
    for (int v = 0; v < u.n1; ++v) map[v] = by_color[colors[v]];
    for (int v = 0; v < u.n1; ++v) {
      std::vector<int> img;
      for (int w : u.adj[v]) img.push_back(map[w]);
      std::vector<int> actual;
      for (int w : u.adj[u.n1 + map[v]]) actual.push_back(w - u.n1);
      std::sort(img.begin(), img.end());
      std::sort(actual.begin(), actual.end());
      if (img != actual) return false;
    }
    return true;
  }

  int v = 0;
  while (colors[v] != best) ++v;
  for (int w = u.n1; w < total; ++w) {
    if (colors[w] != best) continue;
    auto next = colors;
    next[v] = next[w] = ncol;
    if (iso_search(u, std::move(next))) return true;
  }
  return false;
}

}  // namespace detail

/// Exact isomorphism test by individualisation and refinement.
inline bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() > kMaxIsomorphismVertices || b.num_vertices() > kMaxIsomorphismVertices)
    throw LimitError("is_isomorphic: graph exceeds " + std::to_string(kMaxIsomorphismVertices) + " vertices");
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  if (a.num_vertices() == 0) return true;
  const auto u = detail::make_union(a, b);
  return detail::iso_search(u, std::vector<int>(u.adj.size(), 0));
}

/// Isomorphism invariant from colour refinement; equal graphs hash equal.
inline std::uint64_t refinement_hash(const Graph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()));
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> colors(adj.size(), 0);
  detail::refine(adj, colors);
  // refinement ids depend only on the isomorphism class, but hash the
  // per-class signature to be robust against differing class counts
  std::vector<std::pair<int, int>> sig;
  for (std::size_t v = 0; v < adj.size(); ++v) sig.emplace_back(colors[v], static_cast<int>(adj[v].size()));
  std::sort(sig.begin(), sig.end());
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(g.num_vertices());
  for (auto [c, d] : sig) {
    h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ULL;
    h = (h ^ static_cast<std::uint64_t>(d)) * 1099511628211ULL;
  }
  return h;
}

}  // namespace dcdc
