#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

/// Dinic max-flow with integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1) {}

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int run(int s, int t) {
    int flow = 0;
    while (levels(s, t)) {
      it_ = head_;
      while (int f = push(s, t, std::numeric_limits<int>::max())) flow += f;
    }
    return flow;
  }

 private:
  struct Arc {
    int to, next, cap;
  };

  bool levels(int s, int t) {
    level_.assign(head_.size(), -1);
    level_[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  int push(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& a = it_[v]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (int f = push(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_, it_, level_;
};

/// Maximum number of vertex-disjoint paths from `sources` to `sinks` in g,
/// using only edges for which `usable` holds. A source that is also a sink
/// counts as a trivial path.
template <class EdgePred>
int max_vertex_disjoint_paths(const Graph& g, const std::vector<VertexId>& sources,
                              const std::vector<VertexId>& sinks, EdgePred usable) {
  const int n = g.num_vertices();
  const int s = 2 * n, t = 2 * n + 1;
  MaxFlow mf(2 * n + 2);
  for (VertexId v = 0; v < n; ++v) mf.add_arc(2 * v, 2 * v + 1, 1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!usable(e)) continue;
    const Edge& ed = g.edge(e);
    mf.add_arc(2 * ed.u + 1, 2 * ed.v, 1);
    mf.add_arc(2 * ed.v + 1, 2 * ed.u, 1);
  }
  for (VertexId v : sources) mf.add_arc(s, 2 * v, 1);
  for (VertexId v : sinks) mf.add_arc(2 * v + 1, t, 1);
  return mf.run(s, t);
}

}  // namespace dcdc
