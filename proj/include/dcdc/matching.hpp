#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace dcdc {

/// Hopcroft-Karp on an explicit bipartite adjacency (left ids 0..nl-1 to
/// right ids 0..nr-1). Vertices can be switched off between solves, which
/// keeps repeated extension checks cheap.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int nl, int nr, std::vector<std::vector<int>> adj)
      : nl_(nl), nr_(nr), adj_(std::move(adj)),
        left_on_(static_cast<std::size_t>(nl), true), right_on_(static_cast<std::size_t>(nr), true) {}

  void set_left(int v, bool on) { left_on_[v] = on; }
  void set_right(int v, bool on) { right_on_[v] = on; }

  /// Size of a maximum matching among the switched-on vertices.
  int solve() {
    ml_.assign(static_cast<std::size_t>(nl_), -1);
    mr_.assign(static_cast<std::size_t>(nr_), -1);
    int size = 0;
    while (bfs())
      for (int v = 0; v < nl_; ++v)
        if (left_on_[v] && ml_[v] < 0 && dfs(v)) ++size;
    return size;
  }

  [[nodiscard]] const std::vector<int>& left_mate() const { return ml_; }

 private:
  bool bfs() {
    constexpr int inf = std::numeric_limits<int>::max();
    dist_.assign(static_cast<std::size_t>(nl_), inf);
    std::queue<int> q;
    for (int v = 0; v < nl_; ++v)
      if (left_on_[v] && ml_[v] < 0) {
        dist_[v] = 0;
        q.push(v);
      }
    bool found = false;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : adj_[v]) {
        if (!right_on_[w]) continue;
        const int u = mr_[w];
        if (u < 0) found = true;
        else if (dist_[u] == inf) {
          dist_[u] = dist_[v] + 1;
          q.push(u);
        }
      }
    }
    return found;
  }

  bool dfs(int v) {
    for (int w : adj_[v]) {
      if (!right_on_[w]) continue;
      const int u = mr_[w];
      if (u < 0 || (dist_[u] == dist_[v] + 1 && dfs(u))) {
        ml_[v] = w;
        mr_[w] = v;
        return true;
      }
    }
    dist_[v] = std::numeric_limits<int>::max();
    return false;
  }

  int nl_, nr_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> left_on_, right_on_;
  std::vector<int> ml_, mr_, dist_;
};

}  // namespace dcdc
