#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "dcdc/catalog.hpp"
#include "dcdc/embedding.hpp"
#include "dcdc/mixed_graph.hpp"

using namespace dcdc;

namespace {

// Exhaustive search over pairings of boundary slots: an edge offers two
// slots, an arc one; no arc-arc pair, no pair with the same element twice.
bool brute_pairing_exists(int edges, int arcs) {
  std::vector<int> owner;  // element id per slot; arcs are ids >= edges
  for (int e = 0; e < edges; ++e) owner.insert(owner.end(), {e, e});
  for (int a = 0; a < arcs; ++a) owner.push_back(edges + a);
  std::vector<bool> used(owner.size(), false);
  std::function<bool()> rec = [&]() -> bool {
    std::size_t i = 0;
    while (i < owner.size() && used[i]) ++i;
    if (i == owner.size()) return true;
    used[i] = true;
    for (std::size_t j = i + 1; j < owner.size(); ++j) {
      if (used[j] || owner[j] == owner[i]) continue;
      if (owner[i] >= edges && owner[j] >= edges) continue;
      used[j] = true;
      if (rec()) return true;
      used[j] = false;
    }
    used[i] = false;
    return false;
  };
  return rec();
}

MixedGraph random_mixed(std::mt19937_64& rng, int n) {
  for (;;) {
    const Graph g = random_cubic_graph(n, rng, true);
    MixedGraph m = MixedGraph::from_cubic(g);
    std::vector<VertexId> s;
    for (VertexId v = 0; v < n; ++v)
      if (rng() % 3 == 0) s.push_back(v);
    if (s.empty() || static_cast<int>(s.size()) == n) continue;
    std::vector<std::uint8_t> bits(s.size());
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
    if (auto r = reduce_mixed_with(m, s, bits); r && r->graph.check_invariants().empty()) return r->graph;
  }
}

}  // namespace

TEST(CutObstacle, PairingRuleMatchesBruteForce) {
  for (int e = 0; e <= 5; ++e)
    for (int a = 0; a + e <= 10; ++a) EXPECT_EQ(pairing_exists(e, a), brute_pairing_exists(e, a)) << e << " " << a;
}

TEST(CutObstacle, Examples) {
  const MixedGraph k4 = MixedGraph::from_cubic(k4_graph());
  EXPECT_FALSE(cut_obstacle(k4, {0}));
  EXPECT_FALSE(cut_obstacle(k4, {0, 1}));
  const MixedGraph br = MixedGraph::from_cubic(bridged_cubic_graph());
  EXPECT_TRUE(cut_obstacle(br, {0, 1, 2, 3, 4}));
  EXPECT_THROW(cut_obstacle(k4, {}), PreconditionError);
}

TEST(SafeReduce, SingleVertexMakesDirectedTriangle) {
  const MixedGraph k4 = MixedGraph::from_cubic(k4_graph());
  const auto r = safe_reduce_mixed(k4, {0});
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->cycles.empty());
  EXPECT_EQ(r->graph.check_invariants(), "");
  std::set<std::pair<int, int>> arcs;
  for (const Arc& a : r->graph.arcs())
    if (a.alive) arcs.insert({a.tail, a.head});
  const std::set<std::pair<int, int>> fwd{{1, 2}, {2, 3}, {3, 1}}, bwd{{2, 1}, {3, 2}, {1, 3}};
  EXPECT_TRUE(arcs == fwd || arcs == bwd);
  for (VertexId v : {1, 2, 3}) EXPECT_EQ(r->graph.edge_degree(v), 2);
}

TEST(SafeReduce, EmptySetIsIdentity) {
  const MixedGraph k4 = MixedGraph::from_cubic(k4_graph());
  const auto r = safe_reduce_mixed(k4, {});
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->cycles.empty());
  EXPECT_EQ(r->graph.structure_key(), k4.structure_key());
}

TEST(SafeReduce, WholeGraphEqualsDualLoopFreeEmbedding) {
  for (const Graph& g : cubic_catalog(10, true)) {
    const MixedGraph m = MixedGraph::from_cubic(g);
    std::vector<VertexId> all(g.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    const auto r = safe_reduce_mixed(m, all);
    const auto s = search_dcdc(g);
    ASSERT_EQ(r.has_value(), s.has_value());
    if (!r) continue;
    DirectedCycleCover c;
    c.walks = r->cycles;
    EXPECT_TRUE(verify_dcdc(g, c).ok) << verify_dcdc(g, c).message;
  }
}

TEST(SafeReduce, ConsecutiveReductionsBuildCover) {
  std::mt19937_64 rng(8);
  int covers = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_cubic_graph(10, rng, true);
    MixedGraph m = MixedGraph::from_cubic(g);
    std::vector<Walk> walks;
    std::vector<VertexId> order(10);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    bool ok = true;
    for (std::size_t i = 0; i < order.size() && ok; i += 5) {
      std::vector<VertexId> part(order.begin() + i, order.begin() + i + 5);
      auto r = safe_reduce_mixed(m, part);
      if (!r) {
        ok = false;
        break;
      }
      walks.insert(walks.end(), r->cycles.begin(), r->cycles.end());
      m = r->graph;
    }
    if (!ok) continue;
    ++covers;
    DirectedCycleCover c;
    c.walks = walks;
    EXPECT_TRUE(verify_dcdc(g, c).ok);
  }
  EXPECT_GT(covers, 0);
}

TEST(SafeReduce, InvariantsAndProvenanceOnRandomGraphs) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const MixedGraph m = random_mixed(rng, 8 + 2 * static_cast<int>(rng() % 3));
    const auto vs = m.vertices();
    std::vector<VertexId> s;
    for (VertexId v : vs)
      if (rng() % 2) s.push_back(v);
    const auto r = safe_reduce_mixed(m, s);
    if (!r) continue;
    for (const Walk& w : r->cycles)
      for (std::size_t k = 0; k < w.size(); ++k)
        EXPECT_EQ(m.base().head(w[k]), m.base().tail(w[(k + 1) % w.size()]));
    // surviving vertices keep consistent ports even when edge-degree drops
    for (const Arc& a : r->graph.arcs())
      if (a.alive) {
        EXPECT_TRUE(r->graph.alive(a.tail));
        EXPECT_TRUE(r->graph.alive(a.head));
      }
  }
}

TEST(SafeReduce, ObstacleSoundnessAndMonotonicityOnRandomGraphs) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    const MixedGraph m = random_mixed(rng, 8);
    const auto vs = m.vertices();
    const int k = static_cast<int>(vs.size());
    std::vector<bool> reducible(1u << k);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<VertexId> s;
      for (int j = 0; j < k; ++j)
        if (mask >> j & 1) s.push_back(vs[j]);
      reducible[mask] = safe_reduce_mixed(m, s).has_value();
      if (cut_obstacle(m, s)) {
        EXPECT_FALSE(reducible[mask]);
      }
    }
    for (unsigned mask = 1; mask < (1u << k); ++mask)
      if (!reducible[mask]) {
        for (int j = 0; j < k; ++j) EXPECT_FALSE(reducible[mask | (1u << j)]);
      }
  }
}
