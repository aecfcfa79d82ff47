#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dcdc/catalog.hpp"
#include "dcdc/embedding.hpp"

using namespace dcdc;

namespace {

std::vector<BlueMatching> all_matchings(int n) {
  BlueMatchingEnumerator en(n, BlueMatchingEnumerator::Order::lex, 26);
  std::vector<BlueMatching> out;
  BlueMatching m;
  while (en.next(m)) out.push_back(m);
  return out;
}

bool walk_uses_both_darts(const Walk& w) {
  std::set<EdgeId> seen;
  for (Dart d : w)
    if (!seen.insert(d.edge).second) return true;
  return false;
}

// dual loop read off the rotation-traced faces
bool oracle_dual_loop(const Graph& g, const RotationSystem& r) {
  for (const Face& f : trace_faces(g, r).faces)
    if (walk_uses_both_darts(f.walk)) return true;
  return false;
}

}  // namespace

TEST(BlueMatchings, Enumeration) {
  EXPECT_EQ(all_matchings(3).size(), 8u);
  const auto pm = all_matchings(10);
  EXPECT_EQ(pm.size(), 1024u);
  std::set<std::vector<std::uint8_t>> distinct;
  for (const auto& m : pm) distinct.insert(m.bits);
  EXPECT_EQ(distinct.size(), 1024u);
  BlueMatchingEnumerator gray(10, BlueMatchingEnumerator::Order::gray, 26);
  BlueMatching prev, cur;
  gray.next(prev);
  while (gray.next(cur)) {
    int diff = 0;
    for (int j = 0; j < 10; ++j) diff += prev.bits[j] != cur.bits[j];
    EXPECT_EQ(diff, 1);
    prev = cur;
  }
  EXPECT_THROW(BlueMatchingEnumerator(27, BlueMatchingEnumerator::Order::lex, 26), LimitError);
}

TEST(BlueMatchings, RestrictionIsHexagonMatching) {
  const HexagonGraph hg(petersen_graph());
  for (const auto& m : all_matchings(10)) {
    for (VertexId x = 0; x < 60; ++x) {
      const VertexId y = m.partner(x);
      EXPECT_EQ(m.partner(y), x);
      EXPECT_EQ(HexagonGraph::hexagon_of(y), HexagonGraph::hexagon_of(x));
      const auto e = hg.graph().find_edge(x, y);
      ASSERT_TRUE(e.has_value());
      EXPECT_EQ(hg.color(*e), EdgeColor::blue);
    }
  }
}

TEST(Rotation, Bijection) {
  const Graph p = petersen_graph();
  const HexagonGraph hg(p);
  std::set<std::vector<std::array<EdgeId, 3>>> images;
  for (const auto& m : all_matchings(10)) {
    const auto r = rotation_of_matching(hg, m);
    EXPECT_EQ(matching_of_rotation(hg, r), m);
    images.insert(r.order);
    auto flipped = m;
    flipped.bits[3] ^= 1;
    const auto r2 = rotation_of_matching(hg, flipped);
    for (int v = 0; v < 10; ++v) EXPECT_EQ(r.order[v] == r2.order[v], v != 3);
  }
  EXPECT_EQ(images.size(), 1024u);
}

TEST(Faces, AgreeWithTracingOnPetersen) {
  const Graph p = petersen_graph();
  const HexagonGraph hg(p);
  for (const auto& m : all_matchings(10)) {
    const auto a = faces_of_matching(hg, m);
    const auto b = trace_faces(p, rotation_of_matching(hg, m));
    EXPECT_EQ(canonical_faces(a), canonical_faces(b));
    int total = 0;
    for (const Face& f : a.faces) {
      total += static_cast<int>(f.walk.size());
      EXPECT_GE(f.hex_cycle.size(), 4u);
      EXPECT_EQ(f.hex_cycle.size() % 2, 0u);
    }
    EXPECT_EQ(total, 30);
    const int g = genus_of(p, a);
    EXPECT_GE(g, 0);
    EXPECT_EQ(a.size() % 2, (2 - 10 + 15) % 2);
    EXPECT_EQ(has_dual_loop(hg, m), oracle_dual_loop(p, rotation_of_matching(hg, m)));
    if (a.size() == 1) {
      EXPECT_TRUE(has_dual_loop(hg, m));
    }
  }
}

TEST(Faces, K33TracesEighteenDartSteps) {
  const Graph g = k33_graph();
  const HexagonGraph hg(g);
  for (const auto& m : all_matchings(6)) {
    int total = 0;
    for (const Face& f : trace_faces(g, rotation_of_matching(hg, m)).faces) total += static_cast<int>(f.walk.size());
    EXPECT_EQ(total, 18);
  }
}

TEST(Faces, RandomAgreement) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const Graph g = random_cubic_graph(4 + 2 * static_cast<int>(rng() % 7), rng, false);
    const HexagonGraph hg(g);
    BlueMatching m;
    for (int v = 0; v < g.num_vertices(); ++v) m.bits.push_back(static_cast<std::uint8_t>(rng() & 1));
    EXPECT_EQ(canonical_faces(faces_of_matching(hg, m)), canonical_faces(trace_faces(g, rotation_of_matching(hg, m))));
  }
}

TEST(Faces, K4PlanarAndToroidal) {
  const Graph k4 = k4_graph();
  const HexagonGraph hg(k4);
  bool planar = false, toroidal = false, loopless = false;
  for (const auto& m : all_matchings(4)) {
    const auto fs = faces_of_matching(hg, m);
    if (fs.size() == 4) {
      planar = true;
      EXPECT_EQ(genus_of(k4, fs), 0);
      for (const Face& f : fs.faces) EXPECT_EQ(f.walk.size(), 3u);
      EXPECT_FALSE(has_dual_loop(hg, m));
      const auto c = extract_dcdc(hg, m);
      EXPECT_EQ(c.walks.size(), 4u);
      EXPECT_TRUE(verify_dcdc(k4, c).ok);
    }
    if (fs.size() == 2) {
      toroidal = true;
      EXPECT_EQ(genus_of(k4, fs), 1);
    }
    if (!has_dual_loop(hg, m)) loopless = true;
  }
  EXPECT_TRUE(planar);
  EXPECT_TRUE(toroidal);
  EXPECT_TRUE(loopless);
}

TEST(Extract, PetersenGenusOneHasFiveFaces) {
  const Graph p = petersen_graph();
  const HexagonGraph hg(p);
  bool found = false, some_loop = false;
  for (const auto& m : all_matchings(10)) {
    if (has_dual_loop(hg, m)) {
      some_loop = true;
      EXPECT_THROW(extract_dcdc(hg, m), PreconditionError);
      continue;
    }
    const auto c = extract_dcdc(hg, m);
    EXPECT_TRUE(verify_dcdc(p, c).ok);
    if (c.genus == 1) {
      EXPECT_EQ(c.walks.size(), 5u);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(some_loop);
}

TEST(Verify, DetectsViolations) {
  const Graph k4 = k4_graph();
  const auto res = search_dcdc(k4);
  ASSERT_TRUE(res.has_value());
  EXPECT_TRUE(verify_dcdc(k4, res->cover).ok);
  auto dup = res->cover;
  dup.walks.push_back(dup.walks.front());
  EXPECT_FALSE(verify_dcdc(k4, dup).ok);
  auto rev = res->cover;
  Walk& w = rev.walks.front();
  std::reverse(w.begin(), w.end());
  for (Dart& d : w) d = d.reversed();
  const auto r = verify_dcdc(k4, rev);
  EXPECT_FALSE(r.ok);
  ASSERT_GE(r.first_bad_edge, 0);
  const auto t = r.tally[r.first_bad_edge];
  EXPECT_TRUE((t[0] == 2 && t[1] == 0) || (t[0] == 0 && t[1] == 2));
  auto open = res->cover;
  open.walks.front().pop_back();
  EXPECT_FALSE(verify_dcdc(k4, open).ok);
}

TEST(Search, SmallGraphs) {
  for (const Graph& g : {k4_graph(), k33_graph(), prism_graph(), petersen_graph()}) {
    for (auto s : {SearchStrategy::exhaustive, SearchStrategy::pruned}) {
      SearchOptions opt;
      opt.strategy = s;
      const auto r = search_dcdc(g, opt);
      ASSERT_TRUE(r.has_value());
      EXPECT_TRUE(verify_dcdc(g, r->cover).ok);
    }
  }
  EXPECT_THROW(search_dcdc(bridged_cubic_graph()), PreconditionError);
  SearchOptions small;
  small.cap = 8;
  EXPECT_THROW(search_dcdc(petersen_graph(), small), LimitError);
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  for (const Graph& g : connected_cubic_graphs(10)) {
    if (!is_bridgeless(g)) continue;
    SearchOptions a, b;
    a.strategy = b.strategy = SearchStrategy::exhaustive;
    b.threads = 4;
    const auto ra = search_dcdc(g, a), rb = search_dcdc(g, b);
    ASSERT_TRUE(ra && rb);
    EXPECT_EQ(ra->matching, rb->matching);
  }
}

TEST(Search, StrategiesAgreeUpToTen) {
  for (const Graph& g : cubic_catalog(10, true)) {
    SearchOptions ex, pr;
    ex.strategy = SearchStrategy::exhaustive;
    pr.strategy = SearchStrategy::pruned;
    EXPECT_EQ(search_dcdc(g, ex).has_value(), search_dcdc(g, pr).has_value());
  }
}
