#include <gtest/gtest.h>

#include "dcdc/catalog.hpp"
#include "dcdc/fork.hpp"
#include "dcdc/isomorphism.hpp"

using namespace dcdc;

namespace {

std::vector<VertexId> degree_two(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 2) out.push_back(v);
  return out;
}

// Appends a member attached to the first free ports of the current graph.
void append(BuildingSequence& seq, MemberKind kind, BoldSpec bold = {}) {
  const ForkBuild b = validate_building_sequence(seq, true);
  ASSERT_EQ(b.stages.size(), seq.steps.size() + 1) << b.message;
  const Graph& g = b.stages.back();
  Step st;
  st.kind = kind;
  st.bold = bold;
  const auto ports = degree_two(g);
  st.attach.assign(ports.begin(), ports.begin() + static_cast<std::ptrdiff_t>(bold_anchors(kind, bold).size()));
  seq.steps.push_back(st);
}

void close_with_dots(BuildingSequence& seq) {
  for (;;) {
    const ForkBuild b = validate_building_sequence(seq, true);
    if (b.stages.size() != seq.steps.size() + 1) return;
    const int c = static_cast<int>(degree_two(b.stages.back()).size());
    if (c == 0) return;
    BoldSpec d;
    d.dot_half_edges = c % 3 == 0 ? 3 : 2;
    append(seq, {Kind::dot}, d);
  }
}

}  // namespace

TEST(Fork, TemplatesHaveExpectedShape) {
  EXPECT_EQ(member_template({Kind::fork}).graph.num_edges(), 4);
  EXPECT_EQ(member_template({Kind::star_fork}).graph.num_edges(), 3);
  const MemberTemplate p = member_template({Kind::p_fork});
  EXPECT_EQ(p.graph.num_vertices(), 8);
  EXPECT_EQ(p.graph.num_edges(), 15 - 6);
  EXPECT_EQ(p.graph.degree(p.find("c")), 1);
  for (const char* v : {"w1", "x", "y", "w2"}) EXPECT_EQ(p.graph.degree(p.find(v)), 2) << v;
  for (int j = 1; j <= 5; ++j) {
    const MemberTemplate b = member_template({Kind::big_fork, j, 1});
    EXPECT_EQ(b.graph.num_vertices(), 5 + 4 * j);
    EXPECT_EQ(static_cast<int>(b.connecting.size()), j + 3);
  }
}

TEST(Fork, PetersenExample) {
  const auto [seq, g] = petersen_example();
  EXPECT_TRUE(is_isomorphic(g, petersen_graph()));
  const ForkBuild b = validate_building_sequence(seq);
  ASSERT_TRUE(b.ok) << b.message;
  EXPECT_EQ(degree_two(b.stages[1]).size(), 3u);
  EXPECT_EQ(b.stages[2].num_vertices(), 12);
  EXPECT_TRUE(b.stages[2].is_cubic());
  EXPECT_TRUE(is_lean(seq));
}

TEST(Fork, RejectsSecondFork) {
  BuildingSequence seq;
  append(seq, {Kind::fork});
  append(seq, {Kind::fork});
  close_with_dots(seq);
  const ForkBuild b = validate_building_sequence(seq);
  EXPECT_FALSE(b.ok);
  EXPECT_EQ(b.failed_step, 2);
}

TEST(Fork, RejectsDegreeThreeTarget) {
  BuildingSequence seq;
  append(seq, {Kind::star_fork});
  seq.steps[0].attach[2] = seq.steps[0].attach[1];
  EXPECT_FALSE(validate_building_sequence(seq).ok);
  BuildingSequence seq2;
  append(seq2, {Kind::star_fork});
  Step dot;
  dot.kind = {Kind::dot};
  dot.attach = {0, 3, 4};  // vertex 0 is now cubic
  seq2.steps.push_back(dot);
  const ForkBuild b = validate_building_sequence(seq2);
  EXPECT_FALSE(b.ok);
  EXPECT_EQ(b.failed_step, 2);
}

TEST(Fork, ThreeEarNeedsExtendedMode) {
  BuildingSequence seq;
  append(seq, {Kind::three_ear});
  close_with_dots(seq);
  EXPECT_FALSE(validate_building_sequence(seq).ok);
  EXPECT_TRUE(validate_building_sequence(seq, true).ok);
}

TEST(Fork, RejectsNonCubicEnd) {
  BuildingSequence seq;
  append(seq, {Kind::subfork});
  const ForkBuild b = validate_building_sequence(seq);
  EXPECT_FALSE(b.ok);
  EXPECT_NE(b.message.find("cubic"), std::string::npos);
}

TEST(Fork, BoldBigForkHasAtMostJPlusFourPorts) {
  for (int j = 1; j <= 5; ++j)
    for (int attach = 0; attach < 3; ++attach) {
      BuildingSequence seq;
      append(seq, {Kind::fork});
      for (int i = 1; i < j + 3; ++i) append(seq, {Kind::three_ear});
      const MemberKind k{Kind::big_fork, j, attach};
      BoldSpec bold;
      if (attach == 0) bold.extra_half_edges = {member_template(k).find("b")};
      append(seq, k, bold);
      const ForkBuild b = validate_building_sequence(seq, true);
      ASSERT_FALSE(b.stages.size() < seq.steps.size() + 1) << b.message;
      const int before = static_cast<int>(degree_two(b.stages[b.stages.size() - 2]).size());
      const int after = static_cast<int>(degree_two(b.stages.back()).size());
      const int used = static_cast<int>(seq.steps.back().attach.size());
      EXPECT_LE(after - (before - used), j + 4) << j << " " << attach;
      EXPECT_GE(after - (before - used), 1);
    }
}

TEST(Fork, NoBigForkIsLeanVacuously) {
  BuildingSequence seq;
  append(seq, {Kind::fork});
  append(seq, {Kind::star_fork});
  close_with_dots(seq);
  const LeanReport r = lean_report(seq);
  EXPECT_TRUE(r.lean);
  EXPECT_TRUE(r.paths.empty());
}

TEST(Fork, PlantedNonLeanBigFork) {
  // Nine free ports, then a 1-big-fork; five dots pair its ports with
  // earlier ones, giving five disjoint outside paths.
  BuildingSequence seq;
  append(seq, {Kind::fork});
  for (int i = 0; i < 5; ++i) append(seq, {Kind::three_ear});
  append(seq, {Kind::big_fork, 1, 1});
  const int big = static_cast<int>(seq.steps.size());
  const ForkBuild b = validate_building_sequence(seq, true);
  ASSERT_TRUE(!b.stages.empty());
  std::vector<VertexId> mine, old;
  for (VertexId v : degree_two(b.stages.back())) (b.state.owner[v] == big ? mine : old).push_back(v);
  ASSERT_EQ(mine.size(), 5u);
  ASSERT_GE(old.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    Step d;
    d.kind = {Kind::dot};
    d.bold.dot_half_edges = 2;
    d.attach = {mine[i], old[i]};
    seq.steps.push_back(d);
  }
  close_with_dots(seq);
  ASSERT_TRUE(validate_building_sequence(seq, true).ok);
  const LeanReport r = lean_report(seq);
  EXPECT_FALSE(r.lean);
  EXPECT_EQ(r.violating_step, big);
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_EQ(r.paths[0].second, 5);
}

TEST(Fork, PlantedNonLeanExample) {
  const BuildingSequence seq = planted_non_lean_example();
  const ForkBuild b = validate_building_sequence(seq, true);
  ASSERT_TRUE(b.ok) << b.message;
  const LeanReport r = lean_report(seq);
  EXPECT_FALSE(r.lean);
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_EQ(r.paths[0].second, 5);
  EXPECT_EQ(seq.steps[r.violating_step - 1].kind, (MemberKind{Kind::big_fork, 1, 1}));
}

TEST(Fork, LeanBigForkWithoutOutsidePaths) {
  BuildingSequence seq;
  append(seq, {Kind::fork});
  append(seq, {Kind::big_fork, 1, 1});
  close_with_dots(seq);
  ASSERT_TRUE(validate_building_sequence(seq).ok);
  const LeanReport r = lean_report(seq);
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_LE(r.paths[0].second, 4);
  EXPECT_TRUE(r.lean);
}

TEST(Fork, GeneratorIsDeterministicAndValid) {
  ForkGenParams p;
  p.steps = 6;
  EXPECT_TRUE(random_fork_graph(p, 7) == random_fork_graph(p, 7));
  int lean = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ForkGenParams q = p;
    q.lean = true;
    const BuildingSequence seq = random_fork_graph(q, seed);
    const ForkBuild b = validate_building_sequence(seq);
    ASSERT_TRUE(b.ok) << seed << ": " << b.message;
    EXPECT_TRUE(is_bridgeless(b.state.graph));
    lean += is_lean(seq);
  }
  EXPECT_EQ(lean, 100);
}

TEST(Fork, YDeltaTracksOwners) {
  auto [seq, g] = petersen_example();
  Step yd;
  yd.type = Step::Type::y_delta;
  yd.vertex = 0;
  seq.steps.push_back(yd);
  const ForkBuild b = validate_building_sequence(seq);
  ASSERT_TRUE(b.ok) << b.message;
  EXPECT_EQ(b.state.graph.num_vertices(), 12);
  EXPECT_EQ(b.state.owner.size(), 12u);
  EXPECT_EQ(b.state.edge_step.size(), 18u);
  EXPECT_EQ(std::count(b.state.edge_step.begin(), b.state.edge_step.end(), 4), 3);
}

TEST(Fork, GeneratorHonoursRequiredKind) {
  ForkGenParams p;
  p.steps = 8;
  p.max_vertices = 60;
  p.retries = 5000;
  p.require = MemberKind{Kind::big_fork, 2, 1};
  const BuildingSequence seq = random_fork_graph(p, 3);
  EXPECT_TRUE(std::any_of(seq.steps.begin(), seq.steps.end(),
                          [](const Step& s) { return s.kind.kind == Kind::big_fork && s.kind.j == 2; }));
  EXPECT_TRUE(validate_building_sequence(seq).ok);
}
