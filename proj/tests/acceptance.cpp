#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dcdc/dcdc.hpp"

using namespace dcdc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Time budgets in seconds.
constexpr double kPetersenBudget = 1;
constexpr double kBraceBudget = 120;
constexpr double kSweepBudget = 600;
constexpr double kFaceBudget = 120;
constexpr double kOracleBudget = 1200;
constexpr double kPipelinePerGraph = 5;
constexpr double kEmbedBudget = 30;
constexpr double kMixedBudget = 600;

// Instance counts.
constexpr int kFaceSamples = 1000;
constexpr int kOracleInstances = 10000;
constexpr int kLeanGraphs = 100;
constexpr int kMixedMaxVertices = 8;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

void info(const std::string& detail) {
  std::printf("INFO %s\n", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

void petersen_reconstruction() {
  const auto t0 = Clock::now();
  const auto [seq, g] = petersen_example();
  const bool iso = is_isomorphic(g, petersen_graph());
  const double t = seconds_since(t0);
  report(1, iso && t < kPetersenBudget, std::string(iso ? "isomorphic" : "not isomorphic") + " in " + fmt(t));
}

void brace_sweep() {
  const auto t0 = Clock::now();
  int graphs = 0, bad = 0;
  for (int n = 4; n <= 10; n += 2)
    for (const Graph& g : connected_cubic_graphs(n)) {
      ++graphs;
      bad += is_brace(HexagonGraph(g)) != is_bridgeless(g);
    }
  const double t = seconds_since(t0);
  report(2, bad == 0 && t < kBraceBudget,
         std::to_string(graphs) + " connected cubic graphs, " + std::to_string(bad) + " exceptions, " + fmt(t));
}

// Criteria 3 and 5 share the catalog and the matching enumeration.
void dcdc_sweep_and_euler() {
  const auto t0 = Clock::now();
  int graphs = 0, missing = 0, rejected = 0, disagree = 0;
  long matchings = 0, euler_bad = 0;
  for (const Graph& g : cubic_catalog(12, true)) {
    ++graphs;
    SearchOptions pr, ex;
    pr.strategy = SearchStrategy::pruned;
    ex.strategy = SearchStrategy::exhaustive;
    const auto a = search_dcdc(g, pr), b = search_dcdc(g, ex);
    missing += !a;
    disagree += a.has_value() != b.has_value();
    if (a) rejected += !verify_dcdc(g, a->cover).ok;
    if (b) rejected += !verify_dcdc(g, b->cover).ok;

    const HexagonGraph hg(g);
    BlueMatchingEnumerator en(g.num_vertices(), BlueMatchingEnumerator::Order::lex, 26);
    for (std::uint64_t i = 0; i < en.size(); ++i) {
      ++matchings;
      const FaceSet fs = faces_of_matching(hg, en.at(i));
      const int f = fs.size(), v = g.num_vertices(), e = g.num_edges();
      // V - E + F = 2 - 2 genus with E = 3V/2.
      const int twice = 2 - v + e - f;
      try {
        const int genus = genus_of(g, fs);
        euler_bad += twice < 0 || twice % 2 != 0 || genus != twice / 2 || (f - v / 2) % 2 != 0;
      } catch (const Error&) {
        ++euler_bad;
      }
    }
  }
  const double t = seconds_since(t0);
  report(3, missing == 0 && rejected == 0 && disagree == 0 && t < kSweepBudget,
         std::to_string(graphs) + " bridgeless cubic graphs up to 12 vertices, " + std::to_string(missing) +
             " without cover, " + std::to_string(rejected) + " rejected by verify, " + std::to_string(disagree) +
             " strategy disagreements, " + fmt(t) + " (with criterion 5)");
  report(5, euler_bad == 0,
         std::to_string(matchings) + " matchings, " + std::to_string(euler_bad) + " Euler violations");
}

void face_trace_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int i = 0; i < kFaceSamples; ++i) {
    const Graph g = random_cubic_graph(4 + 2 * static_cast<int>(rng() % 7), rng, false);
    const HexagonGraph hg(g);
    BlueMatching m;
    for (int v = 0; v < g.num_vertices(); ++v) m.bits.push_back(static_cast<std::uint8_t>(rng() & 1));
    bad += canonical_faces(faces_of_matching(hg, m)) != canonical_faces(trace_faces(g, rotation_of_matching(hg, m)));
  }
  const double t = seconds_since(t0);
  report(4, bad == 0 && t < kFaceBudget,
         std::to_string(kFaceSamples) + " random (G, m) up to 16 vertices, " + std::to_string(bad) + " mismatches, " +
             fmt(t));
}

bool same_member(const MemberKind& a, const MemberKind& b) {
  return a.kind == b.kind && (a.kind != Kind::big_fork || a.j == b.j);
}

void oracle_equivalence() {
  const auto t0 = Clock::now();
  const std::vector<MemberKind> kinds{{Kind::dot},      {Kind::subfork}, {Kind::three_ear},     {Kind::star_fork},
                                      {Kind::fork},     {Kind::p_fork},  {Kind::big_fork, 1, 1}, {Kind::big_fork, 2, 1}};
  bool pass = true;
  std::string detail;
  for (const MemberKind& kind : kinds) {
    std::vector<BuildingSequence> pool;
    for (int s = 0; static_cast<int>(pool.size()) < 200 && s < 20000; ++s) {
      ForkGenParams p;
      p.steps = 8;
      p.max_vertices = 40;
      p.three_ear_probability = 0.15;
      p.weights = {1, 1, 1, 1, 2, 2};
      p.retries = 200;
      p.require = kind;
      try {
        pool.push_back(random_fork_graph(p, 7919 * static_cast<std::uint64_t>(s) + 1));
      } catch (const LimitError&) {
      }
    }
    std::mt19937_64 rng(31);
    int instances = 0, disagree = 0, unsafe = 0, hyp = 0, hyp_stuck = 0;
    for (long tries = 0; instances < kOracleInstances && tries < 20L * kOracleInstances && !pool.empty(); ++tries) {
      const BuildingSequence& seq = pool[rng() % pool.size()];
      std::vector<int> targets;
      for (int i = 0; i < static_cast<int>(seq.steps.size()); ++i)
        if (seq.steps[i].type == Step::Type::member && same_member(seq.steps[i].kind, kind)) targets.push_back(i + 1);
      const auto inst = member_instance(seq, targets[rng() % targets.size()], rng);
      if (!inst) continue;
      ++instances;
      const auto g = guided_reduce_member(inst->k, inst->hexagons, inst->kind);
      const auto o = find_safe_reduction(inst->k, inst->hexagons);
      disagree += g.has_value() != o.has_value();
      if (g) {
        const ReductionOutcome r = joint_reduce(inst->k, *g);
        unsafe += !(r.safe && r.correct);
      }
      const ConfigurationFlags f = classify_configuration(inst->k, inst->hexagons, inst->kind);
      if (f.hypotheses_hold()) {
        ++hyp;
        hyp_stuck += !g;
      }
    }
    const bool ok = instances >= kOracleInstances && disagree == 0 && unsafe == 0;
    pass = pass && ok;
    detail += " " + kind.name() + "=" + std::to_string(instances) + "/" + std::to_string(disagree);
    info("criterion 6 " + kind.name() + ": " + std::to_string(instances) + " instances, " + std::to_string(disagree) +
         " disagreements, " + std::to_string(unsafe) + " unsafe plans, hypotheses hold on " + std::to_string(hyp) +
         " of which " + std::to_string(hyp_stuck) + " have no safe reduction");
  }
  const double t = seconds_since(t0);
  pass = pass && t < kOracleBudget;
  report(6, pass, "instances/disagreements per kind:" + detail + ", " + fmt(t));
}

void lean_pipeline_end_to_end() {
  int ok = 0, obstacles = 0, slow = 0, defects = 0;
  double worst = 0;
  for (int seed = 0; seed < kLeanGraphs; ++seed) {
    ForkGenParams p;
    p.steps = 8;
    p.max_vertices = 40;
    p.lean = true;
    const BuildingSequence seq = random_fork_graph(p, static_cast<std::uint64_t>(seed));
    const auto t0 = Clock::now();
    const PipelineResult r = dcdc_via_reductions(seq);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    slow += t >= kPipelinePerGraph;
    ok += r.ok && verify_dcdc(r.graph, r.cover).ok && r.graph.num_vertices() <= 40;
    obstacles += static_cast<int>(r.obstacle_failures.size());
    defects += static_cast<int>(r.template_defects.size());
  }
  report(7, ok == kLeanGraphs && obstacles == 0 && slow == 0,
         std::to_string(ok) + "/" + std::to_string(kLeanGraphs) + " lean fork graphs covered, " +
             std::to_string(obstacles) + " obstacle-assertion failures, " + std::to_string(defects) +
             " template defects, slowest " + fmt(worst));

  // Sequences rich in big forks, where the dead ends live.
  int seqs = 0, strict_ok = 0, backtrack_ok = 0;
  for (int s = 0; s < 600; ++s) {
    ForkGenParams p;
    p.steps = 8;
    p.max_vertices = 40;
    p.weights = {1, 1, 1, 1, 2, 2};
    p.retries = 200;
    p.require = MemberKind{Kind::big_fork, 1 + s % 2, 1};
    p.lean = true;
    BuildingSequence seq;
    try {
      seq = random_fork_graph(p, 1000 * static_cast<std::uint64_t>(s) + 7);
    } catch (const LimitError&) {
      continue;
    }
    ++seqs;
    PipelineOptions strict;
    strict.backtrack_budget = 0;
    strict_ok += dcdc_via_reductions(seq, strict).ok;
    backtrack_ok += dcdc_via_reductions(seq).ok;
  }
  info("criterion 7 stress: " + std::to_string(seqs) + " lean sequences with big forks, first-plan pipeline covers " +
       std::to_string(strict_ok) + ", with backtracking " + std::to_string(backtrack_ok) + ", " +
       std::to_string(seqs - backtrack_ok) +
       " with no reverse-order sequence of safe reductions (example: data/lean_bigfork_dead_end.json)");
}

void embedding_end_to_end() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, g] :
       std::vector<std::pair<std::string, Graph>>{{"K4", k4_graph()}, {"K33", k33_graph()}, {"Petersen", petersen_graph()}}) {
    const auto t0 = Clock::now();
    const EmbedResult r = embed_in_lean_fork(g);
    const bool valid = validate_building_sequence(r.sequence).ok;
    const bool lean = is_lean(r.sequence);
    const bool sub = check_induced_subdivision(g, r.host, r.map).ok;
    const double t = seconds_since(t0);
    bool ok = valid && lean && sub && t < kEmbedBudget;
    if (name == "K33") ok = ok && r.subforks == 4 && r.dots == 2;
    pass = pass && ok;
    detail += " " + name + (ok ? " ok" : " bad") + " (m=" + std::to_string(r.m) + ", " +
              std::to_string(r.subforks) + " subforks, " + std::to_string(r.dots) + " dots, " + fmt(t) + ")";
  }
  report(8, pass, detail.substr(1));
}

std::vector<VertexId> subset(const std::vector<VertexId>& vs, unsigned mask) {
  std::vector<VertexId> s;
  for (std::size_t j = 0; j < vs.size(); ++j)
    if (mask >> j & 1) s.push_back(vs[j]);
  return s;
}

void obstacle_soundness() {
  const auto t0 = Clock::now();
  // Every mixed graph reachable from a connected cubic graph on at most eight
  // vertices by one or two safe reductions, deduplicated by structure.
  std::vector<MixedGraph> graphs;
  std::set<std::vector<int>> seen;
  auto add = [&](const MixedGraph& m) {
    if (seen.insert(m.structure_key()).second) graphs.push_back(m);
  };
  for (int n = 4; n <= kMixedMaxVertices; n += 2)
    for (const Graph& g : connected_cubic_graphs(n)) add(MixedGraph::from_cubic(g));
  for (int round = 0; round < 2; ++round) {
    const std::size_t end = graphs.size();
    for (std::size_t i = 0; i < end; ++i) {
      const MixedGraph m = graphs[i];
      const auto vs = m.vertices();
      const unsigned full = (1u << vs.size()) - 1;
      for (unsigned mask = 1; mask < full; ++mask) {
        const auto s = subset(vs, mask);
        std::vector<std::uint8_t> bits(s.size());
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << s.size()); ++code) {
          for (std::size_t b = 0; b < s.size(); ++b) bits[b] = static_cast<std::uint8_t>(code >> b & 1);
          if (auto r = reduce_mixed_with(m, s, bits)) add(r->graph);
        }
      }
    }
  }
  long sets = 0, unsound = 0, non_monotone = 0, obstacles = 0;
  for (const MixedGraph& m : graphs) {
    const auto vs = m.vertices();
    if (vs.empty()) continue;
    const unsigned limit = 1u << vs.size();
    std::vector<char> reducible(limit, 0);
    for (unsigned mask = 1; mask < limit; ++mask) {
      const auto s = subset(vs, mask);
      ++sets;
      reducible[mask] = safe_reduce_mixed(m, s).has_value();
      if (cut_obstacle(m, s)) {
        ++obstacles;
        unsound += reducible[mask];
      }
    }
    for (unsigned mask = 1; mask < limit; ++mask)
      if (!reducible[mask])
        for (std::size_t j = 0; j < vs.size(); ++j) non_monotone += reducible[mask | (1u << j)] != 0;
  }
  const double t = seconds_since(t0);
  report(9, unsound == 0 && non_monotone == 0 && t < kMixedBudget,
         std::to_string(graphs.size()) + " mixed graphs, " + std::to_string(sets) + " vertex sets, " +
             std::to_string(obstacles) + " cut-obstacles, " + std::to_string(unsound) + " unsound, " +
             std::to_string(non_monotone) + " monotonicity violations, " + fmt(t));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int c) { return only.empty() || only.count(c); };
  const std::map<int, std::function<void()>> runs{{1, petersen_reconstruction}, {2, brace_sweep},
                                                  {3, dcdc_sweep_and_euler},    {4, face_trace_equivalence},
                                                  {6, oracle_equivalence},      {7, lean_pipeline_end_to_end},
                                                  {8, embedding_end_to_end}, {9, obstacle_soundness}};
  for (const auto& [id, run] : runs)
    if (want(id) || (id == 3 && want(5))) run();
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
