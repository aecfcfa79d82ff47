#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dcdc/classify.hpp"
#include "dcdc/embedding.hpp"
#include "dcdc/fork.hpp"
#include "dcdc/pseudohex.hpp"

namespace dcdc {

struct PipelineOptions {
  bool oracle_fallback = true;
  bool require_lean = true;
  int oracle_cap = 20;
  /// Alternative plans tried for later members when an earlier one is stuck;
  /// 0 keeps the first plan of every member.
  long backtrack_budget = 10000;
};

struct PipelineStep {
  int step = 0;  ///< 1-based building step, 0 for the initial triangle
  MemberKind kind;
  std::vector<VertexId> hexagons;
  bool template_match = false;  ///< hexagons line up with the member template
  std::optional<ConfigurationFlags> flags;
  bool proper = false;
  bool reduced = false;
  bool oracle_used = false;
  int cycles = 0;
};

struct PipelineResult {
  bool ok = false;
  std::string message;
  Graph graph;
  DirectedCycleCover cover;
  std::vector<PipelineStep> steps;
  std::vector<std::string> template_defects;
  std::vector<std::string> obstacle_failures;
  std::vector<std::string> dead_ends;  ///< members met with no safe and correct reduction
  long backtracks = 0;
  std::optional<Pseudohex> failure_snapshot;
};

namespace detail {

/// Hexagons grouped by owning step; groups of member steps keep template
/// order when no transformation touched them.
inline std::vector<std::vector<VertexId>> owner_groups(const ForkState& s, int steps) {
  std::vector<std::vector<VertexId>> groups(static_cast<std::size_t>(steps + 1));
  for (VertexId v = 0; v < s.graph.num_vertices(); ++v) groups[s.owner[v]].push_back(v);
  return groups;
}

}  // namespace detail

/// Consecutive safe reductions in reverse building order, then the initial
/// triangle; the emitted closed walks form a directed cycle double cover.
/// When a member has no safe reduction, the search returns to the members
/// reduced before it and tries their other safe plans, within the budget.
inline PipelineResult dcdc_via_reductions(const BuildingSequence& seq, const PipelineOptions& opt = {}) {
  PipelineResult out;
  const ForkBuild b = validate_building_sequence(seq, true);
  if (!b.ok) throw PreconditionError("pipeline: invalid sequence: " + b.message);
  if (opt.require_lean) {
    const LeanReport lr = lean_report(seq);
    if (!lr.lean) throw PreconditionError("pipeline: sequence is not lean: " + lr.message);
  }
  out.graph = b.state.graph;
  const int n = static_cast<int>(seq.steps.size());
  const auto groups = detail::owner_groups(b.state, n);
  long budget = opt.backtrack_budget;

  std::function<bool(const Pseudohex&, int)> solve = [&](const Pseudohex& k, int i) -> bool {
    while (i >= 0 && groups[i].empty()) --i;
    if (i < 0) return k.empty();
    const std::vector<VertexId>& hexes = groups[i];
    PipelineStep ps;
    ps.step = i;
    ps.hexagons = hexes;
    ps.proper = properness_report(k).proper;
    if (i > 0 && seq.steps[i - 1].type == Step::Type::member) {
      ps.kind = seq.steps[i - 1].kind;
      ps.template_match = static_cast<int>(hexes.size()) == member_template(ps.kind).graph.num_vertices();
    }
    const std::string where = "step " + std::to_string(i);
    std::vector<VertexId> order = hexes;
    std::optional<ReductionPlan> plan;
    if (ps.template_match) {
      ps.flags = classify_configuration(k, hexes, ps.kind);
      if (ps.kind.kind == Kind::big_fork && ps.flags->B_obstacle)
        out.obstacle_failures.push_back(where + ": B-obstacle on a lean sequence");
      order.clear();
      for (int v : stage_order(ps.kind)) order.push_back(hexes[v]);
    }
    plan = staged_reduce(k, order);
    if (!plan && opt.oracle_fallback && static_cast<int>(hexes.size()) <= opt.oracle_cap) {
      plan = find_safe_reduction(k, hexes, opt.oracle_cap);
      ps.oracle_used = true;
      if (plan) out.template_defects.push_back(where + ": oracle succeeded where guided failed");
    }
    if (!plan) {
      out.dead_ends.push_back(where + " (" + (i ? ps.kind.name() : std::string("triangle")) +
                              "): no safe and correct reduction");
      if (!out.failure_snapshot) out.failure_snapshot = k;
      return false;
    }

    auto attempt = [&](const ReductionPlan& p) {
      ReductionOutcome r = joint_reduce(k, p);
      if (!r.ok()) throw Error("pipeline: " + where + ": plan rejected by joint_reduce");
      const std::size_t walks = out.cover.walks.size(), steps = out.steps.size();
      ps.reduced = true;
      ps.cycles = static_cast<int>(r.cycles.size());
      out.steps.push_back(ps);
      for (Walk& w : r.cycles) out.cover.walks.push_back(std::move(w));
      if (solve(r.result, i - 1)) return true;
      out.cover.walks.resize(walks);
      out.steps.resize(steps);
      return false;
    };
    if (attempt(*plan)) return true;
    bool done = false;
    for_each_safe_plan(k, order, [&](const ReductionPlan& p) {
      if (budget <= 0) return true;
      if (p == *plan) return false;
      --budget;
      ++out.backtracks;
      done = attempt(p);
      return done;
    });
    return done;
  };

  const bool solved = solve(from_hexagon_graph(HexagonGraph(out.graph)), n);
  if (!solved) {
    out.message = out.dead_ends.empty() ? "hexagons left after the last reduction" : out.dead_ends.front();
    return out;
  }
  out.failure_snapshot.reset();
  const CoverReport cr = verify_dcdc(out.graph, out.cover);
  if (!cr.ok) {
    out.message = "cover rejected: " + cr.message;
    return out;
  }
  out.ok = true;
  return out;
}

struct CrossReport {
  bool search_applicable = true;
  bool pipeline_applicable = true;
  bool search_found = false;
  bool pipeline_found = false;
  int faces = 0;
  int genus = -1;
  std::string pipeline_message;
  [[nodiscard]] bool agree() const {
    return (!search_applicable || search_found) && (!pipeline_applicable || pipeline_found);
  }
};

/// Embedding search and reduction pipeline on the same graph. Without a
/// sequence the pipeline is not applicable.
inline CrossReport cross_validate(const Graph& g, const std::optional<BuildingSequence>& seq,
                                  const SearchOptions& so = {}) {
  CrossReport r;
  if (seq) {
    const ForkBuild b = validate_building_sequence(*seq, true);
    if (!b.ok || b.state.graph.edge_list() != g.edge_list())
      throw PreconditionError("cross_validate: sequence does not build the graph");
  }
  if (auto s = search_dcdc(g, so)) {
    r.search_found = true;
    r.faces = s->faces;
    r.genus = s->cover.genus;
  }
  if (!seq) {
    r.pipeline_applicable = false;
  } else {
    const PipelineResult p = dcdc_via_reductions(*seq);
    r.pipeline_found = p.ok;
    r.pipeline_message = p.message;
  }
  return r;
}

/// A proper pseudohex in which one member is the next to be reduced.
struct MemberInstance {
  Pseudohex k;
  std::vector<VertexId> hexagons;  ///< template order
  MemberKind kind;
  int step = 0;
};

namespace detail {

template <class Rng>
std::optional<ReductionPlan> random_safe_plan(const Pseudohex& k, const std::vector<VertexId>& hexes, Rng& rng) {
  const int n = static_cast<int>(hexes.size());
  if (n > 16) return staged_reduce(k, hexes);
  JointReducer r(k, hexes);
  const std::uint64_t total = std::uint64_t{1} << n, start = rng() % total;
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (std::uint64_t t = 0; t < total; ++t) {
    const std::uint64_t mask = (start + t) % total;
    for (int i = 0; i < n; ++i) bits[i] = static_cast<int>(mask >> i & 1);
    if (auto [safe, correct] = r.evaluate(bits); safe && correct) {
      ReductionPlan p;
      for (int i = 0; i < n; ++i) p.choice[hexes[i]] = bits[i];
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Reduces the members added after `target` with random safe plans. Returns
/// nothing when some reduction fails or the state is not proper.
template <class Rng>
std::optional<MemberInstance> member_instance(const BuildingSequence& seq, int target, Rng& rng) {
  const ForkBuild b = validate_building_sequence(seq, true);
  if (!b.ok) throw PreconditionError("member_instance: invalid sequence: " + b.message);
  if (target < 1 || target > static_cast<int>(seq.steps.size()) || seq.steps[target - 1].type != Step::Type::member)
    throw PreconditionError("member_instance: target is not a member step");
  const auto groups = detail::owner_groups(b.state, static_cast<int>(seq.steps.size()));
  Pseudohex k = from_hexagon_graph(HexagonGraph(b.state.graph));
  for (int i = static_cast<int>(seq.steps.size()); i > target; --i) {
    if (groups[i].empty()) continue;
    auto plan = detail::random_safe_plan(k, groups[i], rng);
    if (!plan) return std::nullopt;
    k = joint_reduce(k, *plan).result;
  }
  MemberInstance inst{std::move(k), groups[target], seq.steps[target - 1].kind, target};
  if (static_cast<int>(inst.hexagons.size()) != member_template(inst.kind).graph.num_vertices()) return std::nullopt;
  if (!properness_report(inst.k).proper) return std::nullopt;
  return inst;
}

}  // namespace dcdc
