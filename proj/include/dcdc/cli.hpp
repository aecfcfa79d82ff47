#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dcdc/embed.hpp"
#include "dcdc/graph6.hpp"
#include "dcdc/json_io.hpp"
#include "dcdc/pipeline.hpp"

namespace dcdc {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

namespace cli {

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

/// graph6 (first non-empty line) or a dcdc.graph JSON document.
inline Graph read_graph(const std::string& path, Graph6Mode mode) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(parse_json(text));
  std::istringstream in(text);
  const std::vector<Graph> gs = read_graph6_stream(in, mode);
  if (gs.empty()) throw ParseError(path + ": no graph found");
  return gs.front();
}

inline BuildingSequence read_sequence(const std::string& path) { return sequence_from_json(parse_json(read_file(path))); }

struct Output {
  std::ostream& out;
  bool json = false;

  void emit(const Json& j, const std::string& text) const {
    if (json) out << j.dump(2) << "\n";
    else out << text << "\n";
  }
};

inline Json flags_to_json(const ConfigurationFlags& f) {
  Json ne = Json::array();
  for (const NoEdge& e : f.no_edges) ne.push_back({e.x, e.y});
  return {{"kind", f.kind.name()},   {"no_edges", ne},          {"L_obstacle", f.L_obstacle},
          {"P_danger", f.P_danger},  {"P_bad", f.P_bad},        {"F_abad", f.F_abad},
          {"F_bbad", f.F_bbad},      {"B_obstacle", f.B_obstacle}, {"hypotheses_hold", f.hypotheses_hold()}};
}

}  // namespace cli

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Directed cycle double covers of cubic bridgeless graphs", "dcdc"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON on stdout");

  std::string input, seq_path, cover_path, emit_path, snapshot_dir, pseudohex_path, kind_name_arg, strategy = "pruned",
                                                                                       g6_out;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int cap = default_search_cap(), steps = 5, max_vertices = 40, level = 1, attach_kind = 1;
  std::uint64_t seed = 0;
  bool lean = false, dot = false, brace = false, strict = false, oracle = false;
  long budget = PipelineOptions{}.backtrack_budget;
  std::vector<VertexId> hexes;

  auto* hexagon = app.add_subcommand("hexagon", "build the hexagon graph H(G)");
  hexagon->add_option("--input,-i", input, "graph6 or graph JSON file ('-' for stdin)")->required();
  hexagon->add_flag("--dot", dot, "Graphviz output");
  hexagon->add_flag("--brace", brace, "also decide whether H(G) is a brace");

  auto* search = app.add_subcommand("search", "embedding search for a directed cycle double cover");
  search->add_option("--input,-i", input, "graph6 or graph JSON file")->required();
  search->add_option("--strategy", strategy, "pruned or exhaustive")->check(CLI::IsMember({"pruned", "exhaustive"}));
  search->add_option("--threads", threads, "search threads")->check(CLI::PositiveNumber);
  search->add_option("--cap", cap, "vertex cap (default: DCDC_SEARCH_CAP or built-in)")->check(CLI::Range(1, 62));
  search->add_option("--emit", emit_path, "write the cover JSON here");

  auto* reduce = app.add_subcommand("reduce", "safe reduction of hexagons in a pseudohex snapshot");
  reduce->add_option("--pseudohex", pseudohex_path, "pseudohex JSON")->required();
  reduce->add_option("--hexagons", hexes, "hexagons, template order when --kind is given")->delimiter(',')->required();
  reduce->add_option("--kind", kind_name_arg, "member kind for the guided reducer");
  reduce->add_option("--j", level, "big-fork level");
  reduce->add_option("--attach-kind", attach_kind, "big-fork attachment kind 0..2")->check(CLI::Range(0, 2));
  reduce->add_flag("--oracle", oracle, "use the exhaustive oracle");
  reduce->add_option("--emit", emit_path, "write the reduced pseudohex here");

  auto* pipeline = app.add_subcommand("pipeline", "cover via consecutive safe reductions");
  pipeline->add_option("--seq", seq_path, "building sequence JSON")->required();
  pipeline->add_option("--emit", emit_path, "write the cover JSON here");
  pipeline->add_option("--snapshot-on-failure", snapshot_dir, "directory for the failing pseudohex");
  pipeline->add_option("--backtrack-budget", budget, "alternative plans to try")->check(CLI::NonNegativeNumber);
  pipeline->add_flag("--strict", strict, "first plan only (budget 0)");

  auto* forkgen = app.add_subcommand("forkgen", "random fork-graph building sequence");
  forkgen->add_option("--seed", seed, "generator seed");
  forkgen->add_option("--steps", steps, "member steps before closing")->check(CLI::PositiveNumber);
  forkgen->add_option("--max-vertices", max_vertices, "vertex budget")->check(CLI::PositiveNumber);
  forkgen->add_flag("--lean", lean, "only lean sequences");
  forkgen->add_option("--g6-out", g6_out, "also write the final graph as graph6");

  auto* leancmd = app.add_subcommand("lean", "check the lean condition");
  leancmd->add_option("--seq", seq_path, "building sequence JSON")->required();

  auto* embed = app.add_subcommand("embed", "embed G in a lean fork graph");
  embed->add_option("--input,-i", input, "graph6 or graph JSON file")->required();
  embed->add_option("--emit", emit_path, "write the building sequence here");

  auto* verify = app.add_subcommand("verify", "check a cover");
  verify->add_option("--graph", input, "graph6 or graph JSON file")->required();
  verify->add_option("--cover", cover_path, "cover JSON")->required();

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dcdc: " << e.what() << "\n";
    return kExitUsage;
  }
  const cli::Output o{out, json};

  try {
    if (*hexagon) {
      const Graph g = cli::read_graph(input, Graph6Mode::subcubic);
      const HexagonGraph hg(g);
      if (dot) {
        out << hg.to_dot();
        return kExitOk;
      }
      static constexpr const char* colors[] = {"blue", "red", "black"};
      Json edges = Json::array();
      for (EdgeId e = 0; e < hg.graph().num_edges(); ++e)
        edges.push_back({hg.graph().edge(e).u, hg.graph().edge(e).v, colors[static_cast<int>(hg.color(e))]});
      Json j = {{"schema", "dcdc.hexagon/1"}, {"hexagons", hg.num_hexagons()}, {"vertices", hg.graph().num_vertices()},
                {"edges", edges}};
      std::string text = "H(G): " + std::to_string(hg.graph().num_vertices()) + " vertices, " +
                         std::to_string(hg.graph().num_edges()) + " edges";
      if (brace) {
        const bool b = is_brace(hg);
        j["brace"] = b;
        text += b ? ", brace" : ", not a brace";
      }
      o.emit(j, text);
      return kExitOk;
    }

    if (*search) {
      const Graph g = cli::read_graph(input, Graph6Mode::cubic);
      SearchOptions so;
      so.strategy = strategy == "exhaustive" ? SearchStrategy::exhaustive : SearchStrategy::pruned;
      so.threads = threads;
      so.cap = cap;
      const auto r = search_dcdc(g, so);
      if (!r) {
        o.emit({{"schema", "dcdc.search/1"}, {"found", false}}, "no cover found");
        return kExitNegative;
      }
      if (!emit_path.empty()) cli::write_file(emit_path, cover_to_json(r->cover).dump(2) + "\n");
      o.emit({{"schema", "dcdc.search/1"},
              {"found", true},
              {"faces", r->faces},
              {"genus", r->cover.genus},
              {"verified", verify_dcdc(g, r->cover).ok},
              {"cover", cover_to_json(r->cover)}},
             "cover with " + std::to_string(r->faces) + " cycles, genus " + std::to_string(r->cover.genus));
      return kExitOk;
    }

    if (*reduce) {
      const Pseudohex k = pseudohex_from_json(parse_json(cli::read_file(pseudohex_path)));
      std::optional<ReductionPlan> plan;
      Json j = {{"schema", "dcdc.reduce/1"}};
      if (oracle || kind_name_arg.empty()) {
        plan = find_safe_reduction(k, hexes);
      } else {
        MemberKind kind{parse_kind(kind_name_arg)};
        if (kind.kind == Kind::big_fork) kind = {Kind::big_fork, level, attach_kind};
        j["flags"] = cli::flags_to_json(classify_configuration(k, hexes, kind));
        plan = guided_reduce_member(k, hexes, kind);
      }
      j["found"] = plan.has_value();
      if (!plan) {
        o.emit(j, "no safe and correct reduction");
        return kExitNegative;
      }
      const ReductionOutcome r = joint_reduce(k, *plan);
      Json choice = Json::object();
      for (auto [h, b] : plan->choice) choice[std::to_string(h)] = b;
      Json cycles = Json::array();
      for (const Walk& w : r.cycles) cycles.push_back(detail::walk_to_json(w));
      j["plan"] = choice;
      j["cycles"] = cycles;
      j["result"] = pseudohex_to_json(r.result);
      if (!emit_path.empty()) cli::write_file(emit_path, pseudohex_to_json(r.result).dump(2) + "\n");
      o.emit(j, "reduced " + std::to_string(hexes.size()) + " hexagons, " + std::to_string(r.cycles.size()) +
                    " closed walks emitted");
      return kExitOk;
    }

    if (*pipeline) {
      const BuildingSequence seq = cli::read_sequence(seq_path);
      PipelineOptions opt;
      opt.backtrack_budget = strict ? 0 : budget;
      const PipelineResult r = dcdc_via_reductions(seq, opt);
      Json j = {{"schema", "dcdc.pipeline/1"},
                {"ok", r.ok},
                {"message", r.message},
                {"vertices", r.graph.num_vertices()},
                {"backtracks", r.backtracks},
                {"dead_ends", r.dead_ends},
                {"template_defects", r.template_defects},
                {"obstacle_failures", r.obstacle_failures}};
      if (!r.ok) {
        if (!snapshot_dir.empty() && r.failure_snapshot) {
          std::filesystem::create_directories(snapshot_dir);
          cli::write_file(snapshot_dir + "/snapshot.json", pseudohex_to_json(*r.failure_snapshot).dump(2) + "\n");
        }
        o.emit(j, "pipeline failed: " + r.message);
        return kExitNegative;
      }
      j["cover"] = cover_to_json(r.cover);
      if (!emit_path.empty()) cli::write_file(emit_path, cover_to_json(r.cover).dump(2) + "\n");
      o.emit(j, "verified cover with " + std::to_string(r.cover.walks.size()) + " cycles on " +
                    std::to_string(r.graph.num_vertices()) + " vertices");
      return kExitOk;
    }

    if (*forkgen) {
      ForkGenParams p;
      p.steps = steps;
      p.max_vertices = max_vertices;
      p.lean = lean;
      const BuildingSequence seq = random_fork_graph(p, seed);
      const Graph g = validate_building_sequence(seq).state.graph;
      if (!g6_out.empty()) cli::write_file(g6_out, to_graph6(g) + "\n");
      out << sequence_to_json(seq).dump(2) << "\n";
      return kExitOk;
    }

    if (*leancmd) {
      const BuildingSequence seq = cli::read_sequence(seq_path);
      const ForkBuild b = validate_building_sequence(seq, true);
      if (!b.ok) throw PreconditionError("invalid sequence: " + b.message);
      const LeanReport r = lean_report(seq);
      Json paths = Json::array();
      for (auto [step, n] : r.paths) paths.push_back({{"step", step}, {"paths", n}});
      o.emit({{"schema", "dcdc.lean/1"},
              {"lean", r.lean},
              {"violating_step", r.violating_step},
              {"message", r.message},
              {"big_forks", paths}},
             r.lean ? "lean" : "not lean: " + r.message);
      return r.lean ? kExitOk : kExitNegative;
    }

    if (*embed) {
      const Graph g = cli::read_graph(input, Graph6Mode::cubic);
      const EmbedResult r = embed_in_lean_fork(g);
      const bool valid = validate_building_sequence(r.sequence).ok, is_l = is_lean(r.sequence);
      const SubdivisionCheck c = check_induced_subdivision(g, r.host, r.map);
      if (!emit_path.empty()) cli::write_file(emit_path, sequence_to_json(r.sequence).dump(2) + "\n");
      o.emit({{"schema", "dcdc.embed/1"},
              {"m", r.m},
              {"seeds", r.seeds},
              {"subforks", r.subforks},
              {"dots", r.dots},
              {"host_vertices", r.host.num_vertices()},
              {"valid", valid},
              {"lean", is_l},
              {"induced_subdivision", c.ok},
              {"sequence", sequence_to_json(r.sequence)}},
             "host with " + std::to_string(r.host.num_vertices()) + " vertices, m = " + std::to_string(r.m) + ", " +
                 std::to_string(r.subforks) + " subforks and " + std::to_string(r.dots) + " dots in Step 2");
      return valid && is_l && c.ok ? kExitOk : kExitNegative;
    }

    if (*verify) {
      const Graph g = cli::read_graph(input, Graph6Mode::subcubic);
      const DirectedCycleCover c = cover_from_json(parse_json(cli::read_file(cover_path)), &g);
      const CoverReport r = verify_dcdc(g, c);
      Json j = {{"schema", "dcdc.verify/1"}, {"ok", r.ok}, {"message", r.message}};
      if (r.first_bad_edge >= 0) j["first_bad_edge"] = r.first_bad_edge;
      o.emit(j, r.ok ? "valid directed cycle double cover" : "invalid: " + r.message);
      return r.ok ? kExitOk : kExitNegative;
    }
  } catch (const Error& e) {
    err << "dcdc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dcdc: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dcdc
