#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dcdc/embedding.hpp"
#include "dcdc/fork.hpp"
#include "dcdc/pseudohex.hpp"

namespace dcdc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGraphSchema = "dcdc.graph/1";
inline constexpr const char* kCoverSchema = "dcdc.cover/1";
inline constexpr const char* kSequenceSchema = "dcdc.sequence/1";
inline constexpr const char* kPseudohexSchema = "dcdc.pseudohex/1";

namespace detail {

inline void expect_schema(const Json& j, const char* schema) {
  if (!j.is_object()) throw ParseError(std::string("expected a JSON object with schema ") + schema);
  const auto it = j.find("schema");
  if (it == j.end() || !it->is_string()) throw ParseError(std::string("missing schema field, expected ") + schema);
  if (it->get<std::string>() != schema)
    throw ParseError("schema " + it->get<std::string>() + " where " + schema + " was expected");
}

template <class T>
T field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field ") + key);
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field ") + key + ": " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

inline Json walk_to_json(const Walk& w) {
  Json a = Json::array();
  for (const Dart& d : w) a.push_back({d.edge, d.dir});
  return a;
}

inline Walk walk_from_json(const Json& a, const Graph* g) {
  if (!a.is_array()) throw ParseError("walk must be an array of [edge, dir] pairs");
  Walk w;
  for (const Json& d : a) {
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
      throw ParseError("dart must be [edge, dir]");
    const Dart dart{d[0].get<EdgeId>(), d[1].get<int>()};
    if (dart.dir != 0 && dart.dir != 1) throw ParseError("dart direction must be 0 or 1");
    if (dart.edge < 0 || (g && dart.edge >= g->num_edges())) throw ParseError("dart edge out of range");
    w.push_back(dart);
  }
  return w;
}

}  // namespace detail

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"schema", kGraphSchema}, {"vertices", g.num_vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  detail::expect_schema(j, kGraphSchema);
  const int n = detail::field<int>(j, "vertices");
  if (n < 0) throw ParseError("negative vertex count");
  const auto edges = detail::field<std::vector<std::pair<int, int>>>(j, "edges");
  for (auto [u, v] : edges)
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParseError("edge endpoint out of range or loop");
  return graph_from_edges(n, edges);
}

inline Json cover_to_json(const DirectedCycleCover& c) {
  Json walks = Json::array();
  for (const Walk& w : c.walks) walks.push_back(detail::walk_to_json(w));
  return {{"schema", kCoverSchema}, {"genus", c.genus}, {"walks", walks}};
}

inline DirectedCycleCover cover_from_json(const Json& j, const Graph* g = nullptr) {
  detail::expect_schema(j, kCoverSchema);
  DirectedCycleCover c;
  c.genus = detail::field_or<int>(j, "genus", -1);
  const auto it = j.find("walks");
  if (it == j.end() || !it->is_array()) throw ParseError("cover needs a walks array");
  for (const Json& w : *it) c.walks.push_back(detail::walk_from_json(w, g));
  return c;
}

inline Json step_to_json(const Step& s) {
  switch (s.type) {
    case Step::Type::y_delta: return {{"type", "y_delta"}, {"vertex", s.vertex}};
    case Step::Type::delta_y: return {{"type", "delta_y"}, {"triangle", s.triangle}};
    case Step::Type::member: break;
  }
  Json params = {{"dot_half_edges", s.bold.dot_half_edges},
                 {"extra_half_edges", s.bold.extra_half_edges},
                 {"extra_edges", s.bold.extra_edges}};
  if (s.kind.kind == Kind::big_fork) {
    params["j"] = s.kind.j;
    params["attach_kind"] = s.kind.attach;
  }
  return {{"type", "member"}, {"kind", kind_name(s.kind.kind)}, {"params", params}, {"attachments", s.attach}};
}

inline Step step_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("step must be an object");
  Step s;
  const std::string type = detail::field_or<std::string>(j, "type", "member");
  if (type == "y_delta") {
    s.type = Step::Type::y_delta;
    s.vertex = detail::field<VertexId>(j, "vertex");
    return s;
  }
  if (type == "delta_y") {
    s.type = Step::Type::delta_y;
    s.triangle = detail::field<std::array<VertexId, 3>>(j, "triangle");
    return s;
  }
  if (type != "member") throw ParseError("unknown step type " + type);
  s.kind.kind = parse_kind(detail::field<std::string>(j, "kind"));
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) throw ParseError("params must be an object");
  s.bold.dot_half_edges = detail::field_or<int>(params, "dot_half_edges", 3);
  s.bold.extra_half_edges = detail::field_or<std::vector<VertexId>>(params, "extra_half_edges", {});
  s.bold.extra_edges = detail::field_or<std::vector<std::pair<VertexId, VertexId>>>(params, "extra_edges", {});
  if (s.kind.kind == Kind::big_fork) {
    s.kind.j = detail::field<int>(params, "j");
    s.kind.attach = detail::field_or<int>(params, "attach_kind", 1);
    if (s.kind.j < 1 || s.kind.attach < 0 || s.kind.attach > 2) throw ParseError("big fork needs j >= 1, attach_kind 0..2");
  }
  s.attach = detail::field<std::vector<VertexId>>(j, "attachments");
  return s;
}

inline Json sequence_to_json(const BuildingSequence& seq) {
  Json steps = Json::array();
  for (const Step& s : seq.steps) steps.push_back(step_to_json(s));
  return {{"schema", kSequenceSchema}, {"steps", steps}};
}

inline BuildingSequence sequence_from_json(const Json& j) {
  detail::expect_schema(j, kSequenceSchema);
  const auto it = j.find("steps");
  if (it == j.end() || !it->is_array()) throw ParseError("sequence needs a steps array");
  BuildingSequence seq;
  for (const Json& s : *it) seq.steps.push_back(step_from_json(s));
  return seq;
}

inline Json pseudohex_to_json(const Pseudohex& k) {
  std::vector<int> alive;
  for (VertexId h = 0; h < k.capacity(); ++h) alive.push_back(k.alive(h));
  std::vector<VertexId> mate;
  Json prov = Json::object();
  for (VertexId x = 0; x < 6 * k.capacity(); ++x) {
    mate.push_back(k.mate(x));
    if (HexagonGraph::in_x(x) && k.mate(x) >= 0) prov[std::to_string(x)] = detail::walk_to_json(k.provenance(x));
  }
  return {{"schema", kPseudohexSchema}, {"base", graph_to_json(k.base())}, {"alive", alive},
          {"mate", mate},               {"red", k.extra_red()},            {"provenance", prov}};
}

inline Pseudohex pseudohex_from_json(const Json& j) {
  detail::expect_schema(j, kPseudohexSchema);
  auto base = std::make_shared<const Graph>(graph_from_json(detail::field<Json>(j, "base")));
  const auto alive_in = detail::field<std::vector<int>>(j, "alive");
  std::vector<char> alive(alive_in.begin(), alive_in.end());
  const auto mate = detail::field<std::vector<VertexId>>(j, "mate");
  const auto red = detail::field<std::vector<RedEdge>>(j, "red");
  const int n = static_cast<int>(mate.size());
  if (n != 6 * static_cast<int>(alive.size())) throw ParseError("pseudohex: mate needs six entries per hexagon");
  for (VertexId y : mate)
    if (y < -1 || y >= n) throw ParseError("pseudohex: mate out of range");
  for (auto [a, b] : red)
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError("pseudohex: red edge out of range");
  std::vector<Walk> prov(static_cast<std::size_t>(n));
  const Json p = detail::field<Json>(j, "provenance");
  if (!p.is_object()) throw ParseError("pseudohex: provenance must be an object");
  for (auto it = p.begin(); it != p.end(); ++it) {
    int x = -1;
    try {
      x = std::stoi(it.key());
    } catch (const std::exception&) {
      throw ParseError("pseudohex: provenance key " + it.key() + " is not a vertex");
    }
    if (x < 0 || x >= n) throw ParseError("pseudohex: provenance key out of range");
    prov[x] = detail::walk_from_json(it.value(), base.get());
  }
  Pseudohex k(base, std::move(alive), mate, std::vector<char>(static_cast<std::size_t>(n), 0), std::move(prov), red);
  k.refresh_real_flags();
  if (const std::string bad = k.check_invariants(); !bad.empty()) throw ParseError("pseudohex: " + bad);
  return k;
}

/// Parses text, mapping JSON syntax errors to ParseError.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

}  // namespace dcdc
