#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dcdc/graph.hpp"

namespace dcdc {

enum class Graph6Mode {
  any,       ///< accept any simple graph
  subcubic,  ///< reject vertices of degree > 3 (construction mode)
  cubic,     ///< require every vertex to have degree exactly 3
};

namespace detail {

inline int g6_byte(char c) {
  const int b = static_cast<unsigned char>(c) - 63;
  if (b < 0 || b > 63) throw ParseError(std::string("graph6: byte out of range: '") + c + "'");
  return b;
}

}  // namespace detail

/// Decode one graph6 line. An optional ">>graph6<<" header and surrounding
/// whitespace are ignored.
inline Graph parse_graph6(std::string_view text, Graph6Mode mode = Graph6Mode::subcubic) {
  constexpr std::string_view header = ">>graph6<<";
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  if (text.empty()) throw ParseError("graph6: empty input");
  if (text.front() == ':' || text.front() == '&') throw ParseError("graph6: sparse6/digraph6 input is not supported");

  std::size_t pos = 0;
  long n = 0;
  if (detail::g6_byte(text[0]) < 63) {
    n = detail::g6_byte(text[0]);
    pos = 1;
  } else {
    const bool wide = text.size() > 1 && detail::g6_byte(text[1]) == 63;
    const std::size_t digits = wide ? 6 : 3;
    const std::size_t start = wide ? 2 : 1;
    if (text.size() < start + digits) throw ParseError("graph6: truncated size header");
    for (std::size_t i = 0; i < digits; ++i) n = (n << 6) | detail::g6_byte(text[start + i]);
    pos = start + digits;
  }
  if (n > 100000) throw LimitError("graph6: graph too large");

  const long bits = n * (n - 1) / 2;
  const long need = (bits + 5) / 6;
  const auto body = text.substr(pos);
  if (static_cast<long>(body.size()) != need)
    throw ParseError("graph6: body has " + std::to_string(body.size()) + " bytes, expected " + std::to_string(need));

  Graph g(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = detail::g6_byte(body[static_cast<std::size_t>(k / 6)]);
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (long r = k; r < need * 6; ++r)
    if ((detail::g6_byte(body[static_cast<std::size_t>(r / 6)]) >> (5 - r % 6)) & 1)
      throw ParseError("graph6: nonzero padding bits");

  if (mode != Graph6Mode::any && g.max_degree() > 3) throw ParseError("graph6: vertex degree exceeds 3");
  if (mode == Graph6Mode::cubic && !g.is_cubic()) throw ParseError("graph6: graph is not cubic");
  return g;
}

/// Encode a simple graph as graph6 (no header, no newline).
inline std::string to_graph6(const Graph& g) {
  if (g.has_parallel_edges()) throw PreconditionError("graph6 cannot encode parallel edges");
  const long n = g.num_vertices();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(static_cast<char>(126));
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.append(2, static_cast<char>(126));
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (adj[i][j] ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

/// Read every non-empty line of a stream as graph6.
inline std::vector<Graph> read_graph6_stream(std::istream& in, Graph6Mode mode = Graph6Mode::subcubic) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \r\n") == std::string::npos) continue;
    out.push_back(parse_graph6(line, mode));
  }
  return out;
}

}  // namespace dcdc
