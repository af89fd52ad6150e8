#pragma once

// Edge-list file format: first line "V E", then E lines "u v w" with 1-based
// vertex ids and integer weights; undirected edges listed once.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "obliv/oracle.hpp"

namespace obliv {

inline PlainGraph read_edge_list(std::istream& is) {
  PlainGraph g;
  i64 m = 0;
  if (!(is >> g.V >> m)) throw std::runtime_error("malformed input: missing header");
  if (g.V < 1 || m < 0) throw std::runtime_error("malformed input: bad header");
  g.edges.reserve(static_cast<std::size_t>(m));
  for (i64 i = 0; i < m; ++i) {
    PlainEdge e{};
    if (!(is >> e.u >> e.v >> e.w))
      throw std::runtime_error("malformed input: truncated edge list");
    if (e.u < 1 || e.u > g.V || e.v < 1 || e.v > g.V)
      throw std::runtime_error("malformed input: vertex id out of range");
    g.edges.push_back(e);
  }
  return g;
}

inline PlainGraph read_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input: " + path);
  return read_edge_list(f);
}

inline void write_edge_list(std::ostream& os, const PlainGraph& g) {
  os << g.V << ' ' << g.E() << '\n';
  for (const PlainEdge& e : g.edges)
    os << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

inline void write_edge_list_file(const std::string& path, const PlainGraph& g) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output: " + path);
  write_edge_list(f, g);
}

}  // namespace obliv
