#pragma once

// Deterministic random-instance generators for tests, the audit harness and
// the gen subcommand. All randomness flows from the caller's seed.

#include <random>
#include <stdexcept>

#include "obliv/oracle.hpp"

namespace obliv {

enum class WeightKind { distinct, random_w, unit };

inline WeightKind weights_from_string(const std::string& s) {
  if (s == "distinct") return WeightKind::distinct;
  if (s == "random") return WeightKind::random_w;
  if (s == "unit") return WeightKind::unit;
  throw std::invalid_argument("unknown weight kind: " + s);
}

inline void assign_weights(PlainGraph& g, WeightKind kind, std::mt19937_64& rng) {
  i64 m = g.E();
  switch (kind) {
    case WeightKind::unit:
      for (auto& e : g.edges) e.w = 1;
      break;
    case WeightKind::random_w: {
      std::uniform_int_distribution<i64> d(1, std::max<i64>(m, 4));
      for (auto& e : g.edges) e.w = d(rng);
      break;
    }
    case WeightKind::distinct: {
      std::vector<i64> perm(static_cast<std::size_t>(m));
      std::iota(perm.begin(), perm.end(), i64(1));
      std::shuffle(perm.begin(), perm.end(), rng);
      for (i64 i = 0; i < m; ++i) g.edges[i].w = perm[i];
      break;
    }
  }
}

inline PlainGraph random_tree(i64 V, u64 seed,
                              WeightKind wk = WeightKind::unit) {
  if (V < 1) throw std::invalid_argument("random_tree: V >= 1");
  std::mt19937_64 rng(seed);
  std::vector<i64> relab(static_cast<std::size_t>(V + 1));
  std::iota(relab.begin(), relab.end(), i64(0));
  std::shuffle(relab.begin() + 1, relab.end(), rng);
  PlainGraph g;
  g.V = V;
  for (i64 v = 2; v <= V; ++v) {
    std::uniform_int_distribution<i64> d(1, v - 1);
    g.edges.push_back({relab[d(rng)], relab[v], 1});
  }
  assign_weights(g, wk, rng);
  return g;
}

// Connected G(n,m)-style graph: a random spanning tree plus distinct random
// extra edges. Pure rejection sampling is hopeless below the connectivity
// threshold, so connectivity is built in.
inline PlainGraph random_connected(i64 V, i64 E, u64 seed,
                                   WeightKind wk = WeightKind::distinct) {
  if (V < 2 || E < V - 1) throw std::invalid_argument("infeasible (V,E)");
  if (E > V * (V - 1) / 2) throw std::invalid_argument("too many edges for a simple graph");
  std::mt19937_64 rng(seed);
  PlainGraph g = random_tree(V, rng());
  std::set<std::pair<i64, i64>> used;
  for (const auto& e : g.edges)
    used.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::uniform_int_distribution<i64> dv(1, V);
  while (g.E() < E) {
    i64 u = dv(rng), v = dv(rng);
    if (u == v) continue;
    auto key = std::pair{std::min(u, v), std::max(u, v)};
    if (used.count(key)) continue;
    used.insert(key);
    g.edges.push_back({u, v, 1});
  }
  assign_weights(g, wk, rng);
  return g;
}

// Random Hamiltonian cycle plus distinct chords: biconnected by construction,
// still validated by the oracle at the call sites that require it.
inline PlainGraph random_biconnected(i64 V, i64 E, u64 seed,
                                     WeightKind wk = WeightKind::unit) {
  if (V < 3 || E < V) throw std::invalid_argument("infeasible (V,E) for biconnected");
  if (E > V * (V - 1) / 2) throw std::invalid_argument("too many edges for a simple graph");
  std::mt19937_64 rng(seed);
  std::vector<i64> cyc(static_cast<std::size_t>(V));
  std::iota(cyc.begin(), cyc.end(), i64(1));
  std::shuffle(cyc.begin(), cyc.end(), rng);
  PlainGraph g;
  g.V = V;
  std::set<std::pair<i64, i64>> used;
  for (i64 i = 0; i < V; ++i) {
    i64 u = cyc[i], v = cyc[(i + 1) % V];
    used.insert({std::min(u, v), std::max(u, v)});
    g.edges.push_back({u, v, 1});
  }
  std::uniform_int_distribution<i64> dv(1, V);
  while (g.E() < E) {
    i64 u = dv(rng), v = dv(rng);
    if (u == v) continue;
    auto key = std::pair{std::min(u, v), std::max(u, v)};
    if (used.count(key)) continue;
    used.insert(key);
    g.edges.push_back({u, v, 1});
  }
  assign_weights(g, wk, rng);
  return g;
}

inline PlainGraph grid_graph(i64 rows, i64 cols,
                             WeightKind wk = WeightKind::unit, u64 seed = 0) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("bad grid shape");
  PlainGraph g;
  g.V = rows * cols;
  auto id = [&](i64 r, i64 c) { return r * cols + c + 1; };
  for (i64 r = 0; r < rows; ++r)
    for (i64 c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.edges.push_back({id(r, c), id(r, c + 1), 1});
      if (r + 1 < rows) g.edges.push_back({id(r, c), id(r + 1, c), 1});
    }
  std::mt19937_64 rng(seed);
  assign_weights(g, wk, rng);
  return g;
}

// Grid with a random diagonal in a subset of cells: planar (one chord per
// face, drawable without crossings), used as the random minor-closed family.
inline PlainGraph random_planarish(i64 rows, i64 cols, u64 seed,
                                   WeightKind wk = WeightKind::distinct) {
  std::mt19937_64 rng(seed);
  PlainGraph g = grid_graph(rows, cols);
  auto id = [&](i64 r, i64 c) { return r * cols + c + 1; };
  std::uniform_int_distribution<int> coin(0, 2);
  for (i64 r = 0; r + 1 < rows; ++r)
    for (i64 c = 0; c + 1 < cols; ++c) {
      int k = coin(rng);
      if (k == 1) g.edges.push_back({id(r, c), id(r + 1, c + 1), 1});
      if (k == 2) g.edges.push_back({id(r, c + 1), id(r + 1, c), 1});
    }
  assign_weights(g, wk, rng);
  return g;
}

}  // namespace obliv
