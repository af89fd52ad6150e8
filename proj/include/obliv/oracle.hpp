#pragma once

// Non-oblivious in-memory reference implementations, used only to check the
// oblivious pipelines. They run entirely in ordinary memory, never touch a
// BlockStore, and share no algorithmic machinery with the code they verify.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "obliv/record.hpp"

namespace obliv {

struct PlainEdge {
  i64 u, v, w;
};

// Edge list over 1-based vertex ids; undirected edges listed once.
struct PlainGraph {
  i64 V = 0;
  std::vector<PlainEdge> edges;

  i64 E() const { return static_cast<i64>(edges.size()); }

  std::vector<std::vector<std::pair<i64, i64>>> adjacency() const {
    std::vector<std::vector<std::pair<i64, i64>>> adj(
        static_cast<std::size_t>(V + 1));
    for (i64 i = 0; i < E(); ++i) {
      adj[edges[i].u].push_back({edges[i].v, i});
      adj[edges[i].v].push_back({edges[i].u, i});
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
};

class UnionFind {
 public:
  explicit UnionFind(i64 n) : parent_(static_cast<std::size_t>(n + 1)) {
    std::iota(parent_.begin(), parent_.end(), i64(0));
  }
  i64 find(i64 x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(i64 a, i64 b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // smaller id wins, keeps labels canonical
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<i64> parent_;
};

// Kruskal. Ties broken by (weight, min endpoint, max endpoint) to mirror the
// deterministic rule of the oblivious pipeline. Returns edge indices.
inline std::vector<i64> mst_oracle(const PlainGraph& g) {
  std::vector<i64> order(static_cast<std::size_t>(g.E()));
  std::iota(order.begin(), order.end(), i64(0));
  std::sort(order.begin(), order.end(), [&](i64 a, i64 b) {
    const PlainEdge &x = g.edges[a], &y = g.edges[b];
    auto kx = std::tuple(x.w, std::min(x.u, x.v), std::max(x.u, x.v));
    auto ky = std::tuple(y.w, std::min(y.u, y.v), std::max(y.u, y.v));
    return kx < ky;
  });
  UnionFind uf(g.V);
  std::vector<i64> out;
  for (i64 i : order)
    if (uf.unite(g.edges[i].u, g.edges[i].v)) out.push_back(i);
  if (static_cast<i64>(out.size()) != g.V - 1)
    throw std::runtime_error("mst_oracle: graph is disconnected");
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<i64> component_labels_oracle(const PlainGraph& g) {
  UnionFind uf(g.V);
  for (const PlainEdge& e : g.edges) uf.unite(e.u, e.v);
  std::vector<i64> label(static_cast<std::size_t>(g.V + 1));
  for (i64 v = 1; v <= g.V; ++v) label[v] = uf.find(v);
  return label;
}

inline bool connected_oracle(const PlainGraph& g) {
  if (g.V == 0) return false;
  auto lab = component_labels_oracle(g);
  for (i64 v = 2; v <= g.V; ++v)
    if (lab[v] != lab[1]) return false;
  return true;
}

// Rooted-tree helper shared by the tree oracles below. Children are visited
// in ascending neighbor order, matching the canonical adjacency order the
// oblivious Euler tour uses.
struct TreeOracle {
  i64 V = 0, root = 0;
  std::vector<i64> parent, depth, pre, post, size;
  std::vector<i64> eorder_adv, eorder_ret;  // tour rank of (p(v),v) / (v,p(v))
  std::vector<std::vector<i64>> children;

  TreeOracle(const PlainGraph& tree, i64 r) : V(tree.V), root(r) {
    if (tree.E() != V - 1) throw std::invalid_argument("not a tree");
    auto adj = tree.adjacency();
    parent.assign(V + 1, 0);
    depth.assign(V + 1, 0);
    pre.assign(V + 1, 0);
    post.assign(V + 1, 0);
    size.assign(V + 1, 1);
    eorder_adv.assign(V + 1, 0);
    eorder_ret.assign(V + 1, 0);
    children.assign(V + 1, {});
    std::vector<i64> stack{root};
    std::vector<std::size_t> it(static_cast<std::size_t>(V + 1), 0);
    parent[root] = root;
    i64 pc = 0, qc = 0, rank = 0;
    pre[root] = ++pc;
    std::vector<i64> visited_order;
    while (!stack.empty()) {
      i64 v = stack.back();
      if (it[v] < adj[v].size()) {
        i64 w = adj[v][it[v]++].first;
        if (w == parent[v] && w != v) continue;
        if (pre[w] != 0) throw std::invalid_argument("tree has a cycle");
        parent[w] = v;
        children[v].push_back(w);
        depth[w] = depth[v] + 1;
        pre[w] = ++pc;
        eorder_adv[w] = ++rank;
        stack.push_back(w);
      } else {
        stack.pop_back();
        post[v] = ++qc;
        if (v != root) {
          eorder_ret[v] = ++rank;
          size[parent[v]] += 0;  // accumulated below
        }
      }
    }
    for (i64 v = 1; v <= V; ++v)
      if (pre[v] == 0) throw std::invalid_argument("tree is disconnected");
    // subtree sizes bottom-up by postorder
    std::vector<i64> by_post(static_cast<std::size_t>(V));
    for (i64 v = 1; v <= V; ++v) by_post[post[v] - 1] = v;
    for (i64 v : by_post)
      if (v != root) size[parent[v]] += size[v];
  }

  i64 grandparent(i64 v) const { return parent[parent[v]]; }

  bool is_ancestor(i64 a, i64 v) const {
    return pre[a] <= pre[v] && pre[v] < pre[a] + size[a];
  }
};

// Deepest common ancestor by ancestor-set intersection.
inline i64 lca_oracle(const TreeOracle& t, i64 u, i64 v) {
  if (u < 1 || u > t.V || v < 1 || v > t.V)
    throw std::invalid_argument("lca_oracle: unknown vertex");
  std::set<i64> anc;
  for (i64 x = u;; x = t.parent[x]) {
    anc.insert(x);
    if (x == t.root) break;
  }
  for (i64 x = v;; x = t.parent[x]) {
    if (anc.count(x)) return x;
    if (x == t.root) break;
  }
  return t.root;
}

// Independent second route: walk the deeper vertex up until the paths meet.
inline i64 lca_oracle_walk(const TreeOracle& t, i64 u, i64 v) {
  while (u != v) {
    if (t.depth[u] >= t.depth[v])
      u = t.parent[u];
    else
      v = t.parent[v];
  }
  return u;
}

// low/high per the recursive definition: extreme preorder reachable within
// the subtree or via one non-tree edge off it.
inline void low_high_oracle(const PlainGraph& g, const TreeOracle& t,
                            std::vector<i64>& low, std::vector<i64>& high) {
  low.assign(t.V + 1, 0);
  high.assign(t.V + 1, 0);
  std::set<std::pair<i64, i64>> tree_edges;
  for (i64 v = 1; v <= t.V; ++v)
    if (v != t.root)
      tree_edges.insert({std::min(v, t.parent[v]), std::max(v, t.parent[v])});
  std::vector<std::vector<i64>> nontree(static_cast<std::size_t>(t.V + 1));
  for (const PlainEdge& e : g.edges) {
    if (tree_edges.count({std::min(e.u, e.v), std::max(e.u, e.v)})) continue;
    nontree[e.u].push_back(e.v);
    nontree[e.v].push_back(e.u);
  }
  std::vector<i64> by_post(static_cast<std::size_t>(t.V));
  for (i64 v = 1; v <= t.V; ++v) by_post[t.post[v] - 1] = v;
  for (i64 v : by_post) {
    low[v] = t.pre[v];
    high[v] = t.pre[v];
    for (i64 w : nontree[v]) {
      low[v] = std::min(low[v], t.pre[w]);
      high[v] = std::max(high[v], t.pre[w]);
    }
    for (i64 c : t.children[v]) {
      low[v] = std::min(low[v], low[c]);
      high[v] = std::max(high[v], high[c]);
    }
  }
}

// Hopcroft–Tarjan biconnected components: per-edge component ids. Two edges
// share an id iff they lie on a common simple cycle. Iterative DFS.
inline std::vector<i64> bcc_oracle(const PlainGraph& g) {
  auto adj = g.adjacency();
  std::vector<i64> comp(static_cast<std::size_t>(g.E()), -1);
  std::vector<i64> num(static_cast<std::size_t>(g.V + 1), 0);
  std::vector<i64> low(static_cast<std::size_t>(g.V + 1), 0);
  std::vector<i64> estack;
  i64 counter = 0, next_comp = 0;

  struct Frame {
    i64 v, parent_edge;
    std::size_t it;
  };
  for (i64 s = 1; s <= g.V; ++s) {
    if (num[s]) continue;
    std::vector<Frame> st{{s, -1, 0}};
    num[s] = low[s] = ++counter;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.it < adj[f.v].size()) {
        auto [w, ei] = adj[f.v][f.it++];
        if (ei == f.parent_edge) continue;
        if (!num[w]) {
          estack.push_back(ei);
          num[w] = low[w] = ++counter;
          st.push_back({w, ei, 0});
        } else if (num[w] < num[f.v]) {
          estack.push_back(ei);
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        i64 v = f.v, pe = f.parent_edge;
        st.pop_back();
        if (st.empty()) break;
        i64 u = st.back().v;
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= num[u]) {
          i64 c = next_comp++;
          while (true) {
            i64 ei = estack.back();
            estack.pop_back();
            comp[ei] = c;
            if (ei == pe) break;
          }
        }
      }
    }
  }
  for (i64 i = 0; i < g.E(); ++i)
    if (comp[i] < 0) throw std::runtime_error("bcc_oracle: unassigned edge");
  return comp;
}

inline bool is_biconnected_oracle(const PlainGraph& g) {
  if (g.V < 3) return false;
  if (!connected_oracle(g)) return false;
  auto comp = bcc_oracle(g);
  for (i64 c : comp)
    if (c != comp[0]) return false;
  // every vertex must be covered by an edge
  std::vector<char> seen(static_cast<std::size_t>(g.V + 1), 0);
  for (const PlainEdge& e : g.edges) seen[e.u] = seen[e.v] = 1;
  for (i64 v = 1; v <= g.V; ++v)
    if (!seen[v]) return false;
  return true;
}

// Canonical form of an edge partition: each class named by its smallest edge
// index. Two labelings are equal as partitions iff canonical forms match.
inline std::vector<i64> canonical_partition(const std::vector<i64>& labels) {
  std::map<i64, i64> rep;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = rep.find(labels[i]);
    if (it == rep.end()) rep[labels[i]] = static_cast<i64>(i);
  }
  std::vector<i64> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = rep[labels[i]];
  return out;
}

// All spanning trees by brute force (V small); used to self-check Kruskal.
inline i64 min_spanning_weight_exhaustive(const PlainGraph& g) {
  i64 m = g.E();
  if (g.V > 8 || m > 20) throw std::invalid_argument("too large for enumeration");
  i64 best = kInf;
  for (i64 mask = 0; mask < (i64(1) << m); ++mask) {
    if (__builtin_popcountll(static_cast<u64>(mask)) != g.V - 1) continue;
    UnionFind uf(g.V);
    i64 wsum = 0, joins = 0;
    for (i64 i = 0; i < m; ++i)
      if (mask & (i64(1) << i)) {
        wsum += g.edges[i].w;
        if (uf.unite(g.edges[i].u, g.edges[i].v)) ++joins;
      }
    if (joins == g.V - 1) best = std::min(best, wsum);
  }
  if (best == kInf) throw std::runtime_error("disconnected");
  return best;
}

// Same-simple-cycle relation by path enumeration (tiny graphs); transitive
// closure gives the biconnected partition, used to self-check bcc_oracle.
inline std::vector<i64> bcc_exhaustive(const PlainGraph& g) {
  i64 m = g.E();
  if (g.V > 10) throw std::invalid_argument("too large");
  UnionFind classes(m);
  // enumerate all simple cycles via DFS over edge sequences
  auto adj = g.adjacency();
  std::vector<i64> path_edges;
  std::vector<char> vused(static_cast<std::size_t>(g.V + 1), 0);
  std::function<void(i64, i64)> dfs = [&](i64 start, i64 v) {
    for (auto [w, ei] : adj[v]) {
      if (!path_edges.empty() && ei == path_edges.back()) continue;
      if (w == start && path_edges.size() >= 2) {
        for (std::size_t i = 1; i < path_edges.size(); ++i)
          classes.unite(path_edges[0], path_edges[i]);
        classes.unite(path_edges[0], ei);
        continue;
      }
      if (vused[w]) continue;
      vused[w] = 1;
      path_edges.push_back(ei);
      dfs(start, w);
      path_edges.pop_back();
      vused[w] = 0;
    }
  };
  for (i64 s = 1; s <= g.V; ++s) {
    vused[s] = 1;
    dfs(s, s);
    vused[s] = 0;
  }
  std::vector<i64> out(static_cast<std::size_t>(m));
  for (i64 i = 0; i < m; ++i) out[i] = classes.find(i);
  return out;
}

}  // namespace obliv
