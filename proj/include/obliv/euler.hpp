#pragma once

// Euler tours over rooted trees and forests. Each undirected tree edge is
// split into an advance/retreat pair; twin/next/prev linkage forms one
// circular successor structure per vertex, and the tour successor is
// succ(e) = next(twin(e)). Tour ranks come from oblivious list ranking by
// pointer doubling (log rounds of sort+scan), a log factor above the
// best-known bound but exactly oblivious; it sits behind list_rank() so a
// different ranker can be substituted.

#include "obliv/scan.hpp"

namespace obliv {

// Directed tour edge slots. eid is consumed early and its slot is reused for
// prev at the end of construction.
namespace de {
inline constexpr int from = 0, to = 1, prev = 2, eid = 2, id = 3, twin = 4,
                     next = 5, succ = 6, rank = 7, adv = 8, comp = 9;
}

// Vertex statistics slots (single rooted tree).
namespace vs {
inline constexpr int v = 0, pre = 1, post = 2, eadv = 3, eret = 4, depth = 5,
                     size = 6, parent = 7, gparent = 8;
}

inline constexpr i64 kNil = -1;

// Vertex table 1..V: one real record per vertex, s[0] = vertex id.
inline Array make_vertex_table(BlockStore& st, i64 V) {
  Array t = st.alloc(V);
  scan(st, t, [](Rec& r, i64 i) {
    r = make_real();
    r.s[0] = i + 1;
  });
  return t;
}

// Rank the chains of a successor-linked structure. Working records are
// (id, succ|kNil, comp, head) projections of `a`; ranks are written back to
// out_rank keyed by id. rank(head)=1 and rank(succ(x))=rank(x)+1 per chain.
// validate=true checks that ranks are a bijection per chain (the public
// contract: one chain, a designated head) and throws otherwise.
inline void list_rank(BlockStore& st, const Array& a, int id_slot,
                      int succ_slot, int comp_slot, int head_slot,
                      int out_rank, bool validate = false) {
  constexpr int W_ID = 0, W_SUCC = 1, W_VAL = 2, W_FVAL = 3, W_FSUCC = 4,
                W_COMP = 5, W_HEAD = 6, W_LEN = 7;
  Array wk = st.alloc(a.n);
  scan_map(st, a, wk, [&](const Rec& in, Rec& out, i64) {
    if (in.dummy()) return;
    out = make_real();
    out.s[W_ID] = in.s[id_slot];
    out.s[W_SUCC] = in.s[succ_slot];
    out.s[W_VAL] = 1;
    out.s[W_COMP] = comp_slot >= 0 ? in.s[comp_slot] : 0;
    out.s[W_HEAD] = in.s[head_slot];
  });
  i64 rounds = ceil_log2(std::max<i64>(a.n, 2)) + 1;
  for (i64 r = 0; r < rounds; ++r) {
    scan(st, wk, [](Rec& x, i64) {
      x.s[W_FVAL] = 0;
      x.s[W_FSUCC] = kNil;
    });
    distribute(st, wk, W_SUCC, wk, W_ID, {{W_VAL, W_FVAL}, {W_SUCC, W_FSUCC}});
    scan(st, wk, [](Rec& x, i64) {
      if (x.dummy() || x.s[W_SUCC] == kNil) return;
      x.s[W_VAL] += x.s[W_FVAL];
      x.s[W_SUCC] = x.s[W_FSUCC];
    });
  }
  // chain length = val at the head; rank = len - val + 1
  Array heads = st.alloc(a.n);
  scan_map(st, wk, heads, [&](const Rec& in, Rec& out, i64) {
    if (in.dummy() || in.s[W_HEAD] == 0) return;
    out = make_real();
    out.s[0] = in.s[W_COMP];
    out.s[1] = in.s[W_VAL];
  });
  scan(st, wk, [](Rec& x, i64) { x.s[W_LEN] = 0; });
  distribute(st, wk, W_COMP, heads, 0, {{1, W_LEN}});
  scan(st, wk, [](Rec& x, i64) {
    if (x.real()) x.s[W_VAL] = x.s[W_LEN] - x.s[W_VAL] + 1;
  });
  if (validate) {
    osort(st, wk, SortKey::by(W_COMP, W_VAL));
    i64 prev_comp = kNil, prev_val = 0;
    bool ok = true;
    scan_read(st, wk, [&](const Rec& x, i64) {
      if (x.dummy()) return;
      if (x.s[W_COMP] == prev_comp && x.s[W_VAL] != prev_val + 1) ok = false;
      if (x.s[W_COMP] != prev_comp && x.s[W_VAL] != 1) ok = false;
      prev_comp = x.s[W_COMP];
      prev_val = x.s[W_VAL];
    });
    if (!ok)
      throw std::runtime_error("list_rank: broken links or multiple chains per head");
  }
  distribute(st, a, id_slot, wk, W_ID, {{W_VAL, out_rank}});
  st.free_last(heads);
  st.free_last(wk);
}

struct EulerTour {
  Array dir;      // directed edge records, de:: slots
  i64 capacity;   // directed capacity (2 * undirected capacity)
};

// Build the tour linkage for a forest given undirected edges (u=s0, v=s1,
// comp=s2; dummies allowed) and a vertex table with root flags (v=s0,
// root=s1). Adjacency order is the canonical sort by (from, to).
inline EulerTour build_euler_forest(BlockStore& st, const Array& edges,
                                    const Array& roots) {
  i64 cap = 2 * edges.n;
  Array dir = st.alloc(cap);
  scan_map2(st, edges, dir, [&](const Rec& in, Rec& a, Rec& b, i64 i) {
    if (in.dummy()) return;
    a = make_real();
    a.s[de::from] = in.s[0];
    a.s[de::to] = in.s[1];
    a.s[de::eid] = i;
    a.s[de::comp] = in.s[2];
    b = a;
    b.s[de::from] = in.s[1];
    b.s[de::to] = in.s[0];
  });
  osort(st, dir, SortKey::by(de::from, de::to));
  scan(st, dir, [](Rec& r, i64 i) { r.s[de::id] = i; });
  // root flag (temporarily in adv)
  scan(st, dir, [](Rec& r, i64) { r.s[de::adv] = 0; });
  distribute(st, dir, de::from, roots, 0, {{1, de::adv}});
  // circular next links per vertex run; mark each root's first edge as head
  {
    i64 run_start_id = kNil, prev_from = kNil;
    scan_lookahead(st, dir, [&](Rec& r, const Rec* nxt, i64) {
      if (r.dummy()) return;
      bool first = r.s[de::from] != prev_from;
      if (first) run_start_id = r.s[de::id];
      prev_from = r.s[de::from];
      bool last = nxt == nullptr || nxt->dummy() || nxt->s[de::from] != r.s[de::from];
      r.s[de::next] = last ? run_start_id : nxt->s[de::id];
      r.s[de::adv] = (first && r.s[de::adv] == 1) ? 1 : 0;  // head flag
    });
  }
  // twin pairing: copies of one undirected edge are adjacent under eid
  {
    Array byeid = dir;
    osort(st, byeid, SortKey::by(de::eid, de::from));
    i64 prev_eid = kNil, prev_id = kNil;
    scan_lookahead(st, byeid, [&](Rec& r, const Rec* nxt, i64) {
      if (r.dummy()) return;
      if (r.s[de::eid] == prev_eid) r.s[de::twin] = prev_id;
      if (nxt && nxt->real() && nxt->s[de::eid] == r.s[de::eid])
        r.s[de::twin] = nxt->s[de::id];
      prev_eid = r.s[de::eid];
      prev_id = r.s[de::id];
    });
  }
  // succ = next(twin); cut the cycle where succ points at a head
  distribute(st, dir, de::twin, dir, de::id, {{de::next, de::succ}});
  scan(st, dir, [](Rec& r, i64) { r.s[de::rank] = 0; });
  distribute(st, dir, de::succ, dir, de::id, {{de::adv, de::rank}});
  scan(st, dir, [](Rec& r, i64) {
    if (r.real() && r.s[de::rank] == 1) r.s[de::succ] = kNil;
  });
  // prev = inverse of next (kept for the linkage invariant)
  distribute(st, dir, de::id, dir, de::next, {{de::id, de::prev}});
  // tour ranks per component
  list_rank(st, dir, de::id, de::succ, de::comp, de::adv, de::rank, true);
  // advance = visited before twin
  {
    Array tw = st.alloc(dir.n);
    scan_map(st, dir, tw, [](const Rec& in, Rec& out, i64) {
      if (in.dummy()) return;
      out = make_real();
      out.s[0] = in.s[de::id];
      out.s[1] = in.s[de::rank];
    });
    scan(st, dir, [](Rec& r, i64) { r.s[de::adv] = kInf; });
    distribute(st, dir, de::twin, tw, 0, {{1, de::adv}});
    scan(st, dir, [](Rec& r, i64) {
      if (r.real()) r.s[de::adv] = r.s[de::rank] < r.s[de::adv] ? 1 : 0;
    });
    st.free_last(tw);
  }
  return EulerTour{dir, cap};
}

// Single rooted tree; checks the (V-1)-edge contract.
inline EulerTour build_euler(BlockStore& st, const Array& tree_edges, i64 root,
                             i64 V) {
  i64 reals = 0;
  scan_read(st, tree_edges, [&](const Rec& r, i64) {
    if (r.real()) ++reals;
  });
  if (reals != V - 1)
    throw std::invalid_argument("build_euler: input is not a tree (edge count != V-1)");
  Array roots = st.alloc(1);
  scan(st, roots, [&](Rec& r, i64) {
    r = make_real();
    r.s[0] = root;
    r.s[1] = 1;
  });
  EulerTour t = build_euler_forest(st, tree_edges, roots);
  return t;
}

// DFS statistics of a single rooted tree from its tour. preorder/postorder
// are the usual bijections onto [1,V]; eadv/eret are the raw tour ranks of
// the advance/retreat edges, from which size(v) = (eret - eadv - 1)/2 + 1.
inline Array euler_stats(BlockStore& st, const EulerTour& tour, i64 V,
                         i64 root) {
  Array vt = make_vertex_table(st, V);
  scan(st, vt, [&](Rec& r, i64) {
    r.s[vs::pre] = 0;
    r.s[vs::post] = 0;
    r.s[vs::eadv] = 0;
    r.s[vs::eret] = 0;
    r.s[vs::depth] = 0;
    r.s[vs::size] = 1;
    r.s[vs::parent] = r.s[vs::v];
    r.s[vs::gparent] = r.s[vs::v];
  });
  if (V == 1) return vt;
  // walk the tour in rank order accumulating preorder/postorder/depth
  Array seq = st.alloc(tour.dir.n);
  copy_array(st, tour.dir, seq);
  osort(st, seq, SortKey::by(de::rank));
  i64 pre_ct = 1, post_ct = 0, depth = 0;
  Array adv_c = st.alloc(seq.n);
  Array ret_c = st.alloc(seq.n);
  {
    i64 B = st.block_size();
    i64 blocks = ceil_div(seq.n, B);
    for (i64 b = 0; b < blocks; ++b) {
      Block in = st.read_block(seq.base + b);
      Block oa(&st.meter(), B), orr(&st.meter(), B);
      for (i64 r = 0; r < B; ++r) {
        oa[r] = make_dummy();
        orr[r] = make_dummy();
        const Rec& e = in[r];
        if (b * B + r >= seq.n || e.dummy()) continue;
        if (e.s[de::adv] == 1) {
          ++pre_ct;
          ++depth;
          oa[r] = make_real();
          oa[r].s[0] = e.s[de::to];       // vertex discovered
          oa[r].s[1] = pre_ct;            // DFS preorder
          oa[r].s[2] = e.s[de::rank];     // E-order of (p(v), v)
          oa[r].s[3] = depth;
          oa[r].s[4] = e.s[de::from];     // parent
        } else {
          ++post_ct;
          --depth;
          orr[r] = make_real();
          orr[r].s[0] = e.s[de::from];    // vertex finished
          orr[r].s[1] = post_ct;
          orr[r].s[2] = e.s[de::rank];
        }
      }
      st.write_block(adv_c.base + b, oa);
      st.write_block(ret_c.base + b, orr);
    }
  }
  distribute(st, vt, vs::v, adv_c, 0,
             {{1, vs::pre}, {2, vs::eadv}, {3, vs::depth}, {4, vs::parent}});
  distribute(st, vt, vs::v, ret_c, 0, {{1, vs::post}, {2, vs::eret}});
  scan(st, vt, [&](Rec& r, i64) {
    if (r.dummy()) return;
    if (r.s[vs::v] == root) {
      r.s[vs::pre] = 1;
      r.s[vs::post] = V;
      r.s[vs::size] = V;  // = max E-order / 2 + 1
      r.s[vs::depth] = 0;
    } else {
      r.s[vs::size] = (r.s[vs::eret] - r.s[vs::eadv] - 1) / 2 + 1;
    }
  });
  distribute(st, vt, vs::parent, vt, vs::v, {{vs::parent, vs::gparent}});
  st.free_last(ret_c);
  st.free_last(adv_c);
  st.free_last(seq);
  return vt;
}

}  // namespace obliv
