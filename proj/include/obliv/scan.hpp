#pragma once

// Sequential scans and sort-based joins. A scan touches blocks in a fixed
// order; per-record decisions happen in private memory and affect only the
// values written, never which blocks are accessed. distribute() and
// merge_apply() are the workhorses that move per-vertex data onto edge
// records and fold contribution streams into tables, each a constant number
// of sorts and scans over public-size arrays.

#include <functional>
#include <utility>

#include "obliv/sort.hpp"

namespace obliv {

// In-place scan over the logical range [0, n): fn(rec, index).
template <class F>
void scan(BlockStore& st, const Array& a, F&& fn) {
  i64 B = st.block_size();
  i64 blocks = ceil_div(std::max<i64>(a.n, 0), B);
  for (i64 b = 0; b < blocks; ++b) {
    Block blk = st.read_block(a.base + b);
    for (i64 r = 0; r < B; ++r) {
      i64 idx = b * B + r;
      if (idx < a.n) fn(blk[r], idx);
    }
    st.write_block(a.base + b, blk);
  }
}

// Read-only scan.
template <class F>
void scan_read(BlockStore& st, const Array& a, F&& fn) {
  i64 B = st.block_size();
  i64 blocks = ceil_div(std::max<i64>(a.n, 0), B);
  for (i64 b = 0; b < blocks; ++b) {
    Block blk = st.read_block(a.base + b);
    for (i64 r = 0; r < B; ++r) {
      i64 idx = b * B + r;
      if (idx < a.n) fn(const_cast<const Rec&>(blk[r]), idx);
    }
  }
}

// In-place scan where fn also sees the following record (nullptr at the end).
// Holds at most two blocks privately; I/O is a fixed staggered sequence.
template <class F>
void scan_lookahead(BlockStore& st, const Array& a, F&& fn) {
  i64 B = st.block_size();
  i64 blocks = ceil_div(std::max<i64>(a.n, 0), B);
  if (blocks == 0) return;
  Block cur = st.read_block(a.base);
  for (i64 b = 0; b < blocks; ++b) {
    if (b + 1 < blocks) {
      Block next = st.read_block(a.base + b + 1);
      for (i64 r = 0; r < B; ++r) {
        i64 idx = b * B + r;
        if (idx >= a.n) continue;
        const Rec* nxt = nullptr;
        if (idx + 1 < a.n) nxt = (r + 1 < B) ? &cur[r + 1] : &next[0];
        fn(cur[r], nxt, idx);
      }
      st.write_block(a.base + b, cur);
      cur = std::move(next);
    } else {
      for (i64 r = 0; r < B; ++r) {
        i64 idx = b * B + r;
        if (idx >= a.n) continue;
        const Rec* nxt = (idx + 1 < a.n && r + 1 < B) ? &cur[r + 1] : nullptr;
        fn(cur[r], nxt, idx);
      }
      st.write_block(a.base + b, cur);
    }
  }
}

// Emit scan: out[i] = fn(in[i]). Arrays must have the same logical length.
template <class F>
void scan_map(BlockStore& st, const Array& in, const Array& out, F&& fn) {
  i64 B = st.block_size();
  i64 blocks = ceil_div(std::max<i64>(in.n, 0), B);
  for (i64 b = 0; b < blocks; ++b) {
    Block src = st.read_block(in.base + b);
    Block dst(&st.meter(), B);
    for (i64 r = 0; r < B; ++r) {
      i64 idx = b * B + r;
      dst[r] = make_dummy();
      if (idx < in.n) fn(const_cast<const Rec&>(src[r]), dst[r], idx);
    }
    st.write_block(out.base + b, dst);
  }
}

// Sequential block writer with a one-block buffer.
class BlockWriter {
 public:
  BlockWriter(BlockStore& st, const Array& out)
      : st_(st), out_(out), buf_(&st.meter(), st.block_size()) {}
  void push(const Rec& r) {
    buf_[fill_++] = r;
    if (fill_ == st_.block_size()) flush();
  }
  void finish() {
    if (fill_ > 0) {
      for (i64 r = fill_; r < st_.block_size(); ++r) buf_[r] = make_dummy();
      flush();
    }
  }

 private:
  void flush() {
    st_.write_block(out_.base + block_, buf_);
    ++block_;
    fill_ = 0;
  }
  BlockStore& st_;
  Array out_;
  Block buf_;
  i64 fill_ = 0;
  i64 block_ = 0;
};

// Emit scan producing two output records per input (out.n == 2*in.n).
template <class F>
void scan_map2(BlockStore& st, const Array& in, const Array& out, F&& fn) {
  BlockWriter w(st, out);
  scan_read(st, in, [&](const Rec& r, i64 idx) {
    Rec ra = make_dummy(), rb = make_dummy();
    fn(r, ra, rb, idx);
    w.push(ra);
    w.push(rb);
  });
  w.finish();
}

// Copy logical contents of src into dst (same length), block-wise.
inline void copy_array(BlockStore& st, const Array& src, const Array& dst) {
  scan_map(st, src, dst, [](const Rec& in, Rec& out, i64) { out = in; });
}

namespace detail {

// Lay out src (tag 0) followed by dst (tag 1) in a scratch array, sorted by
// (kind, key*2+tag). ScratchA holds the packed key, ScratchB the original
// position of dst rows for restoration.
inline Array join_stage(BlockStore& st, const Array& dst, int dst_key,
                        const Array& src, int src_key) {
  Array tmp = st.alloc(src.n + dst.n);
  scan_map(st, src, Array{tmp.base, src.n, tmp.cap_blocks},
           [&](const Rec& in, Rec& out, i64) {
             out = in;
             out.s[kScratchA] = in.s[src_key] * 2;
             out.s[kScratchB] = 0;
           });
  // src.n may not be block aligned; emit dst rows through a shifted scan
  i64 B = st.block_size();
  i64 blocks = ceil_div(std::max<i64>(dst.n, 0), B);
  i64 off = src.n;
  i64 ob = off / B;
  Block out = st.read_block(tmp.base + ob);
  for (i64 b = 0; b < blocks; ++b) {
    Block src_blk = st.read_block(dst.base + b);
    for (i64 r = 0; r < B; ++r) {
      i64 idx = b * B + r;
      if (idx >= dst.n) continue;
      i64 pos = off + idx;
      if (pos / B != ob) {
        st.write_block(tmp.base + ob, out);
        ob = pos / B;
        out = st.read_block(tmp.base + ob);
      }
      Rec rec = src_blk[r];
      rec.s[kScratchA] = rec.s[dst_key] * 2 + 1;
      rec.s[kScratchB] = idx;
      out[pos % B] = rec;
    }
  }
  st.write_block(tmp.base + ob, out);
  osort(st, tmp, SortKey::by(kScratchA));
  return tmp;
}

// Restore dst rows (tag parity of ScratchA) back into dst in original order.
inline void join_unstage(BlockStore& st, Array& tmp, const Array& dst) {
  scan(st, Array{tmp.base, tmp.cap_records(st.block_size()), tmp.cap_blocks},
       [&](Rec& r, i64) {
         i64 tag = r.s[kScratchA] & 1;
         r.s[kScratchA] = tag == 1 ? 0 : 1;  // dst rows first
       });
  osort(st, tmp, SortKey::by(kScratchA, kScratchB).raw());
  copy_array(st, Array{tmp.base, dst.n, tmp.cap_blocks}, dst);
  st.free_last(tmp);
}

}  // namespace detail

struct CopySpec {
  int src_slot;
  int dst_slot;
};

// For every dst record, copy fields from the unique real src record whose
// src_key equals the dst record's dst_key. Unmatched dst rows are unchanged.
// Keys must be nonnegative. Dummy rows ride along untouched.
inline void distribute(BlockStore& st, const Array& dst, int dst_key,
                       const Array& src, int src_key,
                       std::initializer_list<CopySpec> copies) {
  Array tmp = detail::join_stage(st, dst, dst_key, src, src_key);
  bool have = false;
  i64 carry_key = 0;
  std::array<i64, kSlots> carry{};
  scan(st, Array{tmp.base, tmp.cap_records(st.block_size()), tmp.cap_blocks},
       [&](Rec& r, i64) {
         if (r.dummy()) return;
         if ((r.s[kScratchA] & 1) == 0) {  // src row
           carry_key = r.s[kScratchA] >> 1;
           have = true;
           for (const CopySpec& c : copies) carry[c.src_slot] = r.s[c.src_slot];
         } else if (have && (r.s[kScratchA] >> 1) == carry_key) {
           for (const CopySpec& c : copies) r.s[c.dst_slot] = carry[c.src_slot];
         }
       });
  detail::join_unstage(st, tmp, dst);
}

// Fold a stream of contribution records into a keyed table. Contributions
// with equal keys are first folded together (fold_cc), then applied to the
// table row (apply). Table keys are unique among real rows.
template <class FoldCC, class Apply>
void merge_apply(BlockStore& st, const Array& table, int table_key,
                 const Array& contribs, int c_key, FoldCC&& fold_cc,
                 Apply&& apply) {
  Array tmp = detail::join_stage(st, table, table_key, contribs, c_key);
  bool have = false;
  i64 carry_key = -1;
  Rec carry = make_dummy();
  scan(st, Array{tmp.base, tmp.cap_records(st.block_size()), tmp.cap_blocks},
       [&](Rec& r, i64) {
         if (r.dummy()) return;
         if ((r.s[kScratchA] & 1) == 0) {  // contribution
           i64 k = r.s[kScratchA] >> 1;
           if (have && k == carry_key) {
             fold_cc(carry, const_cast<const Rec&>(r));
           } else {
             carry = r;
             carry_key = k;
             have = true;
           }
         } else {  // table row
           if (have && (r.s[kScratchA] >> 1) == carry_key)
             apply(r, const_cast<const Rec&>(carry));
           have = false;
         }
       });
  detail::join_unstage(st, tmp, table);
}

// Mark-dummy-and-gather: sort so real records keyed by `order` form a prefix.
inline void compact(BlockStore& st, const Array& a, const SortKey& order) {
  osort(st, a, order);
}

}  // namespace obliv
