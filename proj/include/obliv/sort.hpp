#pragma once

// Oblivious sorting and shuffling. The sorter is Batcher's odd-even mergesort
// run at block granularity: blocks are pre-sorted privately, then every
// comparator of the network is a merge-split of two sorted blocks (merge 2B
// records privately, write back the lower and upper halves). The comparator
// schedule depends only on the block count, never on payloads.
//
// Replacing comparators with merge-splits preserves correctness for any
// sorting network applied to internally sorted blocks (0-1 principle lifted
// through monotone maps); the suite checks this exhaustively on 0-1 inputs.
//
// Cost: O((N/B) log^2 (N/B)) block I/Os. This sits behind osort() so an
// external-memory oblivious sorter with a better base could be swapped in.
// The M > 3B^4 assumption quoted for such sorters is documented, not
// enforced; this sorter needs only 4B records of private memory.

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "obliv/store.hpp"

namespace obliv {

// Lexicographic key of up to 4 record slots. Unless with_kind is cleared,
// the record kind is an implicit most-significant field: dummies sort last.
struct SortKey {
  std::array<int, 4> slot{-1, -1, -1, -1};
  int n = 0;
  bool with_kind = true;

  static SortKey by(int a) { return SortKey{{a, -1, -1, -1}, 1, true}; }
  static SortKey by(int a, int b) { return SortKey{{a, b, -1, -1}, 2, true}; }
  static SortKey by(int a, int b, int c) {
    return SortKey{{a, b, c, -1}, 3, true};
  }
  static SortKey by(int a, int b, int c, int d) {
    return SortKey{{a, b, c, d}, 4, true};
  }
  SortKey raw() const {
    SortKey k = *this;
    k.with_kind = false;
    return k;
  }
};

inline bool key_less(const Rec& x, const Rec& y, const SortKey& k) {
  if (k.with_kind && x.kind != y.kind) return x.kind < y.kind;
  for (int i = 0; i < k.n; ++i) {
    i64 a = x.s[k.slot[i]], b = y.s[k.slot[i]];
    if (a != b) return a < b;
  }
  return false;
}

namespace detail {

inline void merge_split(BlockStore& st, i64 bi, i64 bj, const SortKey& key) {
  Block lo = st.read_block(bi);
  Block hi = st.read_block(bj);
  Block merged(&st.meter(), 2 * st.block_size());
  std::merge(lo.recs().begin(), lo.recs().end(), hi.recs().begin(),
             hi.recs().end(), merged.recs().begin(),
             [&](const Rec& a, const Rec& b) { return key_less(a, b, key); });
  i64 B = st.block_size();
  for (i64 r = 0; r < B; ++r) {
    lo[r] = merged[r];
    hi[r] = merged[B + r];
  }
  st.write_block(bi, lo);
  st.write_block(bj, hi);
}

}  // namespace detail

// Sort the first `m_blocks` blocks of the array (all of them by default).
// m_blocks must be a power of two; array capacities always are.
inline void osort(BlockStore& st, const Array& a, const SortKey& key,
                  i64 m_blocks = -1) {
  i64 m = m_blocks < 0 ? a.cap_blocks : m_blocks;
  if (m <= 0 || (m & (m - 1)) != 0 || m > a.cap_blocks)
    throw std::invalid_argument("osort: block range must be a power of two within capacity");
  // phase 1: each block sorted privately
  for (i64 b = 0; b < m; ++b) {
    Block blk = st.read_block(a.base + b);
    std::stable_sort(blk.recs().begin(), blk.recs().end(),
                     [&](const Rec& x, const Rec& y) { return key_less(x, y, key); });
    st.write_block(a.base + b, blk);
  }
  if (m == 1) return;
  // phase 2: Batcher odd-even merge network over blocks
  for (i64 p = 1; p < m; p += p)
    for (i64 k = p; k > 0; k /= 2)
      for (i64 j = k % p; j + k < m; j += k + k)
        for (i64 i = 0; i < k; ++i)
          if (j + i + k < m && (j + i) / (p + p) == (j + i + k) / (p + p))
            detail::merge_split(st, a.base + j + i, a.base + j + i + k, key);
}

// Number of block I/Os osort performs on m blocks (the sorter's cost model;
// the bench subcommand regresses measured counts against this shape).
inline i64 osort_io_cost(i64 m) {
  i64 io = 2 * m;
  for (i64 p = 1; p < m; p += p)
    for (i64 k = p; k > 0; k /= 2)
      for (i64 j = k % p; j + k < m; j += k + k)
        for (i64 i = 0; i < k; ++i)
          if (j + i + k < m && (j + i) / (p + p) == (j + i + k) / (p + p))
            io += 4;
  return io;
}

// Permute the first m_blocks*B positions by a PRG-derived permutation. Tags
// are a function of (seed, nonce, position) only, so the same seed applies
// the same permutation to any payload. Dummies are carried along.
inline void oshuffle(BlockStore& st, const Array& a, u64 seed, u64 nonce,
                     i64 m_blocks = -1) {
  i64 m = m_blocks < 0 ? a.cap_blocks : m_blocks;
  i64 B = st.block_size();
  for (i64 b = 0; b < m; ++b) {
    Block blk = st.read_block(a.base + b);
    for (i64 r = 0; r < B; ++r) {
      u64 tag = mix64(seed ^ mix64(nonce) ^ static_cast<u64>(b * B + r));
      blk[r].s[kScratchA] = static_cast<i64>(tag >> 1);  // keep nonnegative
    }
    st.write_block(a.base + b, blk);
  }
  osort(st, a, SortKey::by(kScratchA).raw(), m);
}

// Extend the logical length with dummy records. The target must be a public
// function of the parameters; shrinking is an error.
inline void pad_to(BlockStore& st, Array& a, i64 n_target) {
  if (n_target < a.n) throw std::invalid_argument("pad_to: cannot shrink");
  if (n_target > a.cap_records(st.block_size()))
    throw std::invalid_argument("pad_to: target exceeds capacity");
  i64 B = st.block_size();
  i64 first = a.n / B, last = (n_target + B - 1) / B;
  for (i64 b = first; b < last; ++b) {
    Block blk = st.read_block(a.base + b);
    for (i64 r = 0; r < B; ++r)
      if (b * B + r >= a.n && b * B + r < n_target) blk[r] = make_dummy();
    st.write_block(a.base + b, blk);
  }
  a.n = n_target;
}

}  // namespace obliv
