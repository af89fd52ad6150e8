#pragma once

// Compressed-scanning round engine: t rounds of {shuffle, scan, sort,
// truncate}. Round count, per-round scan, sort key and truncation schedule
// are all functions of the public parameters; truncated records are
// overwritten with dummies so later rounds cannot observe them. Each round
// touches a block prefix no larger than the previous round's.

#include <functional>

#include "obliv/scan.hpp"

namespace obliv {

struct RoundSpec {
  int rounds = 1;
  // records to drop after round i (0-based); must not exceed the live count
  std::function<i64(int round)> drop = [](int) { return i64(0); };
  // per-record transform; `state` is the declared O(1) private state
  std::function<void(int round, Rec& rec, i64 idx, std::span<i64> state)> scan_fn;
  SortKey sort_key;
  i64 state_records = 1;  // declared private state, charged against M
};

struct RoundStats {
  i64 records_scanned = 0;
  i64 final_n = 0;
};

inline RoundStats run_rounds(BlockStore& st, Array& a, const RoundSpec& spec,
                             u64 seed) {
  RoundStats stats;
  std::vector<i64> state_buf(static_cast<std::size_t>(spec.state_records) * (kSlots + 1), 0);
  i64 n = a.n;
  for (int i = 0; i < spec.rounds; ++i) {
    st.meter().acquire(spec.state_records);
    i64 m = pow2_ceil(ceil_div(std::max<i64>(n, 1), st.block_size()));
    Array live{a.base, n, a.cap_blocks};
    oshuffle(st, live, seed, static_cast<u64>(i), m);
    scan(st, Array{live.base, m * st.block_size(), live.cap_blocks},
         [&](Rec& r, i64 idx) {
           if (idx < n && spec.scan_fn) spec.scan_fn(i, r, idx, state_buf);
         });
    stats.records_scanned += n;
    osort(st, live, spec.sort_key, m);
    i64 d = spec.drop ? spec.drop(i) : 0;
    if (d < 0 || d > n) throw std::invalid_argument("run_rounds: bad truncation");
    if (d > 0) {
      // discard the tail for good: ignored records become dummies
      i64 keep = n - d;
      i64 B = st.block_size();
      i64 first = keep / B, last = ceil_div(n, B);
      for (i64 b = first; b < last; ++b) {
        Block blk = st.read_block(a.base + b);
        for (i64 r = 0; r < B; ++r)
          if (b * B + r >= keep) blk[r] = make_dummy();
        st.write_block(a.base + b, blk);
      }
      n = keep;
    }
    st.meter().release(spec.state_records);
  }
  a.n = n;
  stats.final_n = n;
  return stats;
}

}  // namespace obliv
