#include <algorithm>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "obliv/rounds.hpp"
#include "obliv/scan.hpp"
#include "obliv/sort.hpp"

using namespace obliv;

namespace {

Params params_with(i64 B) {
  Params p;
  p.B = B;
  p.M = std::max<i64>(4 * B + 64, 256);
  return p;
}

BlockStore store_of(std::vector<i64> keys, i64 B, i64 n_dummy = 0) {
  std::vector<Rec> recs;
  for (i64 k : keys) {
    Rec r = make_real();
    r.s[0] = k;
    recs.push_back(r);
  }
  for (i64 i = 0; i < n_dummy; ++i) recs.push_back(make_dummy());
  return BlockStore(params_with(B), recs);
}

std::vector<i64> keys_of(BlockStore& st, const Array& a, bool reals_only = true) {
  std::vector<i64> out;
  for (i64 i = 0; i < a.n; ++i) {
    const Rec& r = st.peek(a, i);
    if (reals_only && r.dummy()) continue;
    out.push_back(r.s[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("osort sorts with dummies in the suffix") {
  BlockStore st = store_of({3, 1, 2}, 4, 1);
  osort(st, st.input(), SortKey::by(0));
  auto all = st.peek_all(st.input());
  CHECK(all[0].s[0] == 1);
  CHECK(all[1].s[0] == 2);
  CHECK(all[2].s[0] == 3);
  CHECK(all[3].dummy());
}

TEST_CASE("osort matches a comparison-sort oracle on random keys") {
  std::mt19937_64 rng(7);
  for (i64 B : {1, 2, 4, 8}) {
    for (i64 n : {1, 2, 5, 16, 33, 128, 257}) {
      std::vector<i64> keys(static_cast<std::size_t>(n));
      for (auto& k : keys) k = static_cast<i64>(rng() % 1000);
      BlockStore st = store_of(keys, B);
      osort(st, st.input(), SortKey::by(0));
      std::sort(keys.begin(), keys.end());
      CHECK(keys_of(st, st.input()) == keys);
    }
  }
}

TEST_CASE("osort is exhaustively correct on 0-1 inputs") {
  // 0-1 principle at block granularity: every 16-bit pattern, B=4
  for (u64 mask = 0; mask < (1u << 16); ++mask) {
    std::vector<i64> keys(16);
    int ones = 0;
    for (int i = 0; i < 16; ++i) {
      keys[i] = (mask >> i) & 1;
      ones += static_cast<int>(keys[i]);
    }
    BlockStore st = store_of(keys, 4);
    osort(st, st.input(), SortKey::by(0));
    auto got = keys_of(st, st.input());
    for (int i = 0; i < 16; ++i) {
      if (got[i] != (i < 16 - ones ? 0 : 1)) {
        FAIL("unsorted at mask " << mask);
      }
    }
  }
  SUCCEED();
}

TEST_CASE("osort multi-field keys are lexicographic") {
  std::vector<Rec> recs;
  auto push = [&](i64 a, i64 b) {
    Rec r = make_real();
    r.s[0] = a;
    r.s[1] = b;
    recs.push_back(r);
  };
  push(2, 1);
  push(1, 9);
  push(2, 0);
  push(1, 3);
  BlockStore st(params_with(2), recs);
  osort(st, st.input(), SortKey::by(0, 1));
  auto all = st.peek_all(st.input());
  CHECK(all[0].s[1] == 3);
  CHECK(all[1].s[1] == 9);
  CHECK(all[2].s[1] == 0);
  CHECK(all[3].s[1] == 1);
}

TEST_CASE("osort trace depends only on the public shape") {
  std::vector<i64> up{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<i64> down{8, 7, 6, 5, 4, 3, 2, 1};
  BlockStore a = store_of(up, 2), b = store_of(down, 2);
  osort(a, a.input(), SortKey::by(0));
  osort(b, b.input(), SortKey::by(0));
  CHECK(AccessTrace::first_divergence(a.trace(), b.trace()) == -1);
  CHECK(a.trace().digest() == b.trace().digest());
}

TEST_CASE("oshuffle applies the same permutation to any payload") {
  std::vector<i64> x{10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<i64> y{5, 4, 8, 1, 9, 2, 7, 3};
  BlockStore a = store_of(x, 2), b = store_of(y, 2);
  oshuffle(a, a.input(), 42, 0);
  oshuffle(b, b.input(), 42, 0);
  auto xa = keys_of(a, a.input()), yb = keys_of(b, b.input());
  // positions of x[i] in xa must match positions of y[i] in yb
  for (int i = 0; i < 8; ++i) {
    auto pa = std::find(xa.begin(), xa.end(), x[i]) - xa.begin();
    auto pb = std::find(yb.begin(), yb.end(), y[i]) - yb.begin();
    CHECK(pa == pb);
  }
}

TEST_CASE("oshuffle on a single record is the identity") {
  BlockStore st = store_of({99}, 4);
  oshuffle(st, st.input(), 1, 0);
  CHECK(keys_of(st, st.input()) == std::vector<i64>{99});
}

TEST_CASE("oshuffle is close to uniform over 10^4 trials") {
  const int n = 8, trials = 10000;
  int counts[8][8] = {};
  for (int t = 0; t < trials; ++t) {
    BlockStore st = store_of({0, 1, 2, 3, 4, 5, 6, 7}, 2);
    oshuffle(st, st.input(), 1234 + static_cast<u64>(t), 0);
    auto got = keys_of(st, st.input());
    for (int pos = 0; pos < n; ++pos) ++counts[got[pos]][pos];
  }
  double expect = trials / 8.0;
  double sigma = std::sqrt(trials * (1.0 / 8) * (7.0 / 8));
  for (int e = 0; e < n; ++e)
    for (int pos = 0; pos < n; ++pos)
      CHECK(std::abs(counts[e][pos] - expect) <= 3 * sigma);
}

TEST_CASE("pad_to extends with dummies") {
  BlockStore st = store_of({1, 2, 3, 4, 5}, 4);
  Array a = st.input();
  pad_to(st, a, 8);
  CHECK(a.n == 8);
  int reals = 0, dummies = 0;
  for (i64 i = 0; i < a.n; ++i)
    (st.peek(a, i).real() ? reals : dummies)++;
  CHECK(reals == 5);
  CHECK(dummies == 3);
}

TEST_CASE("pad_to current length performs no I/O") {
  BlockStore st = store_of({1, 2, 3, 4}, 4);
  Array a = st.input();
  u64 before = st.trace().size();
  pad_to(st, a, 4);
  CHECK(st.trace().size() == before);
}

TEST_CASE("pad_to rejects shrinking") {
  BlockStore st = store_of({1, 2, 3, 4, 5}, 4);
  Array a = st.input();
  CHECK_THROWS_AS(pad_to(st, a, 4), std::invalid_argument);
}

TEST_CASE("distribute joins vertex values onto keyed records") {
  // dst: records keyed by s[1]; src: table (key in s[0], value in s[2])
  std::vector<Rec> recs;
  for (i64 k : {3, 1, 2, 1}) {
    Rec r = make_real();
    r.s[1] = k;
    recs.push_back(r);
  }
  recs.push_back(make_dummy());
  BlockStore st(params_with(2), recs);
  Array dst = st.input();
  Array src = st.alloc(3);
  scan(st, src, [&](Rec& r, i64 i) {
    r = make_real();
    r.s[0] = i + 1;        // keys 1,2,3
    r.s[2] = 100 * (i + 1);  // values 100,200,300
  });
  distribute(st, dst, 1, src, 0, {{2, 3}});
  auto all = st.peek_all(dst);
  CHECK(all[0].s[3] == 300);
  CHECK(all[1].s[3] == 100);
  CHECK(all[2].s[3] == 200);
  CHECK(all[3].s[3] == 100);
  CHECK(all[4].dummy());
}

TEST_CASE("distribute leaves unmatched rows and restores order") {
  std::vector<Rec> recs;
  for (i64 k : {7, 9}) {
    Rec r = make_real();
    r.s[1] = k;
    r.s[3] = -5;
    recs.push_back(r);
  }
  BlockStore st(params_with(2), recs);
  Array dst = st.input();
  Array src = st.alloc(1);
  scan(st, src, [&](Rec& r, i64) {
    r = make_real();
    r.s[0] = 9;
    r.s[2] = 1;
  });
  distribute(st, dst, 1, src, 0, {{2, 3}});
  auto all = st.peek_all(dst);
  CHECK(all[0].s[1] == 7);
  CHECK(all[0].s[3] == -5);  // untouched
  CHECK(all[1].s[1] == 9);
  CHECK(all[1].s[3] == 1);
}

TEST_CASE("merge_apply folds contribution streams into a table") {
  // table keyed by s[0], sum lands in s[1]
  std::vector<Rec> recs;
  for (i64 k : {1, 2, 3}) {
    Rec r = make_real();
    r.s[0] = k;
    r.s[1] = 0;
    recs.push_back(r);
  }
  BlockStore st(params_with(2), recs);
  Array table = st.input();
  Array contribs = st.alloc(5);
  std::vector<std::pair<i64, i64>> cs{{1, 10}, {3, 1}, {1, 5}, {3, 2}, {2, 7}};
  scan(st, contribs, [&](Rec& r, i64 i) {
    r = make_real();
    r.s[0] = cs[i].first;
    r.s[1] = cs[i].second;
  });
  merge_apply(
      st, table, 0, contribs, 0,
      [](Rec& carry, const Rec& c) { carry.s[1] += c.s[1]; },
      [](Rec& t, const Rec& carry) { t.s[1] += carry.s[1]; });
  auto all = st.peek_all(table);
  CHECK(all[0].s[1] == 15);
  CHECK(all[1].s[1] == 7);
  CHECK(all[2].s[1] == 3);
}

TEST_CASE("run_rounds with identity scan and no truncation sorts the input") {
  BlockStore st = store_of({4, 1, 3, 2, 8, 6, 5, 7}, 2);
  Array a = st.input();
  RoundSpec spec;
  spec.rounds = 1;
  spec.scan_fn = [](int, Rec&, i64, std::span<i64>) {};
  spec.sort_key = SortKey::by(0);
  run_rounds(st, a, spec, 5);
  CHECK(keys_of(st, a) == std::vector<i64>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("run_rounds geometric truncation touches at most 2N records") {
  const i64 N = 64;
  std::vector<i64> keys(N);
  std::iota(keys.begin(), keys.end(), i64(0));
  BlockStore st = store_of(keys, 4);
  Array a = st.input();
  RoundSpec spec;
  spec.rounds = static_cast<int>(ceil_log2(N));
  i64 cur = N;
  std::vector<i64> drops;
  for (int i = 0; i < spec.rounds; ++i) {
    i64 d = N / (i64(2) << i);  // N/2^(i+1): keeps halving
    drops.push_back(std::min(d, cur));
    cur -= drops.back();
  }
  spec.drop = [&](int i) { return drops[static_cast<std::size_t>(i)]; };
  spec.scan_fn = [](int, Rec&, i64, std::span<i64>) {};
  spec.sort_key = SortKey::by(0);
  RoundStats stats = run_rounds(st, a, spec, 5);
  CHECK(stats.records_scanned <= 2 * N);
}

TEST_CASE("run_rounds traces are identical for same-shape inputs") {
  std::mt19937_64 rng(3);
  auto run_one = [&](std::vector<i64> keys) {
    BlockStore st = store_of(std::move(keys), 4);
    Array a = st.input();
    RoundSpec spec;
    spec.rounds = 3;
    spec.drop = [](int) { return i64(4); };
    spec.scan_fn = [](int, Rec& r, i64, std::span<i64>) { r.s[2] = r.s[0] * 2; };
    spec.sort_key = SortKey::by(0);
    run_rounds(st, a, spec, 99);
    return st.trace().digest();
  };
  std::vector<i64> k1(32), k2(32);
  for (auto& k : k1) k = static_cast<i64>(rng() % 100);
  for (auto& k : k2) k = static_cast<i64>(rng() % 100);
  CHECK(run_one(k1) == run_one(k2));
}

TEST_CASE("payload-constant replay yields the identical trace") {
  std::mt19937_64 rng(11);
  std::vector<i64> keys(48);
  for (auto& k : keys) k = static_cast<i64>(rng() % 1000);
  std::vector<i64> flat(48, 7);
  BlockStore a = store_of(keys, 4), b = store_of(flat, 4);
  for (BlockStore* st : {&a, &b}) {
    Array arr = st->input();
    oshuffle(*st, arr, 17, 0);
    osort(*st, arr, SortKey::by(0));
    scan(*st, arr, [](Rec& r, i64) { r.s[1] = r.s[0] + 1; });
    osort(*st, arr, SortKey::by(1, 0));
  }
  CHECK(AccessTrace::first_divergence(a.trace(), b.trace()) == -1);
}
