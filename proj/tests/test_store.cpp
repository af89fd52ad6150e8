#include <catch2/catch_amalgamated.hpp>

#include "obliv/store.hpp"

using namespace obliv;

namespace {

Params small_params() {
  Params p;
  p.B = 4;
  p.M = 256;
  return p;
}

std::vector<Rec> some_records(i64 n) {
  std::vector<Rec> v;
  for (i64 i = 0; i < n; ++i) {
    Rec r = make_real();
    r.s[0] = i + 10;
    v.push_back(r);
  }
  return v;
}

}  // namespace

TEST_CASE("init_store lays out ceil(N/B) blocks with an empty trace") {
  auto recs = some_records(8);
  BlockStore st(small_params(), recs);
  CHECK(st.input().cap_blocks * st.block_size() >= 8);
  CHECK(ceil_div(st.input().n, st.block_size()) == 2);
  CHECK(st.trace().size() == 0);
}

TEST_CASE("init_store pads the last block with dummies") {
  auto recs = some_records(5);
  BlockStore st(small_params(), recs);
  CHECK(ceil_div(st.input().n, st.block_size()) == 2);
  Block b1 = st.read_block(1);
  CHECK(b1[0].real());
  CHECK(b1[1].dummy());
  CHECK(b1[2].dummy());
  CHECK(b1[3].dummy());
}

TEST_CASE("init_store rejects empty input") {
  std::vector<Rec> none;
  CHECK_THROWS_WITH(BlockStore(small_params(), none),
                    Catch::Matchers::ContainsSubstring("empty input"));
}

TEST_CASE("init_store rejects N beyond capacity") {
  Params p = small_params();
  p.max_records = 4;
  auto recs = some_records(8);
  CHECK_THROWS_WITH(BlockStore(p, recs),
                    Catch::Matchers::ContainsSubstring("capacity"));
}

TEST_CASE("read_block appends one trace entry per read") {
  auto recs = some_records(8);
  BlockStore st(small_params(), recs);
  st.read_block(0);
  st.read_block(0);
  REQUIRE(st.trace().size() == 2);
  auto e1 = st.trace().entry(0), e2 = st.trace().entry(1);
  CHECK(e1.seq == 1);
  CHECK(e1.op == Op::Read);
  CHECK(e1.block == 0);
  CHECK(e2.seq == 2);
  CHECK(e2.op == Op::Read);
  CHECK(e2.block == 0);
}

TEST_CASE("write then read round-trips and orders the trace") {
  auto recs = some_records(16);
  BlockStore st(small_params(), recs);
  Block b = st.read_block(3);
  b[0].s[0] = 777;
  st.write_block(3, b);
  Block again = st.read_block(3);
  CHECK(again[0].s[0] == 777);
  u64 n = st.trace().size();
  auto w = st.trace().entry(n - 2), r = st.trace().entry(n - 1);
  CHECK(w.op == Op::Write);
  CHECK(w.block == 3);
  CHECK(r.op == Op::Read);
  CHECK(r.block == 3);
  CHECK(r.seq == w.seq + 1);
}

TEST_CASE("write_block enforces the B-records-per-block contract") {
  auto recs = some_records(16);
  BlockStore st(small_params(), recs);
  Block small(&st.meter(), 3);
  CHECK_THROWS_AS(st.write_block(0, small), std::invalid_argument);
  // exactly one trace entry per successful write
  Block ok = st.read_block(0);
  u64 before = st.trace().size();
  st.write_block(2, ok);
  CHECK(st.trace().size() == before + 1);
}

TEST_CASE("block index bounds are enforced") {
  auto recs = some_records(8);
  BlockStore st(small_params(), recs);
  CHECK_THROWS_AS(st.read_block(st.block_count()), std::out_of_range);
  CHECK_THROWS_AS(st.read_block(-1), std::out_of_range);
}

TEST_CASE("trace digest is deterministic, sensitive, and fixed when empty") {
  auto recs = some_records(8);
  BlockStore a(small_params(), recs), b(small_params(), recs), c(small_params(), recs);
  a.read_block(0);
  a.read_block(1);
  b.read_block(0);
  b.read_block(1);
  c.read_block(0);
  c.read_block(0);  // one differing block index
  CHECK(a.trace().digest() == b.trace().digest());
  CHECK(a.trace().digest() != c.trace().digest());
  BlockStore empty1(small_params(), recs), empty2(small_params(), recs);
  CHECK(empty1.trace().digest() == empty2.trace().digest());
  CHECK(empty1.trace().digest() == 0xcbf29ce484222325ULL);
  CHECK(empty1.trace().digest_hex() == "cbf29ce484222325");
}

TEST_CASE("trace export emits seq,op,block lines") {
  auto recs = some_records(8);
  BlockStore st(small_params(), recs);
  st.read_block(1);
  Block b = st.read_block(0);
  st.write_block(0, b);
  std::ostringstream os;
  st.trace().export_lines(os);
  CHECK(os.str() == "1,R,1\n2,R,0\n3,W,0\n");
}

TEST_CASE("private meter enforces the budget M") {
  Params p = small_params();
  p.M = 40;
  auto recs = some_records(8);
  BlockStore st(p, recs);
  std::vector<Block> held;
  CHECK_THROWS_WITH(
      [&] {
        for (int i = 0; i < 20; ++i) held.push_back(st.read_block(0));
      }(),
      Catch::Matchers::ContainsSubstring("private-memory budget exceeded"));
  held.clear();
  CHECK(st.meter().current() == 0);
  CHECK(st.meter().peak() > 40 - static_cast<i64>(p.B));
}

TEST_CASE("params validation rejects tiny M and bad B") {
  Params p;
  p.B = 0;
  CHECK_THROWS_AS(p.validate(8), std::invalid_argument);
  p.B = 64;
  p.M = 10;  // < 2B+8
  CHECK_THROWS_AS(p.validate(1024), std::invalid_argument);
}

TEST_CASE("arena allocation is block-aligned, pow2, and stack-disciplined") {
  auto recs = some_records(8);
  BlockStore st(small_params(), recs);
  Array a = st.alloc(9);  // 3 blocks -> pow2 4
  CHECK(a.cap_blocks == 4);
  Array b = st.alloc(1);
  CHECK_THROWS_AS(st.free_last(a), std::logic_error);
  st.free_last(b);
  st.free_last(a);
}
