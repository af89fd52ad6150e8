#pragma once

// Simulated honest-but-curious server. Storage is block-granular; every
// read/write appends (seq, op, block) to the access trace. Payload bytes are
// never recorded: encryption is modeled as payload opacity, the adversary's
// observable is the block-index sequence alone.

#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "obliv/params.hpp"
#include "obliv/record.hpp"

namespace obliv {

enum class Op : i64 { Read = 0, Write = 1 };

struct TraceEntry {
  u64 seq;  // 1-based, strictly increasing
  Op op;
  i64 block;
};

class AccessTrace {
 public:
  void append(Op op, i64 block) {
    packed_.push_back((block << 1) | static_cast<i64>(op));
  }

  u64 size() const { return packed_.size(); }

  TraceEntry entry(u64 i) const {
    i64 p = packed_[i];
    return TraceEntry{i + 1, static_cast<Op>(p & 1), p >> 1};
  }

  // FNV-1a over the (op, block) sequence; the empty trace hashes to the
  // offset basis. Printed as 16 lowercase hex digits.
  u64 digest() const {
    u64 h = 0xcbf29ce484222325ULL;
    for (i64 p : packed_) {
      for (int b = 0; b < 8; ++b) {
        h ^= static_cast<u64>(p >> (8 * b)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    }
    return h;
  }

  std::string digest_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(digest()));
    return std::string(buf);
  }

  // One line per entry: seq,op,block with op in {R,W}.
  void export_lines(std::ostream& os) const {
    for (u64 i = 0; i < size(); ++i) {
      TraceEntry e = entry(i);
      os << e.seq << ',' << (e.op == Op::Read ? 'R' : 'W') << ',' << e.block
         << '\n';
    }
  }

  // First index at which two traces differ, or -1 if identical.
  static i64 first_divergence(const AccessTrace& a, const AccessTrace& b) {
    u64 n = std::min(a.packed_.size(), b.packed_.size());
    for (u64 i = 0; i < n; ++i)
      if (a.packed_[i] != b.packed_[i]) return static_cast<i64>(i);
    if (a.packed_.size() != b.packed_.size()) return static_cast<i64>(n);
    return -1;
  }

 private:
  std::vector<i64> packed_;
};

// Counts records simultaneously resident in client private memory. The limit
// is enforced: exceeding M throws. Peak is reported for the acceptance suite.
class PrivateMeter {
 public:
  explicit PrivateMeter(i64 limit = 0) : limit_(limit) {}

  void acquire(i64 n) {
    current_ += n;
    if (current_ > peak_) peak_ = current_;
    if (limit_ > 0 && current_ > limit_) {
      i64 at = current_;
      current_ -= n;
      throw std::runtime_error("private-memory budget exceeded: " +
                               std::to_string(at) + " > M=" +
                               std::to_string(limit_));
    }
  }
  void release(i64 n) { current_ -= n; }
  i64 current() const { return current_; }
  i64 peak() const { return peak_; }
  i64 limit() const { return limit_; }

 private:
  i64 limit_;
  i64 current_ = 0;
  i64 peak_ = 0;
};

class BlockStore;

// A block copy held in private memory; the meter charge follows its lifetime.
class Block {
 public:
  Block(PrivateMeter* meter, i64 n) : meter_(meter), recs_(n) {
    if (meter_) meter_->acquire(n);
  }
  Block(const Block& o) : meter_(o.meter_), recs_(o.recs_) {
    if (meter_) meter_->acquire(static_cast<i64>(recs_.size()));
  }
  Block(Block&& o) noexcept : meter_(o.meter_), recs_(std::move(o.recs_)) {
    o.meter_ = nullptr;
  }
  Block& operator=(Block&& o) noexcept {
    if (this != &o) {
      drop();
      meter_ = o.meter_;
      recs_ = std::move(o.recs_);
      o.meter_ = nullptr;
    }
    return *this;
  }
  ~Block() { drop(); }

  Rec& operator[](i64 i) { return recs_[i]; }
  const Rec& operator[](i64 i) const { return recs_[i]; }
  i64 size() const { return static_cast<i64>(recs_.size()); }
  std::vector<Rec>& recs() { return recs_; }
  const std::vector<Rec>& recs() const { return recs_; }

 private:
  void drop() {
    if (meter_) meter_->release(static_cast<i64>(recs_.size()));
    meter_ = nullptr;
  }
  PrivateMeter* meter_;
  std::vector<Rec> recs_;
};

// View of a contiguous run of blocks inside the store. `n` is the logical
// record count; capacity is always a power-of-two block count and the tail
// beyond `n` holds dummies.
struct Array {
  i64 base = 0;        // first block index
  i64 n = 0;           // logical record count
  i64 cap_blocks = 0;  // power of two

  i64 cap_records(i64 B) const { return cap_blocks * B; }
};

class BlockStore {
 public:
  // init_store: records are laid out sequentially; the final block is padded
  // with dummies. The upload itself is not traced (its length is public).
  BlockStore(const Params& params, std::span<const Rec> records)
      : p_(params), meter_(params.M) {
    p_.validate(static_cast<i64>(records.size()));
    n_input_ = static_cast<i64>(records.size());
    i64 blocks = ceil_div(n_input_, p_.B);
    data_.assign(static_cast<std::size_t>(blocks * p_.B), make_dummy());
    for (i64 i = 0; i < n_input_; ++i) data_[i] = records[i];
    input_ = Array{0, n_input_, pad_capacity(blocks)};
    // round capacity up to a power of two so the input is sortable in place
    data_.resize(static_cast<std::size_t>(input_.cap_blocks * p_.B),
                 make_dummy());
    alloc_top_ = input_.cap_blocks;
  }

  const Params& params() const { return p_; }
  i64 block_size() const { return p_.B; }
  i64 block_count() const { return static_cast<i64>(data_.size()) / p_.B; }
  const Array& input() const { return input_; }

  Block read_block(i64 i) {
    check_block(i);
    trace_.append(Op::Read, i);
    Block b(&meter_, p_.B);
    for (i64 r = 0; r < p_.B; ++r) b[r] = data_[i * p_.B + r];
    return b;
  }

  void write_block(i64 i, const Block& b) {
    check_block(i);
    if (b.size() != p_.B)
      throw std::invalid_argument("write_block: block must hold exactly B records");
    trace_.append(Op::Write, i);
    for (i64 r = 0; r < p_.B; ++r) data_[i * p_.B + r] = b[r];
  }

  // Provision a fresh dummy-filled array (capacity = pow2 blocks). Sizing is
  // a function of public values only, so provisioning is not traced.
  Array alloc(i64 n_records) {
    i64 blocks = pad_capacity(ceil_div(std::max<i64>(n_records, 1), p_.B));
    Array a{alloc_top_, n_records, blocks};
    alloc_top_ += blocks;
    if (alloc_top_ > block_count())
      data_.resize(static_cast<std::size_t>(alloc_top_ * p_.B), make_dummy());
    return a;
  }

  // Arena discipline: scratch arrays are released innermost-first.
  void free_last(const Array& a) {
    if (a.base + a.cap_blocks != alloc_top_)
      throw std::logic_error("free_last: not the most recent allocation");
    alloc_top_ = a.base;
  }

  AccessTrace& trace() { return trace_; }
  const AccessTrace& trace() const { return trace_; }
  PrivateMeter& meter() { return meter_; }

  // Instrumentation only: direct inspection that bypasses the trace. Used by
  // tests and invariant hooks, never by algorithm logic.
  const Rec& peek(const Array& a, i64 i) const {
    return data_[(a.base * p_.B) + i];
  }
  std::vector<Rec> peek_all(const Array& a) const {
    std::vector<Rec> out;
    out.reserve(static_cast<std::size_t>(a.n));
    for (i64 i = 0; i < a.n; ++i) out.push_back(peek(a, i));
    return out;
  }

 private:
  static i64 pad_capacity(i64 blocks) { return pow2_ceil(std::max<i64>(blocks, 1)); }

  void check_block(i64 i) const {
    if (i < 0 || i >= block_count())
      throw std::out_of_range("block index out of range");
  }

  Params p_;
  PrivateMeter meter_;
  AccessTrace trace_;
  std::vector<Rec> data_;
  Array input_;
  i64 n_input_ = 0;
  i64 alloc_top_ = 0;
};

}  // namespace obliv
