#pragma once

// Fixed-width records. Every record stored at the server has the same byte
// width regardless of its logical kind, so blocks are indistinguishable by
// footprint. Slot meanings are assigned per pipeline stage; unused slots are
// zero. Slots kScratchA/kScratchB are reserved for primitive internals
// (join tags, position restoration) and may be clobbered by any primitive.

#include <array>
#include <cstdint>
#include <limits>

namespace obliv {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr int kSlots = 12;
inline constexpr int kScratchA = 10;
inline constexpr int kScratchB = 11;

// Large but arithmetic-safe sentinel (so key*2+tag style packing never wraps).
inline constexpr i64 kInf = std::numeric_limits<i64>::max() / 8;

struct Rec {
  i64 kind = 1;  // 0 = real, 1 = dummy; dummies order after reals in every sort
  std::array<i64, kSlots> s{};

  bool real() const { return kind == 0; }
  bool dummy() const { return kind != 0; }
};

inline constexpr i64 kRecordWidth = static_cast<i64>(sizeof(Rec));

inline Rec make_real() {
  Rec r;
  r.kind = 0;
  return r;
}

inline Rec make_dummy() { return Rec{}; }

// splitmix64; used to derive shuffle tags and test data deterministically.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace obliv
