#pragma once

// Public run parameters. Everything in here may be revealed to the server;
// the access-sequence of every algorithm is a function of these fields only.

#include <cmath>
#include <stdexcept>
#include <string>

#include "obliv/record.hpp"

namespace obliv {

enum class Density { sparse, intermediate, dense, minor_closed };

inline const char* to_string(Density d) {
  switch (d) {
    case Density::sparse: return "sparse";
    case Density::intermediate: return "intermediate";
    case Density::dense: return "dense";
    case Density::minor_closed: return "minor-closed";
  }
  return "?";
}

inline Density density_from_string(const std::string& s) {
  if (s == "sparse") return Density::sparse;
  if (s == "intermediate") return Density::intermediate;
  if (s == "dense") return Density::dense;
  if (s == "minor-closed" || s == "minor_closed") return Density::minor_closed;
  throw std::invalid_argument("unknown density class: " + s);
}

inline i64 ceil_log2(i64 n) {
  i64 k = 0;
  while ((i64(1) << k) < n) ++k;
  return k;
}

inline i64 floor_log2(i64 n) {
  i64 k = 0;
  while ((i64(2) << k) <= n) ++k;
  return k;
}

inline i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

inline i64 pow2_ceil(i64 n) {
  i64 p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct Params {
  i64 V = 0;
  i64 E = 0;
  i64 B = 64;    // records per block
  i64 M = 4096;  // private-memory budget, in records
  Density density = Density::sparse;
  u64 seed = 0;
  i64 max_records = i64(1) << 26;

  // M must leave room for a private merge of two blocks plus O(1) state, and
  // must be Omega(log N) for the store of N records.
  void validate(i64 n_records) const {
    if (B < 1) throw std::invalid_argument("B must be >= 1");
    if (n_records <= 0) throw std::invalid_argument("empty input");
    if (n_records > max_records)
      throw std::invalid_argument("N exceeds configured capacity");
    i64 logn = ceil_log2(std::max<i64>(n_records, 2));
    if (M < 4 * logn || M < 2 * B + 8)
      throw std::invalid_argument("private memory M too small (need >= max(4*log2 N, 2B+8))");
  }
};

}  // namespace obliv
